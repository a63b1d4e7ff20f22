#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbdiff/hbgraph.hpp"

namespace hbdiff {

enum class BiasKind { identity, power, exponential };

/// Bias transform applied to feature values before row normalization.
/// Identity is Power(1). Text syntax: `id`, `pow:<alpha>`, `exp:<alpha>`.
struct BiasFunction {
    BiasKind kind = BiasKind::identity;
    double alpha = 1.0;

    static BiasFunction identity() { return {BiasKind::identity, 1.0}; }
    static BiasFunction power(double a) { return {BiasKind::power, a}; }
    static BiasFunction exponential(double a) { return {BiasKind::exponential, a}; }

    static BiasFunction parse(const std::string& s) {
        if (s == "id") return identity();
        auto colon = s.find(':');
        if (colon != std::string::npos) {
            const std::string head = s.substr(0, colon);
            const std::string tail = s.substr(colon + 1);
            std::size_t used = 0;
            double a;
            try {
                a = std::stod(tail, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad bias alpha: '" + s + "'");
            }
            if (used != tail.size()) throw std::invalid_argument("bad bias alpha: '" + s + "'");
            if (head == "pow") return power(a);
            if (head == "exp") return exponential(a);
        }
        throw std::invalid_argument("bad bias spec: '" + s + "' (expected id|pow:<a>|exp:<a>)");
    }

    std::string str() const {
        switch (kind) {
            case BiasKind::identity: return "id";
            case BiasKind::power: return "pow:" + format_alpha();
            case BiasKind::exponential: return "exp:" + format_alpha();
        }
        return "?";
    }

    bool is_power_family() const {
        return kind == BiasKind::identity || kind == BiasKind::power;
    }

private:
    std::string format_alpha() const {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", alpha);
        return buf;
    }
};

/// Abstract information function on an incidence: (vertex, edge, multiplicity,
/// weight) -> feature value, strictly positive on the incidence support.
using Feature = std::function<double(VertexId, EdgeId, double multiplicity, double weight)>;

struct FeatureSpec {
    Feature vertex_feature;  // f_V(v, e)
    Feature hbedge_feature;  // f_E(e, v)

    /// Default: multiplicity * weight on both sides.
    static FeatureSpec standard() {
        auto f = [](VertexId, EdgeId, double m, double w) { return m * w; };
        return {f, f};
    }
};

/// Biased feature matrices restricted to the incidence support, with their
/// row-sum normalizers. Rows of G_V^-1 B_V and G_E^-1 B_E are the transition
/// probabilities; exponential rows are shift-normalized before exp so that
/// entries stay finite (probabilities are unchanged by the shift).
class BiasedSystem {
public:
    BiasedSystem(const HbGraph& g, const FeatureSpec& features,
                 const BiasFunction& bias_v, const BiasFunction& bias_e)
        : n_(g.vertex_count()), p_(g.edge_count()) {
        for (VertexId v = 0; v < n_; ++v)
            if (g.incident(v).empty())
                throw std::invalid_argument("BiasedSystem: isolated vertex " + std::to_string(v));

        bv_.resize(n_);
        gv_.assign(n_, 0.0);
        be_.resize(p_);
        ge_.assign(p_, 0.0);

        std::vector<double> feats;
        for (VertexId v = 0; v < n_; ++v) {
            const auto& inc = g.incident(v);
            feats.clear();
            for (const auto& [j, m] : inc) {
                double f = features.vertex_feature(v, j, m, g.edge(j).weight);
                if (!(f > 0.0))
                    throw std::invalid_argument("BiasedSystem: nonpositive vertex feature on support");
                feats.push_back(f);
            }
            bv_[v].reserve(inc.size());
            apply_row(bias_v, feats);
            for (std::size_t k = 0; k < inc.size(); ++k) {
                bv_[v].emplace_back(inc[k].first, feats[k]);
                gv_[v] += feats[k];
            }
        }
        for (EdgeId j = 0; j < p_; ++j) {
            const auto& e = g.edge(j);
            feats.clear();
            for (const auto& [v, m] : e.members) {
                double f = features.hbedge_feature(v, j, m, e.weight);
                if (!(f > 0.0))
                    throw std::invalid_argument("BiasedSystem: nonpositive hb-edge feature on support");
                feats.push_back(f);
            }
            be_[j].reserve(e.members.size());
            apply_row(bias_e, feats);
            for (std::size_t k = 0; k < e.members.size(); ++k) {
                be_[j].emplace_back(e.members[k].first, feats[k]);
                ge_[j] += feats[k];
            }
        }
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return p_; }

    const std::vector<std::pair<EdgeId, double>>& bv_row(VertexId v) const { return bv_[v]; }
    const std::vector<std::pair<VertexId, double>>& be_row(EdgeId j) const { return be_[j]; }
    double gv(VertexId v) const { return gv_[v]; }
    double ge(EdgeId j) const { return ge_[j]; }

    /// p~(e_j | v) — 0 off support.
    double vertex_transition_prob(VertexId v, EdgeId j) const {
        for (const auto& [e, b] : bv_[v])
            if (e == j) return b / gv_[v];
        return 0.0;
    }

    /// p~(v | e_j) — 0 off support.
    double hbedge_transition_prob(EdgeId j, VertexId v) const {
        for (const auto& [u, b] : be_[j])
            if (u == v) return b / ge_[j];
        return 0.0;
    }

    /// y = x * G_V^-1 B_V  (vertex values -> hb-edge values)
    void apply_vertex_to_edge(const std::vector<double>& x, std::vector<double>& y) const {
        if (x.size() != n_) throw std::invalid_argument("apply_vertex_to_edge: size mismatch");
        y.assign(p_, 0.0);
        for (VertexId v = 0; v < n_; ++v) {
            const double a = x[v] / gv_[v];
            if (a == 0.0) continue;
            for (const auto& [j, b] : bv_[v]) y[j] += a * b;
        }
    }

    /// y = x * G_E^-1 B_E  (hb-edge values -> vertex values)
    void apply_edge_to_vertex(const std::vector<double>& x, std::vector<double>& y) const {
        if (x.size() != p_) throw std::invalid_argument("apply_edge_to_vertex: size mismatch");
        y.assign(n_, 0.0);
        for (EdgeId j = 0; j < p_; ++j) {
            const double a = x[j] / ge_[j];
            if (a == 0.0) continue;
            for (const auto& [v, b] : be_[j]) y[v] += a * b;
        }
    }

    /// y = x * T, computed through the factored form.
    void apply_transition(const std::vector<double>& x, std::vector<double>& y) const {
        std::vector<double> mid;
        apply_vertex_to_edge(x, mid);
        apply_edge_to_vertex(mid, y);
    }

    /// Densely materialized T (row-major, n x n). Intended for small n.
    std::vector<double> transition_matrix(std::size_t max_n = 2000) const {
        if (n_ > max_n)
            throw std::invalid_argument("transition_matrix: n too large for dense materialization");
        std::vector<double> t(n_ * n_, 0.0);
        for (VertexId i = 0; i < n_; ++i) {
            for (const auto& [j, b] : bv_[i]) {
                const double a = b / gv_[i];
                for (const auto& [k, c] : be_[j]) t[i * n_ + k] += a * c / ge_[j];
            }
        }
        return t;
    }

    /// Sparse row i of T as (column, value) pairs, column-sorted.
    std::vector<std::pair<VertexId, double>> transition_row(VertexId i) const {
        std::vector<std::pair<VertexId, double>> row;
        for (const auto& [j, b] : bv_[i]) {
            const double a = b / gv_[i];
            for (const auto& [k, c] : be_[j]) row.emplace_back(k, a * c / ge_[j]);
        }
        std::sort(row.begin(), row.end());
        std::size_t w = 0;
        for (std::size_t r = 0; r < row.size(); ++r) {
            if (w > 0 && row[w - 1].first == row[r].first)
                row[w - 1].second += row[r].second;
            else
                row[w++] = row[r];
        }
        row.resize(w);
        return row;
    }

private:
    static void apply_row(const BiasFunction& g, std::vector<double>& feats) {
        switch (g.kind) {
            case BiasKind::identity:
                return;
            case BiasKind::power:
                for (double& f : feats) f = std::pow(f, g.alpha);
                return;
            case BiasKind::exponential: {
                // shift by the row max of alpha*x; probabilities are invariant
                double mx = -std::numeric_limits<double>::infinity();
                for (double f : feats) mx = std::max(mx, g.alpha * f);
                for (double& f : feats) f = std::exp(g.alpha * f - mx);
                return;
            }
        }
    }

    std::size_t n_, p_;
    std::vector<std::vector<std::pair<EdgeId, double>>> bv_;
    std::vector<std::vector<std::pair<VertexId, double>>> be_;
    std::vector<double> gv_, ge_;
};

inline BiasedSystem build_biased_system(const HbGraph& g, const BiasFunction& bias_v,
                                        const BiasFunction& bias_e,
                                        const FeatureSpec& features = FeatureSpec::standard()) {
    return BiasedSystem(g, features, bias_v, bias_e);
}

}  // namespace hbdiff
