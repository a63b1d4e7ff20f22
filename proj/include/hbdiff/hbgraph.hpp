#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hbdiff {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// One weighted multiset over the vertex universe. Members with zero
/// multiplicity are absent, never stored.
struct HbEdge {
    // (vertex, multiplicity), sorted by vertex id, multiplicity > 0
    std::vector<std::pair<VertexId, double>> members;
    double weight = 1.0;

    double multiplicity(VertexId v) const {
        auto it = std::lower_bound(members.begin(), members.end(), v,
                                   [](const auto& m, VertexId x) { return m.first < x; });
        return (it != members.end() && it->first == v) ? it->second : 0.0;
    }
};

inline double m_cardinality(const HbEdge& e) {
    double s = 0.0;
    for (const auto& [v, m] : e.members) s += m;
    return s;
}

struct IncidenceTriple {
    VertexId vertex;
    EdgeId edge;
    double multiplicity;
    double weight;
};

/// Immutable hyper-bag-graph: a family of weighted multiset edges over a
/// dense vertex universe [0, n). Construction validates all invariants and
/// builds the vertex-side incidence index.
class HbGraph {
public:
    HbGraph(std::size_t n, std::vector<HbEdge> edges,
            std::vector<std::string> labels = {})
        : n_(n), edges_(std::move(edges)), labels_(std::move(labels)) {
        if (edges_.empty()) throw std::invalid_argument("HbGraph: at least one hb-edge required");
        if (!labels_.empty() && labels_.size() != n_)
            throw std::invalid_argument("HbGraph: label count does not match vertex count");
        incidence_.resize(n_);
        for (EdgeId j = 0; j < edges_.size(); ++j) {
            auto& e = edges_[j];
            if (!(e.weight > 0.0)) throw std::invalid_argument("HbGraph: hb-edge weight must be > 0");
            if (e.members.empty()) throw std::invalid_argument("HbGraph: empty hb-edge");
            std::sort(e.members.begin(), e.members.end());
            VertexId prev = 0;
            bool first = true;
            for (const auto& [v, m] : e.members) {
                if (!first && v == prev)
                    throw std::invalid_argument("HbGraph: duplicate member in hb-edge");
                prev = v;
                first = false;
                if (v >= n_) throw std::invalid_argument("HbGraph: member out of vertex range");
                if (!(m > 0.0)) throw std::invalid_argument("HbGraph: multiplicity must be > 0");
                incidence_[v].emplace_back(j, m);
            }
        }
    }

    std::size_t vertex_count() const { return n_; }
    std::size_t edge_count() const { return edges_.size(); }
    const std::vector<HbEdge>& edges() const { return edges_; }
    const HbEdge& edge(EdgeId j) const { return edges_.at(j); }
    const std::vector<std::string>& labels() const { return labels_; }

    /// Incident (edge, multiplicity) pairs of a vertex, ordered by edge index.
    const std::vector<std::pair<EdgeId, double>>& incident(VertexId v) const {
        if (v >= n_) throw std::out_of_range("HbGraph: vertex out of range");
        return incidence_[v];
    }

    /// d_w(v) = sum over incident hb-edges of multiplicity * weight.
    double weighted_degree(VertexId v) const {
        double s = 0.0;
        for (const auto& [j, m] : incident(v)) s += m * edges_[j].weight;
        return s;
    }

    std::size_t nonzero_count() const {
        std::size_t c = 0;
        for (const auto& e : edges_) c += e.members.size();
        return c;
    }

    /// All nonzero incidences, ordered by edge index then vertex index.
    std::vector<IncidenceTriple> incidence_triples() const {
        std::vector<IncidenceTriple> out;
        out.reserve(nonzero_count());
        for (EdgeId j = 0; j < edges_.size(); ++j)
            for (const auto& [v, m] : edges_[j].members)
                out.push_back({v, j, m, edges_[j].weight});
        return out;
    }

    /// True iff the bipartite incidence graph is a single component covering
    /// every vertex. Isolated vertices make the graph disconnected.
    bool is_connected() const {
        if (n_ == 0) return false;
        for (VertexId v = 0; v < n_; ++v)
            if (incidence_[v].empty()) return false;
        // BFS over vertices through shared hb-edges.
        std::vector<char> vseen(n_, 0), eseen(edges_.size(), 0);
        std::vector<VertexId> stack{0};
        vseen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            VertexId v = stack.back();
            stack.pop_back();
            for (const auto& [j, m] : incidence_[v]) {
                if (eseen[j]) continue;
                eseen[j] = 1;
                for (const auto& [u, mu] : edges_[j].members) {
                    if (!vseen[u]) {
                        vseen[u] = 1;
                        ++reached;
                        stack.push_back(u);
                    }
                }
            }
        }
        return reached == n_;
    }

private:
    std::size_t n_;
    std::vector<HbEdge> edges_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<EdgeId, double>>> incidence_;
};

}  // namespace hbdiff
