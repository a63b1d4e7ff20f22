#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "hbdiff/bias.hpp"
#include "hbdiff/hbgraph.hpp"

namespace hbdiff {

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what), last_residual(residual) {}
    double last_residual;
};

struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what, int step)
        : std::runtime_error(what), step(step) {}
    int step;
};

/// State of the two-phase exchange. At integer t the vertices carry all the
/// information; `epsilon` is the retained record of the last half step.
struct DiffusionState {
    int t = 0;
    std::vector<double> alpha;
    std::vector<double> epsilon;
};

namespace detail {

inline double sum(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
}

inline void check_finite(const std::vector<double>& x, const char* phase, int step) {
    for (double v : x)
        if (!std::isfinite(v))
            throw NumericalError(std::string("non-finite value in ") + phase + " at step " +
                                     std::to_string(step),
                                 step);
}

}  // namespace detail

inline DiffusionState init_state(const HbGraph& g) {
    if (!g.is_connected()) throw std::invalid_argument("init_state: hb-graph is not connected");
    DiffusionState s;
    s.t = 0;
    s.alpha.assign(g.vertex_count(), 1.0 / static_cast<double>(g.vertex_count()));
    s.epsilon.assign(g.edge_count(), 0.0);
    return s;
}

/// Phase one: all vertex value flows to the hb-edges. The vertex vector is
/// set to exact zero afterwards. Returns the conservation residual
/// |sum(epsilon) - sum(alpha before)|.
inline double half_step_v_to_e(DiffusionState& s, const BiasedSystem& sys) {
    const double before = detail::sum(s.alpha);
    sys.apply_vertex_to_edge(s.alpha, s.epsilon);
    detail::check_finite(s.epsilon, "half_step_v_to_e", s.t);
    std::fill(s.alpha.begin(), s.alpha.end(), 0.0);
    return std::abs(detail::sum(s.epsilon) - before);
}

/// Phase two: the hb-edge values flow back to the vertices. `epsilon` is kept
/// as the half-step record. Returns the conservation residual.
inline double half_step_e_to_v(DiffusionState& s, const BiasedSystem& sys) {
    const double before = detail::sum(s.epsilon);
    sys.apply_edge_to_vertex(s.epsilon, s.alpha);
    detail::check_finite(s.alpha, "half_step_e_to_v", s.t);
    s.t += 1;
    return std::abs(detail::sum(s.alpha) - before);
}

/// Explicit evaluation of the emptied-side remainders: the vertex remainder
/// after phase one and the hb-edge remainder after phase two. Both are
/// identically zero in exact arithmetic; returns the max |remainder| so a
/// debug run can assert it stays below 1e-12.
inline double phase_remainders(const std::vector<double>& alpha_before,
                               const std::vector<double>& epsilon_half,
                               const BiasedSystem& sys) {
    double worst = 0.0;
    for (VertexId v = 0; v < sys.vertex_count(); ++v) {
        double out = 0.0;
        for (const auto& [j, b] : sys.bv_row(v)) out += b / sys.gv(v);
        worst = std::max(worst, std::abs(alpha_before[v] * (1.0 - out)));
    }
    for (EdgeId j = 0; j < sys.edge_count(); ++j) {
        double out = 0.0;
        for (const auto& [v, b] : sys.be_row(j)) out += b / sys.ge(j);
        worst = std::max(worst, std::abs(epsilon_half[j] * (1.0 - out)));
    }
    return worst;
}

struct RunResult {
    DiffusionState state;
    int steps_done = 0;
    bool converged = false;        // only meaningful when a tolerance was given
    double max_residual = 0.0;     // worst conservation residual seen
    double last_change = 0.0;      // L1 change of alpha over the final step
};

/// Runs full steps (two half steps each). With a convergence tolerance the
/// run stops early once the L1 change of alpha over a full step drops below
/// it; otherwise exactly `iterations` steps are performed.
inline RunResult run(const HbGraph& g, const BiasedSystem& sys, int iterations,
                     double convergence_tol = 0.0) {
    if (iterations < 1) throw std::invalid_argument("run: iterations must be >= 1");
    RunResult r;
    r.state = init_state(g);
    std::vector<double> prev;
    for (int it = 0; it < iterations; ++it) {
        prev = r.state.alpha;
        r.max_residual = std::max(r.max_residual, half_step_v_to_e(r.state, sys));
        r.max_residual = std::max(r.max_residual, half_step_e_to_v(r.state, sys));
        ++r.steps_done;
        double change = 0.0;
        for (std::size_t i = 0; i < prev.size(); ++i)
            change += std::abs(r.state.alpha[i] - prev[i]);
        r.last_change = change;
        if (convergence_tol > 0.0 && change <= convergence_tol) {
            r.converged = true;
            break;
        }
    }
    return r;
}

struct StationaryState {
    std::vector<double> pi_v;
    std::vector<double> pi_e;
    int iterations = 0;
    double residual = 0.0;  // |pi_v T - pi_v|_1 at exit
};

/// Power iteration for the eigenvalue-1 left eigenvector of T, started from
/// the uniform distribution; pi_E is its image under G_V^-1 B_V.
inline StationaryState stationary_by_power_iteration(const BiasedSystem& sys, double tol = 1e-12,
                                                     int max_iter = 10000) {
    const std::size_t n = sys.vertex_count();
    std::vector<double> x(n, 1.0 / static_cast<double>(n)), next;
    double residual = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        sys.apply_transition(x, next);
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) residual += std::abs(next[i] - x[i]);
        x.swap(next);
        if (residual <= tol) {
            // renormalize against accumulated rounding
            double s = detail::sum(x);
            for (double& v : x) v /= s;
            StationaryState st;
            st.pi_v = std::move(x);
            sys.apply_vertex_to_edge(st.pi_v, st.pi_e);
            st.iterations = it + 1;
            st.residual = residual;
            return st;
        }
    }
    throw ConvergenceError("stationary_by_power_iteration: no convergence after " +
                               std::to_string(max_iter) + " iterations (residual " +
                               std::to_string(residual) + ")",
                           residual);
}

/// Descending-score order with tolerance-based tie groups. Ties are grouped
/// against the group head: a new group starts when the head-to-score gap
/// exceeds tie_eps * max(1, |head|). Tie order is by entity index.
struct Ranking {
    std::vector<std::uint32_t> order;      // entity ids, best first
    std::vector<double> scores;            // aligned with order
    std::vector<std::uint32_t> tie_group;  // aligned with order, 0-based group index
    std::vector<std::uint32_t> group_of;   // group index by entity id

    std::size_t size() const { return order.size(); }
    std::size_t group_count() const { return order.empty() ? 0 : tie_group.back() + 1; }
};

inline Ranking extract_ranking(const std::vector<double>& scores, double tie_eps = 1e-10) {
    for (double s : scores)
        if (std::isnan(s)) throw std::invalid_argument("extract_ranking: NaN score");
    Ranking r;
    const std::size_t n = scores.size();
    r.order.resize(n);
    for (std::size_t i = 0; i < n; ++i) r.order[i] = static_cast<std::uint32_t>(i);
    std::sort(r.order.begin(), r.order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (scores[a] != scores[b]) return scores[a] > scores[b];
        return a < b;
    });
    r.scores.resize(n);
    r.tie_group.resize(n);
    r.group_of.assign(n, 0);
    double head = 0.0;
    std::uint32_t group = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const double s = scores[r.order[k]];
        if (k == 0) {
            head = s;
        } else if (std::abs(head - s) > tie_eps * std::max(1.0, std::abs(head))) {
            ++group;
            head = s;
        }
        r.scores[k] = s;
        r.tie_group[k] = group;
        r.group_of[r.order[k]] = group;
    }
    return r;
}

}  // namespace hbdiff
