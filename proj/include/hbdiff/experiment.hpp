#pragma once

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hbdiff/bias.hpp"
#include "hbdiff/diffusion.hpp"
#include "hbdiff/generator.hpp"
#include "hbdiff/io.hpp"
#include "hbdiff/metrics.hpp"

namespace hbdiff {

struct BiasPair {
    BiasFunction vertex;
    BiasFunction hbedge;
};

struct ExperimentSuite {
    std::vector<BiasPair> experiments;
    int iterations = 200;
    double tie_eps = 1e-10;
    bool rank_from_stationary = false;  // rank pi instead of alpha_t
};

/// The 15-experiment bias grid: same bias both sides (1-5), vertex-side only
/// (6-9), hb-edge-side only (10-13), and the two crossed exponentials (14-15).
inline ExperimentSuite paper15_suite() {
    using B = BiasFunction;
    ExperimentSuite s;
    const B id = B::identity(), p2 = B::power(2), p02 = B::power(0.2), e2 = B::exponential(2),
            em2 = B::exponential(-2);
    s.experiments = {{id, id},  {p2, p2},  {p02, p02}, {e2, e2},  {em2, em2},
                     {p2, id},  {e2, id},  {p02, id},  {em2, id},
                     {id, p2},  {id, e2},  {id, p02},  {id, em2},
                     {e2, em2}, {em2, e2}};
    return s;
}

inline ExperimentSuite suite_from_json(const nlohmann::json& j) {
    ExperimentSuite s;
    for (const auto& pair : j.at("experiments")) {
        if (!pair.is_array() || pair.size() != 2)
            throw ParseError("suite: each experiment must be a [vertex_bias, hbedge_bias] pair");
        s.experiments.push_back({BiasFunction::parse(pair[0].get<std::string>()),
                                 BiasFunction::parse(pair[1].get<std::string>())});
    }
    if (j.contains("iterations")) s.iterations = j.at("iterations").get<int>();
    if (j.contains("tie_eps")) s.tie_eps = j.at("tie_eps").get<double>();
    if (s.experiments.empty()) throw ParseError("suite: no experiments");
    return s;
}

struct GraphResult {
    std::vector<Ranking> vertex_rankings;  // one per experiment
    std::vector<Ranking> hbedge_rankings;
    double max_residual = 0.0;
};

inline GraphResult run_experiments_on_graph(const HbGraph& g, const ExperimentSuite& suite) {
    GraphResult res;
    for (const auto& exp : suite.experiments) {
        BiasedSystem sys = build_biased_system(g, exp.vertex, exp.hbedge);
        if (suite.rank_from_stationary) {
            auto st = stationary_by_power_iteration(sys);
            res.vertex_rankings.push_back(extract_ranking(st.pi_v, suite.tie_eps));
            res.hbedge_rankings.push_back(extract_ranking(st.pi_e, suite.tie_eps));
        } else {
            auto r = run(g, sys, suite.iterations);
            res.max_residual = std::max(res.max_residual, r.max_residual);
            res.vertex_rankings.push_back(extract_ranking(r.state.alpha, suite.tie_eps));
            res.hbedge_rankings.push_back(extract_ranking(r.state.epsilon, suite.tie_eps));
        }
    }
    return res;
}

struct ExperimentReport {
    std::size_t experiment_count = 0;
    std::size_t graph_count = 0;
    // aggregated (arithmetic mean over graphs) pairwise tau matrices, row-major
    std::vector<double> strict_vertices;
    std::vector<double> large_vertices;
    std::vector<double> strict_hbedges;
    std::vector<double> large_hbedges;
    std::vector<GraphResult> per_graph;
    double max_residual = 0.0;
    double runtime_seconds = 0.0;
};

/// Runs every experiment on every graph (graphs in parallel), then averages
/// the per-graph pairwise tau matrices in graph order.
inline ExperimentReport run_suite(const std::vector<HbGraph>& graphs,
                                  const ExperimentSuite& suite, unsigned threads = 0) {
    if (graphs.empty()) throw std::invalid_argument("run_suite: no graphs");
    const auto t0 = std::chrono::steady_clock::now();
    ExperimentReport rep;
    rep.experiment_count = suite.experiments.size();
    rep.graph_count = graphs.size();
    rep.per_graph.resize(graphs.size());

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= graphs.size()) return;
            rep.per_graph[i] = run_experiments_on_graph(graphs[i], suite);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads && t < graphs.size(); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    const std::size_t m = rep.experiment_count;
    rep.strict_vertices.assign(m * m, 0.0);
    rep.large_vertices.assign(m * m, 0.0);
    rep.strict_hbedges.assign(m * m, 0.0);
    rep.large_hbedges.assign(m * m, 0.0);
    auto accumulate = [&](std::vector<double>& acc, const std::vector<double>& one) {
        for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += one[k] / graphs.size();
    };
    for (const auto& gr : rep.per_graph) {
        rep.max_residual = std::max(rep.max_residual, gr.max_residual);
        if (m >= 2) {
            accumulate(rep.strict_vertices, correlation_matrix(gr.vertex_rankings, TauVariant::strict));
            accumulate(rep.large_vertices, correlation_matrix(gr.vertex_rankings, TauVariant::large));
            accumulate(rep.strict_hbedges, correlation_matrix(gr.hbedge_rankings, TauVariant::strict));
            accumulate(rep.large_hbedges, correlation_matrix(gr.hbedge_rankings, TauVariant::large));
        } else {
            rep.strict_vertices = rep.large_vertices = {1.0};
            rep.strict_hbedges = rep.large_hbedges = {1.0};
        }
    }
    rep.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

/// Long-format comparison of two experiments on one graph: entities ordered
/// by the first experiment's ranking, with both scores per row.
struct RankCurveRow {
    std::uint32_t rank;     // 1-based position under experiment a
    std::uint32_t entity;
    double score_a;
    double score_b;
};

enum class EntityKind { vertices, hbedges };

inline std::vector<RankCurveRow> rank_curves(const HbGraph& g, const BiasPair& exp_a,
                                             const BiasPair& exp_b, EntityKind kind,
                                             int iterations = 200, double tie_eps = 1e-10) {
    ExperimentSuite s;
    s.experiments = {exp_a, exp_b};
    s.iterations = iterations;
    s.tie_eps = tie_eps;
    auto res = run_experiments_on_graph(g, s);
    const auto& ra = kind == EntityKind::vertices ? res.vertex_rankings[0] : res.hbedge_rankings[0];
    const auto& rb = kind == EntityKind::vertices ? res.vertex_rankings[1] : res.hbedge_rankings[1];
    std::vector<double> score_b(rb.size());
    for (std::size_t k = 0; k < rb.size(); ++k) score_b[rb.order[k]] = rb.scores[k];
    std::vector<RankCurveRow> rows;
    rows.reserve(ra.size());
    for (std::size_t k = 0; k < ra.size(); ++k)
        rows.push_back({static_cast<std::uint32_t>(k + 1), ra.order[k], ra.scores[k],
                        score_b[ra.order[k]]});
    return rows;
}

inline void write_curves_csv(const std::vector<RankCurveRow>& rows, std::ostream& out) {
    out << "rank,entity_id,score_a,score_b\n";
    for (const auto& r : rows)
        out << r.rank << ',' << r.entity << ',' << format_double(r.score_a) << ','
            << format_double(r.score_b) << '\n';
}

}  // namespace hbdiff
