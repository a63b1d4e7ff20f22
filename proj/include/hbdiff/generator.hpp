#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "hbdiff/hbgraph.hpp"

namespace hbdiff {

/// Configuration of the grouped random hb-graph generator: p collaborations
/// drawn over a large vertex pool, partitioned into groups anchored by small
/// seed pools, with a set of central vertices tying the groups together.
struct GeneratorConfig {
    std::uint64_t n_pool = 10000;   // potential vertices
    std::uint32_t p = 200;          // hb-edges (collaborations)
    double max_mcard = 20.0;        // cap on m-cardinality
    std::uint32_t n_groups = 5;
    std::uint32_t group_seed_size = 10;
    std::uint32_t seeds_per_edge = 2;
    std::uint32_t n_central = 20;
    double central_prob = 0.5;
    std::uint32_t multiplicity_max = 1;
    bool fixed_seed_pair = false;   // strict reading: one fixed pair per group
    std::uint64_t rng_seed = 0;

    void validate() const {
        if (p < 1) throw std::invalid_argument("GeneratorConfig: p >= 1 required");
        if (n_groups < 1) throw std::invalid_argument("GeneratorConfig: n_groups >= 1 required");
        if (seeds_per_edge > group_seed_size)
            throw std::invalid_argument("GeneratorConfig: seeds_per_edge > group_seed_size");
        if (n_central + static_cast<std::uint64_t>(n_groups) * group_seed_size > n_pool)
            throw std::invalid_argument("GeneratorConfig: pool too small for seeds + central");
        if (max_mcard < seeds_per_edge + 1)
            throw std::invalid_argument("GeneratorConfig: max_mcard < seeds_per_edge + 1");
        if (multiplicity_max < 1)
            throw std::invalid_argument("GeneratorConfig: multiplicity_max >= 1 required");
    }
};

/// A generated hb-graph plus the group/central metadata, with vertex ids
/// compacted to the dense universe of vertices actually used. `pool_id`
/// maps each dense id back to its pool index.
struct GeneratedHbGraph {
    HbGraph graph;
    std::vector<std::uint32_t> edge_group;            // group of each hb-edge
    std::vector<std::vector<VertexId>> group_seeds;   // dense ids, used seeds only
    std::vector<VertexId> central;                    // dense ids, used centrals only
    std::vector<std::uint64_t> pool_id;               // dense id -> pool id
};

namespace detail {

inline double m_card_of(const std::map<std::uint64_t, double>& mem) {
    double s = 0.0;
    for (const auto& [v, m] : mem) s += m;
    return s;
}

struct DisjointSet {
    std::vector<std::uint32_t> parent;
    explicit DisjointSet(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace detail

/// Deterministic per rng_seed. Pool layout: group seed pools first, then the
/// central vertices, then the anonymous remainder.
inline GeneratedHbGraph generate(const GeneratorConfig& cfg) {
    cfg.validate();
    std::mt19937_64 rng(cfg.rng_seed);

    const std::uint64_t seeds_end = static_cast<std::uint64_t>(cfg.n_groups) * cfg.group_seed_size;
    const std::uint64_t central_begin = seeds_end;
    const std::uint64_t central_end = seeds_end + cfg.n_central;
    const auto max_card = static_cast<std::uint32_t>(cfg.max_mcard);

    std::uniform_int_distribution<std::uint32_t> group_dist(0, cfg.n_groups - 1);
    std::uniform_int_distribution<std::uint64_t> pool_dist(0, cfg.n_pool - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // edge member sets over pool ids
    std::vector<std::map<std::uint64_t, double>> members(cfg.p);
    std::vector<std::uint32_t> edge_group(cfg.p);

    // single occurrences dominate; repeats are the exception, as in real
    // co-occurrence rows
    auto draw_mult = [&](double budget) -> double {
        if (cfg.multiplicity_max == 1) return 1.0;
        const auto cap = static_cast<std::uint32_t>(
            std::min<double>(cfg.multiplicity_max, budget));
        if (cap <= 1 || unit(rng) < 0.8) return 1.0;
        return std::uniform_int_distribution<std::uint32_t>(2, cap)(rng);
    };

    for (std::uint32_t j = 0; j < cfg.p; ++j) {
        const std::uint32_t grp = group_dist(rng);
        edge_group[j] = grp;
        auto& mem = members[j];

        // seed vertices of the owning group
        const std::uint64_t pool_base = static_cast<std::uint64_t>(grp) * cfg.group_seed_size;
        if (cfg.fixed_seed_pair) {
            for (std::uint32_t s = 0; s < cfg.seeds_per_edge; ++s) mem[pool_base + s] = 1.0;
        } else {
            std::vector<std::uint32_t> pool(cfg.group_seed_size);
            std::iota(pool.begin(), pool.end(), 0u);
            for (std::uint32_t s = 0; s < cfg.seeds_per_edge; ++s) {
                std::uniform_int_distribution<std::uint32_t> d(s, cfg.group_seed_size - 1);
                std::swap(pool[s], pool[d(rng)]);
                mem[pool_base + pool[s]] = 1.0;
            }
        }

        std::uniform_int_distribution<std::uint32_t> size_dist(cfg.seeds_per_edge + 1, max_card);
        const std::uint32_t target = size_dist(rng);
        double card = detail::m_card_of(mem);

        if (unit(rng) < cfg.central_prob && card < target) {
            std::uniform_int_distribution<std::uint64_t> cd(central_begin, central_end - 1);
            const std::uint64_t c = cd(rng);
            if (!mem.count(c)) {
                mem[c] = 1.0;
                card += 1.0;
            }
        }

        while (card < target) {
            const std::uint64_t v = pool_dist(rng);
            if (v < seeds_end) continue;  // seed pools join only as group seeds
            if (mem.count(v)) continue;
            const double m = draw_mult(static_cast<double>(target) - card);
            mem[v] = m;
            card += m;
        }
    }

    // connectivity repair: thread one central vertex through every component
    for (int round = 0; round < 10; ++round) {
        std::map<std::uint64_t, std::uint32_t> vcomp;  // pool id -> edge-component rep
        detail::DisjointSet ds(cfg.p);
        for (std::uint32_t j = 0; j < cfg.p; ++j)
            for (const auto& [v, m] : members[j]) {
                auto [it, fresh] = vcomp.try_emplace(v, j);
                if (!fresh) ds.unite(it->second, j);
            }
        std::vector<std::uint32_t> reps;
        for (std::uint32_t j = 0; j < cfg.p; ++j)
            if (ds.find(j) == j) reps.push_back(j);
        if (reps.size() <= 1) break;
        if (round == 9)
            throw std::runtime_error("generate: connectivity not achieved within retry budget");

        std::uniform_int_distribution<std::uint64_t> cd(central_begin, central_end - 1);
        const std::uint64_t c = cd(rng);
        for (std::uint32_t rep : reps) {
            // lowest-index edge of the component with room for one more member
            std::uint32_t chosen = cfg.p;
            for (std::uint32_t j = 0; j < cfg.p; ++j) {
                if (ds.find(j) != rep) continue;
                if (members[j].count(c)) { chosen = cfg.p; break; }  // already threaded
                if (detail::m_card_of(members[j]) + 1.0 <= cfg.max_mcard) { chosen = j; break; }
            }
            if (chosen < cfg.p) members[chosen][c] = 1.0;
        }
    }

    // compact pool ids to a dense universe
    std::map<std::uint64_t, VertexId> dense;
    for (const auto& mem : members)
        for (const auto& [v, m] : mem) dense.try_emplace(v, 0);
    VertexId next = 0;
    for (auto& [pool, id] : dense) id = next++;

    std::vector<HbEdge> edges(cfg.p);
    for (std::uint32_t j = 0; j < cfg.p; ++j) {
        edges[j].weight = 1.0;
        for (const auto& [v, m] : members[j]) edges[j].members.emplace_back(dense[v], m);
    }

    GeneratedHbGraph out{HbGraph(dense.size(), std::move(edges)), std::move(edge_group),
                         {}, {}, {}};
    out.group_seeds.resize(cfg.n_groups);
    out.pool_id.resize(dense.size());
    for (const auto& [pool, id] : dense) {
        out.pool_id[id] = pool;
        if (pool < seeds_end)
            out.group_seeds[pool / cfg.group_seed_size].push_back(id);
        else if (pool < central_end)
            out.central.push_back(id);
    }
    return out;
}

inline std::vector<GeneratedHbGraph> batch(GeneratorConfig cfg, std::size_t count,
                                           std::uint64_t base_seed) {
    if (count < 1) throw std::invalid_argument("batch: count >= 1 required");
    std::vector<GeneratedHbGraph> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        cfg.rng_seed = base_seed + i;
        out.push_back(generate(cfg));
    }
    return out;
}

}  // namespace hbdiff
