#pragma once

#include <random>
#include <vector>

#include "hbdiff/hbdiff.hpp"

namespace hbtest {

using namespace hbdiff;

// e1 = {v0:2, v1:1} w=1, e2 = {v1:1, v2:1} w=1
inline HbGraph example3(double weight_scale = 1.0) {
    std::vector<HbEdge> edges(2);
    edges[0].members = {{0, 2.0}, {1, 1.0}};
    edges[0].weight = weight_scale;
    edges[1].members = {{1, 1.0}, {2, 1.0}};
    edges[1].weight = weight_scale;
    return HbGraph(3, std::move(edges));
}

// Small random connected hb-graph with varied multiplicities and weights.
inline HbGraph random_small_graph(std::uint64_t seed, std::size_t max_n = 50) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> nd(2, max_n);
    const std::size_t n = nd(rng);
    std::uniform_int_distribution<std::size_t> pd(2, std::max<std::size_t>(3, n / 2 + 2));
    const std::size_t p = pd(rng);
    std::uniform_int_distribution<std::size_t> size_d(2, std::min<std::size_t>(n, 6));
    std::uniform_int_distribution<int> mult_d(1, 3);
    std::uniform_real_distribution<double> w_d(0.5, 3.0);
    std::uniform_int_distribution<std::size_t> v_d(0, n - 1);

    std::vector<HbEdge> edges(p);
    for (auto& e : edges) {
        e.weight = w_d(rng);
        const std::size_t sz = size_d(rng);
        std::vector<std::pair<VertexId, double>> mem;
        while (mem.size() < sz) {
            const auto v = static_cast<VertexId>(v_d(rng));
            bool dup = false;
            for (const auto& [u, m] : mem) dup |= (u == v);
            if (!dup) mem.emplace_back(v, static_cast<double>(mult_d(rng)));
        }
        e.members = std::move(mem);
    }
    // stitch every vertex into some edge and chain the edges
    auto contains = [](const HbEdge& e, VertexId v) {
        for (const auto& [u, m] : e.members)
            if (u == v) return true;
        return false;
    };
    for (std::size_t v = 0; v < n; ++v) {
        auto& e = edges[v % p];
        if (!contains(e, static_cast<VertexId>(v)))
            e.members.emplace_back(static_cast<VertexId>(v), 1.0);
    }
    for (std::size_t j = 1; j < p; ++j) {
        const VertexId link = edges[j - 1].members.front().first;
        if (!contains(edges[j], link)) edges[j].members.emplace_back(link, 1.0);
    }
    return HbGraph(n, std::move(edges));
}

}  // namespace hbtest
