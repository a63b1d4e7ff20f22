#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "hbdiff/diffusion.hpp"

namespace hbdiff {

/// Exhaustive classification of unordered entity pairs between two rankings.
struct TauPairCounts {
    std::uint64_t concordant_strict = 0;  // ordered the same way in both
    std::uint64_t discordant_strict = 0;  // ordered opposite ways
    std::uint64_t tied_both = 0;          // tied in both rankings
    std::uint64_t tied_one = 0;           // tied in exactly one
    std::uint64_t total_pairs = 0;        // n(n-1)/2
};

inline TauPairCounts pair_counts(const Ranking& a, const Ranking& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw std::invalid_argument("pair_counts: rankings cover different entity sets");
    TauPairCounts c;
    c.total_pairs = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    // group index doubles as the rank key: smaller group = better rank
    for (std::size_t u = 0; u + 1 < n; ++u) {
        for (std::size_t v = u + 1; v < n; ++v) {
            const bool tied_a = a.group_of[u] == a.group_of[v];
            const bool tied_b = b.group_of[u] == b.group_of[v];
            if (tied_a && tied_b) {
                ++c.tied_both;
            } else if (tied_a || tied_b) {
                ++c.tied_one;
            } else {
                const bool a_ahead = a.group_of[u] < a.group_of[v];
                const bool b_ahead = b.group_of[u] < b.group_of[v];
                if (a_ahead == b_ahead)
                    ++c.concordant_strict;
                else
                    ++c.discordant_strict;
            }
        }
    }
    return c;
}

/// (C - D) / total: tied pairs contribute nothing.
inline double tau_strict(const TauPairCounts& c) {
    if (c.total_pairs == 0) throw std::invalid_argument("tau_strict: no pairs");
    return (static_cast<double>(c.concordant_strict) - static_cast<double>(c.discordant_strict)) /
           static_cast<double>(c.total_pairs);
}

/// (C + T_both - D - T_one) / total: agreeing ties count as concordant,
/// one-sided ties as discordant.
inline double tau_large(const TauPairCounts& c) {
    if (c.total_pairs == 0) throw std::invalid_argument("tau_large: no pairs");
    return (static_cast<double>(c.concordant_strict) + static_cast<double>(c.tied_both) -
            static_cast<double>(c.discordant_strict) - static_cast<double>(c.tied_one)) /
           static_cast<double>(c.total_pairs);
}

inline double tau_strict(const Ranking& a, const Ranking& b) { return tau_strict(pair_counts(a, b)); }
inline double tau_large(const Ranking& a, const Ranking& b) { return tau_large(pair_counts(a, b)); }

/// Top-k overlap; a tie group straddling rank k is included whole.
inline double jaccard_head(const Ranking& a, const Ranking& b, std::size_t k) {
    if (k == 0) throw std::invalid_argument("jaccard_head: k must be >= 1");
    if (a.size() != b.size())
        throw std::invalid_argument("jaccard_head: rankings cover different entity sets");
    k = std::min(k, a.size());
    auto head_mask = [&](const Ranking& r) {
        std::vector<char> in(r.size(), 0);
        std::size_t end = k;
        while (end < r.size() && r.tie_group[end] == r.tie_group[k - 1]) ++end;
        for (std::size_t i = 0; i < end; ++i) in[r.order[i]] = 1;
        return in;
    };
    const auto ma = head_mask(a), mb = head_mask(b);
    std::size_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < ma.size(); ++i) {
        if (ma[i] && mb[i]) ++inter;
        if (ma[i] || mb[i]) ++uni;
    }
    return static_cast<double>(inter) / static_cast<double>(uni);
}

enum class TauVariant { strict, large };

/// Symmetric pairwise tau matrix over one graph's per-experiment rankings
/// (row-major, unit diagonal).
inline std::vector<double> correlation_matrix(const std::vector<Ranking>& rankings,
                                              TauVariant variant) {
    const std::size_t m = rankings.size();
    if (m < 2) throw std::invalid_argument("correlation_matrix: need at least 2 rankings");
    std::vector<double> out(m * m, 1.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const auto c = pair_counts(rankings[i], rankings[j]);
            const double t = variant == TauVariant::strict ? tau_strict(c) : tau_large(c);
            out[i * m + j] = t;
            out[j * m + i] = t;
        }
    }
    return out;
}

}  // namespace hbdiff
