#pragma once

// Test-only reference implementations. These stay independent of the library
// solver paths: plain subset enumeration, no branching heuristics, no tables.

#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "dsai/cost.hpp"
#include "dsai/dp_solver.hpp"
#include "dsai/graph.hpp"
#include "dsai/instance.hpp"

namespace testsupport {

inline bool dominates(const dsai::Graph& g, const std::vector<int>& d) {
    std::vector<char> hit(g.vertex_count(), 0);
    for (int v : d) {
        hit[v] = 1;
        for (int u : g.neighbors(v)) hit[u] = 1;
    }
    for (int v = 0; v < g.vertex_count(); ++v)
        if (!hit[v]) return false;
    return true;
}

inline bool next_combination(std::vector<int>& comb, int n) {
    const int k = static_cast<int>(comb.size());
    for (int i = k - 1; i >= 0; --i) {
        if (comb[i] < n - k + i) {
            ++comb[i];
            for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
            return true;
        }
    }
    return false;
}

// Minimum dominating set by size-then-lexicographic subset enumeration.
inline std::optional<std::vector<int>> brute_min_dominating(const dsai::Graph& g,
                                                            int max_size = -1) {
    const int n = g.vertex_count();
    if (max_size < 0) max_size = n;
    for (int k = 0; k <= std::min(max_size, n); ++k) {
        std::vector<int> comb(k);
        std::iota(comb.begin(), comb.end(), 0);
        if (k == 0) {
            if (dominates(g, comb)) return comb;
            continue;
        }
        do {
            if (dominates(g, comb)) return comb;
        } while (next_combination(comb, n));
    }
    return std::nullopt;
}

// The quantity the solver tables claim to hold: cheapest D inside the first
// `level` closed balls that covers every selected trace through open-ball
// vertices and, together with the residual choice, dominates those balls.
inline int brute_table_value(const dsai::Graph& g, const dsai::ResidualDecomposition& decomp,
                             const std::vector<int>& residual_choice,
                             const std::vector<int>& anchor, // R'
                             const std::vector<std::vector<int>>& traces, std::uint32_t mask,
                             int level) {
    std::vector<int> universe;
    std::vector<char> is_center(g.vertex_count(), 0);
    for (int i = 0; i < level; ++i) {
        is_center[decomp.x_order[i]] = 1;
        for (int v : decomp.ball[i]) universe.push_back(v);
    }

    std::vector<char> in_anchor(g.vertex_count(), 0);
    for (int v : anchor) in_anchor[v] = 1;
    auto trace_of = [&](int v) {
        std::vector<int> t;
        for (int u : g.neighbors(v))
            if (in_anchor[u]) t.push_back(u);
        return t;
    };

    std::vector<char> dominated_by_choice(g.vertex_count(), 0);
    for (int v : residual_choice) {
        dominated_by_choice[v] = 1;
        for (int u : g.neighbors(v)) dominated_by_choice[u] = 1;
    }

    int best = dsai::kInfCost;
    const std::uint64_t total = std::uint64_t(1) << universe.size();
    for (std::uint64_t pick = 0; pick < total; ++pick) {
        std::vector<int> d;
        for (std::size_t i = 0; i < universe.size(); ++i)
            if (pick >> i & 1) d.push_back(universe[i]);
        if (static_cast<int>(d.size()) >= best) continue;

        std::vector<char> hit = dominated_by_choice;
        for (int v : d) {
            hit[v] = 1;
            for (int u : g.neighbors(v)) hit[u] = 1;
        }
        bool ok = true;
        for (int v : universe)
            if (!hit[v]) {
                ok = false;
                break;
            }
        if (!ok) continue;

        for (std::size_t f = 0; f < traces.size() && ok; ++f) {
            if (!(mask >> f & 1)) continue;
            bool covered = false;
            for (int v : d)
                if (!is_center[v] && trace_of(v) == traces[f]) {
                    covered = true;
                    break;
                }
            ok = covered;
        }
        if (ok) best = static_cast<int>(d.size());
    }
    return best;
}

inline dsai::Graph random_graph(int n, double edge_prob, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto coin = [&] { return (rng() >> 11) * 0x1.0p-53 < edge_prob; };
    dsai::Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin()) g.add_edge(u, v);
    return g;
}

inline dsai::Graph path_graph(int n) {
    dsai::Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline dsai::Graph cycle_graph(int n) {
    dsai::Graph g = path_graph(n);
    if (n >= 3) g.add_edge(n - 1, 0);
    return g;
}

inline dsai::Graph star_graph(int leaves) {
    dsai::Graph g(leaves + 1);
    for (int i = 1; i <= leaves; ++i) g.add_edge(0, i);
    return g;
}

} // namespace testsupport
