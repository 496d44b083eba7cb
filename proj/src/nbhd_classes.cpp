#include "dsai/nbhd_classes.hpp"

#include <algorithm>
#include <cmath>

#include "dsai/errors.hpp"

namespace dsai {

NeighborhoodClassPartition partition_by_trace(const Graph& g, std::span<const Vertex> ground,
                                              std::span<const Vertex> anchor) {
    NeighborhoodClassPartition p;
    p.ground.assign(ground.begin(), ground.end());
    std::sort(p.ground.begin(), p.ground.end());
    p.ground.erase(std::unique(p.ground.begin(), p.ground.end()), p.ground.end());
    p.anchor.assign(anchor.begin(), anchor.end());
    std::sort(p.anchor.begin(), p.anchor.end());
    p.anchor.erase(std::unique(p.anchor.begin(), p.anchor.end()), p.anchor.end());
    for (Vertex v : p.ground) g.check_vertex(v);
    for (Vertex v : p.anchor) g.check_vertex(v);

    if (p.ground.empty()) return p;

    // Refinement: split every class by adjacency to each anchor vertex in turn.
    std::vector<std::vector<Vertex>> blocks{p.ground};
    std::vector<int> block_of(g.vertex_count(), -1);
    for (Vertex v : p.ground) block_of[v] = 0;

    std::vector<std::vector<Vertex>> moved_by_block;
    for (Vertex a : p.anchor) {
        moved_by_block.assign(blocks.size(), {});
        std::vector<int> touched;
        for (Vertex u : g.neighbors(a)) {
            if (block_of[u] < 0) continue;
            if (moved_by_block[block_of[u]].empty()) touched.push_back(block_of[u]);
            moved_by_block[block_of[u]].push_back(u);
        }
        for (int bi : touched) {
            auto& moved = moved_by_block[bi];
            if (moved.size() == blocks[bi].size()) continue; // whole block adjacent
            // The adjacent part becomes a new block.
            int ni = static_cast<int>(blocks.size());
            std::vector<Vertex> stay;
            std::vector<char> is_moved(g.vertex_count(), 0);
            for (Vertex u : moved) is_moved[u] = 1;
            for (Vertex u : blocks[bi])
                if (!is_moved[u]) stay.push_back(u);
            blocks[bi] = std::move(stay);
            for (Vertex u : moved) block_of[u] = ni;
            blocks.push_back(std::move(moved));
        }
    }

    std::vector<char> in_anchor(g.vertex_count(), 0);
    for (Vertex v : p.anchor) in_anchor[v] = 1;
    for (auto& block : blocks) {
        std::sort(block.begin(), block.end());
        NeighborhoodClassPartition::Class cls;
        cls.members = std::move(block);
        for (Vertex u : g.neighbors(cls.members.front()))
            if (in_anchor[u]) cls.trace.push_back(u);
        p.classes.push_back(std::move(cls));
    }
    std::sort(p.classes.begin(), p.classes.end(),
              [](const auto& a, const auto& b) { return a.trace < b.trace; });
    for (int i = 0; i < static_cast<int>(p.classes.size()); ++i)
        p.trace_index.emplace(p.classes[i].trace, i);
    return p;
}

std::vector<std::vector<Vertex>> distinct_traces(const NeighborhoodClassPartition& p) {
    std::vector<std::vector<Vertex>> out;
    out.reserve(p.classes.size());
    for (const auto& cls : p.classes) out.push_back(cls.trace);
    return out;
}

TwinBoundReport twin_bound_report(const NeighborhoodClassPartition& p, int tau) {
    if (tau < 1) throw InputError("tau must be >= 1, got " + std::to_string(tau));
    TwinBoundReport r;
    r.ground_size = static_cast<int>(p.ground.size());
    r.anchor_size = static_cast<int>(p.anchor.size());
    r.tau = tau;
    for (const auto& cls : p.classes) {
        const auto deg = static_cast<long long>(cls.trace.size());
        if (deg > 2LL * tau) r.high_degree_count += static_cast<long long>(cls.members.size());
    }
    r.high_degree_bound = 2.0 * tau * r.anchor_size;
    r.high_degree_ok = r.high_degree_count <= r.high_degree_bound;
    r.trace_count = static_cast<long long>(p.classes.size());
    // Only the 4^tau branch of the class-count bound is evaluable.
    r.trace_bound = (std::pow(4.0, tau) + 2.0 * tau) * r.anchor_size;
    r.trace_ok = r.trace_count <= r.trace_bound;
    if (r.anchor_size == 0) {
        // Degenerate anchor: the bounds say nothing, report as within.
        r.high_degree_ok = true;
        r.trace_ok = true;
    }
    return r;
}

nlohmann::json to_json(const TwinBoundReport& r) {
    return nlohmann::json{{"ground_size", r.ground_size},
                          {"anchor_size", r.anchor_size},
                          {"tau", r.tau},
                          {"high_degree_count", r.high_degree_count},
                          {"high_degree_bound", r.high_degree_bound},
                          {"high_degree_ok", r.high_degree_ok},
                          {"trace_count", r.trace_count},
                          {"trace_bound", r.trace_bound},
                          {"trace_ok", r.trace_ok}};
}

} // namespace dsai
