#pragma once

#include <map>
#include <span>
#include <vector>

#include "dsai/graph.hpp"

#include <json.hpp>

namespace dsai {

/// Grouping of `ground` vertices by their neighbourhood trace on `anchor`.
/// Classes are canonically ordered by trace (lexicographic), members sorted.
struct NeighborhoodClassPartition {
    std::vector<Vertex> ground;
    std::vector<Vertex> anchor;
    struct Class {
        std::vector<Vertex> trace;   // N(u) ∩ anchor, identical for all members
        std::vector<Vertex> members;
    };
    std::vector<Class> classes;
    std::map<std::vector<Vertex>, int> trace_index;
};

/// Partition refinement over the anchor vertices; O(|ground| + incident edges).
NeighborhoodClassPartition partition_by_trace(const Graph& g, std::span<const Vertex> ground,
                                              std::span<const Vertex> anchor);

/// The deduplicated family of traces in canonical (sorted) order.
std::vector<std::vector<Vertex>> distinct_traces(const NeighborhoodClassPartition& p);

/// Empirical check of the twin-class counting bounds for a parameter tau.
/// Diagnostic only; violations flag inputs that do not look like members of a
/// class matching tau.
struct TwinBoundReport {
    int ground_size = 0;
    int anchor_size = 0;
    int tau = 1;
    long long high_degree_count = 0; // |{u : deg_anchor(u) > 2 tau}|
    double high_degree_bound = 0;    // 2 tau |anchor|
    bool high_degree_ok = true;
    long long trace_count = 0;       // |distinct traces|
    double trace_bound = 0;          // (4^tau + 2 tau) |anchor|
    bool trace_ok = true;
};

TwinBoundReport twin_bound_report(const NeighborhoodClassPartition& p, int tau);

nlohmann::json to_json(const TwinBoundReport& r);

} // namespace dsai
