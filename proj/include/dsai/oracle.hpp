#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dsai/graph.hpp"

namespace dsai {

/// A graph with a designated boundary set.
struct BoundariedGraph {
    Graph graph;
    std::vector<Vertex> boundary; // sorted
};

/// Dominate V \ exempt while picking at least one vertex from each required
/// group. An empty group makes the instance infeasible.
struct AnnotatedInstance {
    Graph graph;
    std::vector<Vertex> exempt;                       // Y
    std::vector<std::vector<Vertex>> required_groups; // R_1..R_l
    std::optional<int> size_cap;                      // reject solutions above
};

/// Vertex partition C_0, C_1, ..., C_k; blocks[0] is C_0.
struct ColourfulInstance {
    Graph graph;
    std::vector<std::vector<Vertex>> blocks;
};

/// CNF with DIMACS-style signed 1-based literals.
struct CnfFormula {
    int variable_count = 0;
    std::vector<std::vector<int>> clauses;
};

struct DsSolution {
    int size = 0;
    std::vector<Vertex> witness; // sorted
};

/// Minimum dominating set by branch and bound on the lowest-id undominated
/// vertex, with a greedy upper bound for pruning. Deterministic.
DsSolution ds_exact(const Graph& g);

/// Minimum set dominating V \ Y that hits every required group, found by
/// iterative deepening (witnesses are minimum, not merely minimal). Returns
/// nullopt when infeasible or when only solutions above size_cap exist.
std::optional<DsSolution> annotated_ds_exact(const AnnotatedInstance& inst);

/// Minimum D with D ∩ boundary = A dominating (V \ boundary) ∪ B. Witness is
/// the lexicographically smallest among minimum-size solutions; prefer_first
/// moves one vertex to the front of that order. size_cap bounds |D|.
std::optional<DsSolution> ab_dominator_min(const BoundariedGraph& h, std::span<const Vertex> a,
                                           std::span<const Vertex> b,
                                           std::optional<int> size_cap = std::nullopt,
                                           std::optional<Vertex> prefer_first = std::nullopt);

/// A set with exactly one vertex per block C_1..C_k dominating C_0, found by
/// product enumeration with a reachability prune. nullopt when none exists.
std::optional<std::vector<Vertex>> colourful_ds_exact(const ColourfulInstance& inst);

/// Satisfying assignment by enumerating all 2^n assignments; guarded at
/// n <= 24 variables.
std::optional<std::vector<bool>> sat_brute(const CnfFormula& f);

} // namespace dsai
