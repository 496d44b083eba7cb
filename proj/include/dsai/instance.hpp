#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dsai/graph.hpp"

namespace dsai {

/// A graph with a maximal r-independent set X and a budget p. The unit of
/// all solver and kernelizer I/O.
struct Instance {
    Graph graph;
    std::vector<Vertex> x_set; // sorted ascending
    int radius = 2;            // r >= 1
    int budget = 0;            // p
};

/// Structural checks: ids in range, radius >= 1, X r-independent and maximal.
/// Returns one message per violation; empty means valid.
std::vector<std::string> instance_violations(const Instance& inst);

/// Throws ValidationError listing all violations.
void validate_instance(const Instance& inst);

/// R = V \ N[X] together with the per-center ball data.
struct ResidualDecomposition {
    std::vector<Vertex> residual;                   // R, sorted
    std::vector<Vertex> x_order;                    // x_1..x_l, ascending ids
    std::vector<std::vector<Vertex>> ball;          // N[x_i]
    std::vector<std::vector<Vertex>> ball2;         // N^2[x_i]
    std::vector<std::vector<Vertex>> ball_residual; // R_i = N^2[x_i] ∩ R
};

/// Validates the instance, then computes R, the center order and all balls.
/// For r >= 3 the closed balls N[x_i] are pairwise disjoint and non-adjacent;
/// for r >= 4 the N^2[x_i] are pairwise disjoint as well. Both are asserted.
ResidualDecomposition decompose(const Instance& inst);

/// YES when p >= |X| + |R| (X ∪ R dominates), NO when p < |X| (each of the
/// disjoint balls needs a dominator), otherwise undecided. Requires r >= 2.
std::optional<bool> trivial_verdict(const Instance& inst);

} // namespace dsai
