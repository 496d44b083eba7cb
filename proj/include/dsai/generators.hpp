#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dsai/instance.hpp"
#include "dsai/oracle.hpp"

#include <json.hpp>

namespace dsai {

/// Vertex roles of a generated hardness gadget, for inspection and tests.
struct GadgetMap {
    struct VariableGadget {
        Vertex var, pos, neg; // triangle x_i, t_i, f_i
    };
    std::vector<VariableGadget> variable_vertices;
    std::vector<Vertex> clause_vertices;
    struct TreeGadget {
        Vertex s = -1, r = -1;
        std::vector<Vertex> a;
    };
    std::vector<TreeGadget> tree_vertices;
    std::array<Vertex, 3> y{-1, -1, -1}; // y_1, y_2, y_3 (tail of the forcing chain)
    std::vector<Vertex> apex_vertices;   // a_0..a_k of the colourful construction
    bool apex = false;                   // built from a planar source formula
};

nlohmann::json to_json(const GadgetMap& map, const std::string& kind);

/// Triangle per variable, vertex per clause wired to the matching literal
/// sides, plus a y_1–y_2–y_3 tail. X = {x_1..x_n, y_1}, r = 2, p = |X|,
/// residual = {y_3}. The formula is satisfiable iff ds(G) = |X|.
/// Clauses must be nonempty with at most 3 literals.
std::pair<Instance, GadgetMap> from_3sat(const CnfFormula& f);

/// Bounded-degree variant: clauses of exactly 3 literals, every variable in
/// at most 4 clauses. Clause vertices feed a tree of forcing gadgets instead
/// of a single hub, keeping the maximum degree at 6. Same X/p/residual
/// contract as from_3sat.
std::pair<Instance, GadgetMap> from_34sat(const CnfFormula& f);

/// Clique-completes each block C_i (i >= 1), attaches a pendant-ish a_i per
/// block and an apex a_0 over all original vertices. X = {a_0}, p = k,
/// residual = {a_1..a_k}. Needs radius >= 2 and nonempty blocks.
std::pair<Instance, GadgetMap> from_colourful(const ColourfulInstance& c, int radius);

/// Red-Blue front-end: C_0 = red, and k disjoint copies of the blue set with
/// the original red adjacencies as C_1..C_k.
ColourfulInstance redblue_to_colourful(const Graph& g, const std::vector<Vertex>& red,
                                       const std::vector<Vertex>& blue, int k);

/// Same construction as from_3sat; the caller asserts the formula is planar,
/// which makes the output an apex graph. Only the metadata tag differs.
std::pair<Instance, GadgetMap> apex_from_planar_3sat(const CnfFormula& f);

enum class RandomModel { gnp, planar, max_degree };

struct RandomConfig {
    int n = 10;
    RandomModel model = RandomModel::gnp;
    double edge_prob = 0.2;  // gnp
    double keep_prob = 0.6;  // planar: survival probability after triangulation
    int degree_bound = 4;    // max_degree
    int radius = 3;
    std::uint64_t seed = 1;
    int oracle_cutoff = 20;  // exact budget below this size, banded above
};

/// Seed-deterministic random instance with a greedy maximal r-independent
/// set. Budget policy: ds(G) for n <= oracle_cutoff, else |X| + round(|R|/2).
Instance random_instance(const RandomConfig& cfg);

} // namespace dsai
