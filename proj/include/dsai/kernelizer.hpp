#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dsai/instance.hpp"
#include "dsai/oracle.hpp"

#include <json.hpp>

namespace dsai {

struct KernelConfig {
    int tau = 0;                   // 0 = max(1, degeneracy of the input graph)
    int rprime_cap = 4;            // per-trace boundary size cap (4^cap subset pairs)
    bool strict_paper_keep = false; // keep min{|bucket|, |R|} instead of max(|R'|, 1)
    int threads = 0;               // 0 = runtime default
};

/// Planned rewrite of one radius-2 ball: a core S of union-of-dominator
/// vertices that every boundary behaviour can be realized in, edge deletions
/// outside the core, and twin-class trimming down to two representatives.
struct BallReplacement {
    Vertex center = -1;
    bool skipped = false;            // |R'| above the cap, ball left untouched
    std::vector<Vertex> boundary;    // R' = N^2[center] ∩ R, sorted
    std::vector<Vertex> core;        // S, sorted
    std::vector<std::pair<Vertex, Vertex>> removed_edges;
    std::vector<Vertex> removed_vertices; // trimmed twin-class members
    int twin_class_count = 0;
};

BallReplacement plan_ball_replacement(const Graph& g, const std::vector<Vertex>& x_set,
                                      Vertex center, int rprime_cap = 4);

struct SurgeryResult {
    Graph graph;
    std::vector<Vertex> to_original; // new id -> old id
    std::vector<int> to_new;         // old id -> new id, -1 if removed
};

SurgeryResult apply_surgery(const Graph& g, std::span<const Vertex> removed_vertices,
                            std::span<const std::pair<Vertex, Vertex>> removed_edges);

struct BallReplaceResult {
    Graph graph;
    std::vector<Vertex> to_original;
    BallReplacement plan;
};

/// Applies the planned ball rewrite. Domination number is preserved and the
/// result is a subgraph of the input.
BallReplaceResult replace_ball(const Graph& g, const std::vector<Vertex>& x_set, Vertex center,
                               int rprime_cap = 4);

/// All (A,B)-dominator optima of a boundaried ball, capped at |A|+|B|+1
/// (entries above the cap are recorded as infinite). Equal vectors mean the
/// balls are interchangeable.
struct CharacteristicVector {
    std::vector<Vertex> anchor; // sorted boundary
    std::vector<int> values;    // index = a_mask * 2^|anchor| + b_mask
    bool operator==(const CharacteristicVector&) const = default;
};

CharacteristicVector characteristic_vector(const BoundariedGraph& h,
                                           std::span<const Vertex> anchor, int anchor_cap = 4);

struct ClassReplaceResult {
    Graph graph;
    std::vector<Vertex> to_original;
    int offset = 0; // number of whole balls deleted; ds drops by exactly this
    int buckets = 0;
    std::vector<Vertex> removed_centers;
    std::vector<BallReplacement> plans;
};

/// Rewrites a group of centers sharing the same residual trace R': every ball
/// is replaced, balls with equal characteristic vectors are deduplicated down
/// to the keep count, and the offset records how many were deleted.
ClassReplaceResult replace_class(const Graph& g, const std::vector<Vertex>& x_set,
                                 const std::vector<Vertex>& group, const KernelConfig& cfg = {});

struct GroupStats {
    std::vector<Vertex> trace; // R', original ids
    int ball_count = 0;
    int kept = 0;
    int removed = 0;
    int offset = 0;
    bool skipped = false; // |R'| above cap, group left unreduced
};

struct KernelReport {
    Instance reduced;
    int offset = 0; // total budget already certified (ds(original) = ds(reduced) + offset)
    int tau = 0;
    std::vector<Vertex> large_balls; // centers with |R_i| > 2 tau, original ids
    std::vector<GroupStats> groups;
    std::vector<Vertex> vertex_map;       // reduced id -> original id
    std::vector<Vertex> stripped_centers; // radius >= 4 preprocessing removals
    std::string verdict;                  // "yes" | "no" | "undecided"
    int n_before = 0, n_after = 0;
    int p_before = 0, p_after = 0;
};

/// Full reduction pipeline for radius >= 3: strip residual-free balls when
/// radius >= 4, split balls by |R_i| > 2 tau, rewrite each small trace group,
/// and fold the per-group offsets into the budget. When the reduced budget
/// already certifies a YES answer the report carries a canonical single-vertex
/// positive instance and an empty vertex map.
KernelReport kernelize(const Instance& inst, const KernelConfig& cfg = {});

nlohmann::json to_json(const KernelReport& report);

struct StripResult {
    Instance instance;
    std::vector<Vertex> removed_centers; // original ids
    std::vector<Vertex> to_original;
};

/// For radius >= 4: repeatedly removes N[x] for centers whose radius-2 ball
/// meets no residual vertex, decrementing the budget once per removal. The
/// result satisfies |R| >= |X|.
StripResult strip_residual_free_balls(const Instance& inst);

} // namespace dsai
