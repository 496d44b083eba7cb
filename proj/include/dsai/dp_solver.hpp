#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "dsai/cost.hpp"
#include "dsai/instance.hpp"
#include "dsai/oracle.hpp"

namespace dsai {

/// One guessed branch of the solver: a residual intersection D_R, the
/// residual vertices R' it leaves undominated, the family of distinct
/// nonempty neighbourhood traces of N(X) on R', and a guess which traces the
/// rest of the solution covers.
struct DpBranch {
    std::vector<Vertex> residual_choice;           // D_R, sorted
    std::vector<Vertex> undominated_residual;      // R' = R \ N[D_R], sorted
    std::vector<std::vector<Vertex>> trace_family; // canonical order
    std::uint32_t covered_guess = 0;               // mask over trace_family
};

/// Derives R' and the trace family for a residual choice. The default guess
/// covers the whole family.
DpBranch make_branch(const Graph& g, const ResidualDecomposition& decomp,
                     std::vector<Vertex> residual_choice,
                     std::optional<std::uint32_t> covered_guess = std::nullopt);

/// A branch is viable iff the union of its guessed traces covers R'.
bool branch_viable(const DpBranch& branch);

/// Level-indexed table over subsets of the selected traces. entries[mask]
/// holds the cheapest partial solution within the first `level` balls that
/// covers at least the traces in `mask` and, together with D_R, dominates
/// those balls. Costs are monotone in the mask.
struct DpTable {
    int level = 0;
    struct Entry {
        int cost = kInfCost;
        std::uint32_t from_mask = 0; // previous-level mask this entry extends
        int gamma_ref = -1;          // index into per-run gamma witness list
    };
    std::vector<Entry> entries; // size 2^(number of selected traces)
};

/// For each trace selected by sub_mask (ascending bit order), the vertices of
/// ball_nbrs whose trace on `anchor` equals it. Empty sets are kept: they
/// mark the ball as unable to cover that trace.
std::vector<std::vector<Vertex>> trace_preimage(const std::vector<std::vector<Vertex>>& family,
                                                std::uint32_t sub_mask, const Graph& g,
                                                std::span<const Vertex> ball_nbrs,
                                                std::span<const Vertex> anchor);

/// Per-ball subproblem solver, injectable for testing.
using AnnotatedOracle = std::function<std::optional<DsSolution>(const AnnotatedInstance&)>;
AnnotatedOracle default_annotated_oracle();

enum class SplitEnumeration {
    submask,   // S2 ⊆ S, S1 = S \ S2 (3^f total work)
    full_cover // all pairs with S1 ∪ S2 = S; reference variant
};

struct DpRunResult {
    int cost = kInfCost;
    std::vector<Vertex> witness; // within N[X], excludes D_R
    std::vector<DpTable> tables; // levels 0..l when keep_tables was set
};

/// Runs the ball-order dynamic program for one branch and returns the final
/// table entry for the branch's covered_guess, with its witness.
DpRunResult dp_run(const Graph& g, const ResidualDecomposition& decomp, const DpBranch& branch,
                   const AnnotatedOracle& sub_solver = default_annotated_oracle(),
                   bool keep_tables = false,
                   SplitEnumeration split = SplitEnumeration::submask);

struct SolveOptions {
    int threads = 0;           // 0 = runtime default, 1 = no parallel fan-out
    int mask_width_guard = 20; // max distinct nonempty traces per branch
    int residual_guard = 24;   // max |R| for the residual-subset enumeration
    SplitEnumeration split = SplitEnumeration::submask;
};

struct SolveResult {
    int ds_size = 0;
    std::vector<Vertex> witness; // sorted, re-checked dominating set
    bool within_budget = false;  // ds_size <= p
    DpBranch branch;             // winning branch, covered_guess = final mask
    long long branches_evaluated = 0;
    long long branches_pruned = 0;
};

/// Exact solve for radius >= 3: minimum over residual choices D_R of
/// |D_R| plus the dynamic program optimum. The branch fan-out runs under
/// OpenMP; results are independent of the schedule.
SolveResult solve_dp(const Instance& inst, const SolveOptions& opts = {});

/// Reference driver: same branch evaluation, plain sequential loop. Kept for
/// testing and benchmarking against solve_dp.
SolveResult solve_dp_serial(const Instance& inst, const SolveOptions& opts = {});

/// General-graph variant. The trace family is no longer structurally small
/// (only |family| <= 2^|R'| holds) but the enumeration and the exhaustive
/// per-ball subsolver already pay that price, so this shares all code paths
/// with solve_dp.
SolveResult solve_xp(const Instance& inst, const SolveOptions& opts = {});

} // namespace dsai
