#include "dsai/dp_solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dsai/errors.hpp"
#include "dsai/nbhd_classes.hpp"

namespace dsai {

AnnotatedOracle default_annotated_oracle() {
    return [](const AnnotatedInstance& inst) { return annotated_ds_exact(inst); };
}

namespace {

std::vector<Vertex> sorted_trace(const Graph& g, Vertex v, const std::vector<char>& in_anchor) {
    std::vector<Vertex> t;
    for (Vertex u : g.neighbors(v))
        if (in_anchor[u]) t.push_back(u);
    return t; // adjacency is sorted, so the trace is too
}

} // namespace

DpBranch make_branch(const Graph& g, const ResidualDecomposition& decomp,
                     std::vector<Vertex> residual_choice,
                     std::optional<std::uint32_t> covered_guess) {
    DpBranch b;
    b.residual_choice = std::move(residual_choice);
    std::sort(b.residual_choice.begin(), b.residual_choice.end());
    b.residual_choice.erase(std::unique(b.residual_choice.begin(), b.residual_choice.end()),
                            b.residual_choice.end());

    std::vector<char> in_r(g.vertex_count(), 0);
    for (Vertex v : decomp.residual) in_r[v] = 1;
    for (Vertex v : b.residual_choice) {
        g.check_vertex(v);
        if (!in_r[v])
            throw InputError("residual choice contains non-residual vertex " + std::to_string(v));
    }

    std::vector<char> dominated(g.vertex_count(), 0);
    for (Vertex v : b.residual_choice) {
        dominated[v] = 1;
        for (Vertex u : g.neighbors(v)) dominated[u] = 1;
    }
    for (Vertex v : decomp.residual)
        if (!dominated[v]) b.undominated_residual.push_back(v);

    std::vector<Vertex> ground; // N(X)
    {
        std::vector<char> in_x(g.vertex_count(), 0);
        for (Vertex x : decomp.x_order) in_x[x] = 1;
        for (const auto& ball : decomp.ball)
            for (Vertex v : ball)
                if (!in_x[v]) ground.push_back(v);
        std::sort(ground.begin(), ground.end());
        ground.erase(std::unique(ground.begin(), ground.end()), ground.end());
    }

    auto part = partition_by_trace(g, ground, b.undominated_residual);
    for (auto& trace : distinct_traces(part))
        if (!trace.empty()) b.trace_family.push_back(std::move(trace));
    if (b.trace_family.size() > 30)
        throw ResourceError("trace family of size " + std::to_string(b.trace_family.size()) +
                            " exceeds the 30-bit mask limit");

    const std::uint32_t full =
        b.trace_family.empty() ? 0u : (std::uint32_t(1) << b.trace_family.size()) - 1;
    b.covered_guess = covered_guess.value_or(full);
    if ((b.covered_guess & ~full) != 0)
        throw InputError("covered_guess selects bits outside the trace family");
    return b;
}

bool branch_viable(const DpBranch& branch) {
    if (branch.undominated_residual.empty()) return true;
    std::vector<Vertex> covered;
    for (std::size_t f = 0; f < branch.trace_family.size(); ++f)
        if (branch.covered_guess >> f & 1)
            covered.insert(covered.end(), branch.trace_family[f].begin(),
                           branch.trace_family[f].end());
    std::sort(covered.begin(), covered.end());
    return std::includes(covered.begin(), covered.end(), branch.undominated_residual.begin(),
                         branch.undominated_residual.end());
}

std::vector<std::vector<Vertex>> trace_preimage(const std::vector<std::vector<Vertex>>& family,
                                                std::uint32_t sub_mask, const Graph& g,
                                                std::span<const Vertex> ball_nbrs,
                                                std::span<const Vertex> anchor) {
    std::vector<char> in_anchor(g.vertex_count(), 0);
    for (Vertex v : anchor) {
        g.check_vertex(v);
        in_anchor[v] = 1;
    }
    std::vector<std::vector<Vertex>> out;
    for (std::size_t f = 0; f < family.size(); ++f) {
        if (!(sub_mask >> f & 1)) continue;
        std::vector<Vertex> cls;
        for (Vertex y : ball_nbrs)
            if (sorted_trace(g, y, in_anchor) == family[f]) cls.push_back(y);
        out.push_back(std::move(cls));
    }
    return out;
}

namespace {

struct GammaEntry {
    int cost = kInfCost;
    std::vector<Vertex> witness; // global ids
};

// One branch of the solver: per-ball annotated subproblems glued together by
// the table recurrence over subsets of the selected traces.
class BranchEngine {
public:
    BranchEngine(const Graph& g, const ResidualDecomposition& decomp,
                 const std::vector<InducedSubgraph>& balls, const DpBranch& branch,
                 const AnnotatedOracle& oracle, SplitEnumeration split)
        : g_(g), decomp_(decomp), balls_(balls), branch_(branch), oracle_(oracle),
          split_(split) {
        for (std::size_t f = 0; f < branch.trace_family.size(); ++f)
            if (branch.covered_guess >> f & 1) selected_.push_back(static_cast<int>(f));
        width_ = static_cast<int>(selected_.size());
        if (width_ > 30) throw ResourceError("covered trace selection exceeds the mask limit");
        prepare();
        fill_tables();
    }

    int width() const { return width_; }
    const std::vector<DpTable>& tables() const { return tables_; }
    std::vector<DpTable> take_tables() { return std::move(tables_); }

    int cost_at(std::uint32_t mask) const { return tables_.back().entries[mask].cost; }

    // Coverage of R' by the traces selected in `mask`, as bits over R'.
    std::uint64_t cover_bits(std::uint32_t mask) const {
        std::uint64_t bits = 0;
        for (int j = 0; j < width_; ++j)
            if (mask >> j & 1) bits |= trace_cover_[j];
        return bits;
    }
    std::uint64_t full_cover() const { return rp_full_; }

    std::vector<Vertex> reconstruct(std::uint32_t final_mask) const {
        std::vector<Vertex> witness;
        std::uint32_t mask = final_mask;
        for (int lvl = static_cast<int>(balls_.size()); lvl >= 1; --lvl) {
            const auto& e = tables_[lvl].entries[mask];
            if (e.cost >= kInfCost) return {};
            if (e.gamma_ref >= 0) {
                const auto& w = gammas_[e.gamma_ref].witness;
                witness.insert(witness.end(), w.begin(), w.end());
            }
            mask = e.from_mask;
        }
        std::sort(witness.begin(), witness.end());
        return witness;
    }

private:
    void prepare() {
        const int n = g_.vertex_count();
        std::vector<char> in_anchor(n, 0);
        int bit = 0;
        std::vector<int> rp_bit(n, -1);
        for (Vertex v : branch_.undominated_residual) {
            in_anchor[v] = 1;
            rp_bit[v] = bit++;
        }
        if (bit > 60) throw ResourceError("R' too large for coverage bookkeeping");
        rp_full_ = bit == 0 ? 0 : (bit == 60 ? ~std::uint64_t(0) >> 4 : (std::uint64_t(1) << bit) - 1);

        trace_cover_.assign(width_, 0);
        std::map<std::vector<Vertex>, int> pos_of_trace;
        for (int j = 0; j < width_; ++j) {
            const auto& trace = branch_.trace_family[selected_[j]];
            pos_of_trace[trace] = j;
            for (Vertex v : trace) trace_cover_[j] |= std::uint64_t(1) << rp_bit[v];
        }

        std::vector<char> by_dr(n, 0); // dominated by the residual choice
        for (Vertex v : branch_.residual_choice) {
            by_dr[v] = 1;
            for (Vertex u : g_.neighbors(v)) by_dr[u] = 1;
        }

        const int levels = static_cast<int>(balls_.size());
        exempt_local_.assign(levels, {});
        class_local_.assign(levels, std::vector<std::vector<Vertex>>(width_));
        for (int lvl = 0; lvl < levels; ++lvl) {
            const auto& sub = balls_[lvl];
            const Vertex center = decomp_.x_order[lvl];
            for (int local = 0; local < static_cast<int>(sub.to_global.size()); ++local) {
                Vertex v = sub.to_global[local];
                if (by_dr[v]) exempt_local_[lvl].push_back(local);
                if (v == center) continue; // preimages live in the open neighbourhood
                auto trace = sorted_trace(g_, v, in_anchor);
                if (trace.empty()) continue;
                auto it = pos_of_trace.find(trace);
                if (it != pos_of_trace.end()) class_local_[lvl][it->second].push_back(local);
            }
        }
    }

    std::pair<int, int> gamma(int lvl, std::uint32_t mask2) {
        const std::uint64_t key = (std::uint64_t(lvl) << 32) | mask2;
        auto it = gamma_memo_.find(key);
        if (it == gamma_memo_.end()) {
            int ref = solve_gamma(lvl, mask2);
            it = gamma_memo_.emplace(key, ref).first;
        }
        return it->second < 0 ? std::pair<int, int>{kInfCost, -1}
                              : std::pair<int, int>{gammas_[it->second].cost, it->second};
    }

    int solve_gamma(int lvl, std::uint32_t mask2) {
        AnnotatedInstance sub;
        sub.graph = balls_[lvl].graph;
        for (int local : exempt_local_[lvl]) sub.exempt.push_back(local);
        for (int j = 0; j < width_; ++j) {
            if (!(mask2 >> j & 1)) continue;
            if (class_local_[lvl][j].empty()) return -1; // trace unreachable in this ball
            sub.required_groups.push_back(class_local_[lvl][j]);
        }
        auto sol = oracle_(sub);
        if (!sol) return -1;
        GammaEntry entry;
        entry.cost = sol->size;
        for (Vertex local : sol->witness) entry.witness.push_back(balls_[lvl].to_global[local]);
        gammas_.push_back(std::move(entry));
        return static_cast<int>(gammas_.size()) - 1;
    }

    void fill_tables() {
        const int levels = static_cast<int>(balls_.size());
        const std::uint32_t table_size = std::uint32_t(1) << width_;
        tables_.assign(levels + 1, {});
        tables_[0].level = 0;
        tables_[0].entries.assign(table_size, {});
        tables_[0].entries[0].cost = 0;
        for (int lvl = 0; lvl < levels; ++lvl) {
            auto& prev = tables_[lvl].entries;
            tables_[lvl + 1].level = lvl + 1;
            auto& next = tables_[lvl + 1].entries;
            next.assign(table_size, {});
            for (std::uint32_t mask = 0; mask < table_size; ++mask) {
                DpTable::Entry best;
                auto consider = [&](std::uint32_t s1, std::uint32_t s2) {
                    if (prev[s1].cost >= kInfCost) return;
                    auto [gcost, gref] = gamma(lvl, s2);
                    int c = sat_add(prev[s1].cost, gcost);
                    if (c < best.cost) best = {c, s1, gref};
                };
                if (split_ == SplitEnumeration::submask) {
                    std::uint32_t s2 = mask;
                    while (true) {
                        consider(mask ^ s2, s2);
                        if (s2 == 0) break;
                        s2 = (s2 - 1) & mask;
                    }
                } else {
                    std::uint32_t s1 = mask;
                    while (true) {
                        std::uint32_t s2 = mask;
                        while (true) {
                            if ((s1 | s2) == mask) consider(s1, s2);
                            if (s2 == 0) break;
                            s2 = (s2 - 1) & mask;
                        }
                        if (s1 == 0) break;
                        s1 = (s1 - 1) & mask;
                    }
                }
                next[mask] = best;
            }
        }
    }

    const Graph& g_;
    const ResidualDecomposition& decomp_;
    const std::vector<InducedSubgraph>& balls_;
    const DpBranch& branch_;
    const AnnotatedOracle& oracle_;
    SplitEnumeration split_;

    std::vector<int> selected_;
    int width_ = 0;
    std::uint64_t rp_full_ = 0;
    std::vector<std::uint64_t> trace_cover_;
    std::vector<std::vector<Vertex>> exempt_local_;
    std::vector<std::vector<std::vector<Vertex>>> class_local_; // [level][trace pos]
    std::vector<GammaEntry> gammas_;
    std::unordered_map<std::uint64_t, int> gamma_memo_;
    std::vector<DpTable> tables_;
};

std::vector<InducedSubgraph> build_balls(const Graph& g, const ResidualDecomposition& decomp) {
    std::vector<InducedSubgraph> balls;
    balls.reserve(decomp.ball.size());
    for (const auto& ball : decomp.ball) balls.push_back(induce(g, ball));
    return balls;
}

} // namespace

DpRunResult dp_run(const Graph& g, const ResidualDecomposition& decomp, const DpBranch& branch,
                   const AnnotatedOracle& sub_solver, bool keep_tables, SplitEnumeration split) {
    auto balls = build_balls(g, decomp);
    BranchEngine engine(g, decomp, balls, branch, sub_solver, split);
    const std::uint32_t final_mask =
        engine.width() == 0 ? 0u : (std::uint32_t(1) << engine.width()) - 1;
    DpRunResult result;
    result.cost = engine.cost_at(final_mask);
    if (result.cost < kInfCost) result.witness = engine.reconstruct(final_mask);
    if (keep_tables) result.tables = engine.take_tables();
    return result;
}

namespace {

struct BranchOutcome {
    int total = kInfCost;
    long long order = -1;
    std::vector<Vertex> witness;
    DpBranch branch;
};

std::uint64_t next_same_popcount(std::uint64_t x) {
    const std::uint64_t c = x & (~x + 1);
    const std::uint64_t r = x + c;
    return (((x ^ r) >> 2) / c) | r;
}

SolveResult run_solver(const Instance& inst, const SolveOptions& opts, bool parallel) {
    if (inst.radius < 3)
        throw UnsupportedError("the ball dynamic program needs radius >= 3 (got " +
                               std::to_string(inst.radius) + "); use the exact oracle instead");
    const Graph& g = inst.graph;
    auto decomp = decompose(inst);
    const int levels = static_cast<int>(decomp.x_order.size());
    const auto& residual = decomp.residual;
    const int r_size = static_cast<int>(residual.size());
    if (r_size > opts.residual_guard)
        throw ResourceError("|R| = " + std::to_string(r_size) +
                            " exceeds the residual enumeration guard " +
                            std::to_string(opts.residual_guard));
    auto balls = build_balls(g, decomp);
    AnnotatedOracle oracle = default_annotated_oracle();

    std::atomic<int> incumbent{kInfCost};
    std::atomic<long long> evaluated{0}, pruned{0};
    BranchOutcome best;
    std::exception_ptr error;

#ifdef _OPENMP
    const int default_threads = omp_get_max_threads();
    const int threads = opts.threads > 0 ? opts.threads : default_threads;
#else
    const int threads = 1; // no runtime support: the fan-out stays sequential
#endif

    auto evaluate = [&](std::uint64_t dr_mask, long long order) {
        const int base = std::popcount(dr_mask);
        // Every viable branch costs at least |D_R| + one dominator per ball;
        // a strict bound keeps ties reachable so results stay deterministic.
        if (incumbent.load(std::memory_order_relaxed) < kInfCost &&
            base + levels > incumbent.load(std::memory_order_relaxed)) {
            pruned.fetch_add(1, std::memory_order_relaxed);
            return BranchOutcome{};
        }
        evaluated.fetch_add(1, std::memory_order_relaxed);

        std::vector<Vertex> choice;
        for (int i = 0; i < r_size; ++i)
            if (dr_mask >> i & 1) choice.push_back(residual[i]);

        BranchOutcome out;
        out.order = order;
        DpBranch branch = make_branch(g, decomp, std::move(choice));
        if (static_cast<int>(branch.trace_family.size()) > opts.mask_width_guard)
            throw ResourceError("trace family of size " +
                                std::to_string(branch.trace_family.size()) +
                                " exceeds the mask width guard " +
                                std::to_string(opts.mask_width_guard));
        if (!branch_viable(branch)) return out; // R' has vertices no trace can cover

        BranchEngine engine(g, decomp, balls, branch, oracle, opts.split);
        const std::uint32_t table_size = std::uint32_t(1) << engine.width();
        int best_cost = kInfCost;
        std::uint32_t best_mask = 0;
        for (std::uint32_t mask = 0; mask < table_size; ++mask) {
            if ((engine.cover_bits(mask) & engine.full_cover()) != engine.full_cover()) continue;
            int c = engine.cost_at(mask);
            if (c < best_cost) {
                best_cost = c;
                best_mask = mask;
            }
        }
        if (best_cost >= kInfCost) return out;

        out.total = base + best_cost;
        out.witness = engine.reconstruct(best_mask);
        out.witness.insert(out.witness.end(), branch.residual_choice.begin(),
                           branch.residual_choice.end());
        out.branch = std::move(branch);
        out.branch.covered_guess = best_mask;

        int cur = incumbent.load();
        while (out.total < cur && !incumbent.compare_exchange_weak(cur, out.total)) {
        }
        return out;
    };

    auto better = [](const BranchOutcome& a, const BranchOutcome& b) {
        if (a.total != b.total) return a.total < b.total;
        return a.order < b.order;
    };

    long long order_base = 0;
    for (int t = 0; t <= r_size; ++t) {
        {
            const int inc = incumbent.load();
            if (inc < kInfCost && t + levels > inc) break;
        }
        std::vector<std::uint64_t> block;
        if (t == 0) {
            block.push_back(0);
        } else {
            const std::uint64_t limit = std::uint64_t(1) << r_size;
            for (std::uint64_t m = (std::uint64_t(1) << t) - 1; m < limit;
                 m = next_same_popcount(m)) {
                block.push_back(m);
                if (t == r_size) break; // Gosper overflows on the last mask
            }
        }

        if (parallel && threads > 1 && block.size() > 1) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
            for (std::size_t i = 0; i < block.size(); ++i) {
                try {
                    BranchOutcome out = evaluate(block[i], order_base + static_cast<long long>(i));
                    if (out.total < kInfCost) {
#pragma omp critical(dsai_dp_best)
                        {
                            if (better(out, best)) best = std::move(out);
                        }
                    }
                } catch (...) {
#pragma omp critical(dsai_dp_error)
                    {
                        if (!error) error = std::current_exception();
                    }
                }
            }
            if (error) std::rethrow_exception(error);
#endif
        } else {
            for (std::size_t i = 0; i < block.size(); ++i) {
                BranchOutcome out = evaluate(block[i], order_base + static_cast<long long>(i));
                if (out.total < kInfCost && better(out, best)) best = std::move(out);
            }
        }
        order_base += static_cast<long long>(block.size());
    }

    if (best.total >= kInfCost)
        throw std::logic_error("no viable branch found; X ∪ R should always dominate");

    SolveResult result;
    result.ds_size = best.total;
    result.witness = std::move(best.witness);
    std::sort(result.witness.begin(), result.witness.end());
    result.branch = std::move(best.branch);
    result.branches_evaluated = evaluated.load();
    result.branches_pruned = pruned.load();
    result.within_budget = result.ds_size <= inst.budget;

    if (static_cast<int>(result.witness.size()) != result.ds_size ||
        !is_dominating(g, result.witness))
        throw std::logic_error("solver produced an inconsistent witness");
    return result;
}

} // namespace

SolveResult solve_dp(const Instance& inst, const SolveOptions& opts) {
    return run_solver(inst, opts, opts.threads != 1);
}

SolveResult solve_dp_serial(const Instance& inst, const SolveOptions& opts) {
    return run_solver(inst, opts, false);
}

SolveResult solve_xp(const Instance& inst, const SolveOptions& opts) {
    return run_solver(inst, opts, opts.threads != 1);
}

} // namespace dsai
