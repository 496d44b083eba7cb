#include "dsai/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>

#include "dsai/errors.hpp"

namespace dsai {

namespace {

// Greedy max-coverage dominating set; upper bound for the branch and bound.
DsSolution greedy_dominating(const Graph& g) {
    const int n = g.vertex_count();
    DsSolution sol;
    std::vector<char> hit(n, 0);
    int remaining = n;
    while (remaining > 0) {
        Vertex best = -1;
        int best_gain = -1;
        for (Vertex v = 0; v < n; ++v) {
            int gain = !hit[v];
            for (Vertex u : g.neighbors(v)) gain += !hit[u];
            if (gain > best_gain) {
                best_gain = gain;
                best = v;
            }
        }
        sol.witness.push_back(best);
        if (!hit[best]) {
            hit[best] = 1;
            --remaining;
        }
        for (Vertex u : g.neighbors(best))
            if (!hit[u]) {
                hit[u] = 1;
                --remaining;
            }
    }
    std::sort(sol.witness.begin(), sol.witness.end());
    sol.size = static_cast<int>(sol.witness.size());
    return sol;
}

struct DsBranchState {
    const Graph& g;
    std::vector<int> cover_count; // how many chosen vertices dominate v
    std::vector<Vertex> chosen;
    std::vector<Vertex> best;
    int best_size;

    explicit DsBranchState(const Graph& graph, int ub)
        : g(graph), cover_count(graph.vertex_count(), 0), best_size(ub) {}

    void select(Vertex v) {
        chosen.push_back(v);
        ++cover_count[v];
        for (Vertex u : g.neighbors(v)) ++cover_count[u];
    }

    void unselect(Vertex v) {
        chosen.pop_back();
        --cover_count[v];
        for (Vertex u : g.neighbors(v)) --cover_count[u];
    }

    // Packing of pairwise non-adjacent undominated closed balls; each needs
    // its own dominator.
    int lower_bound() const {
        int lb = 0;
        std::vector<char> blocked(g.vertex_count(), 0);
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (cover_count[v] > 0 || blocked[v]) continue;
            ++lb;
            blocked[v] = 1;
            for (Vertex u : g.neighbors(v)) {
                blocked[u] = 1;
                for (Vertex w : g.neighbors(u)) blocked[w] = 1;
            }
        }
        return lb;
    }

    void run() {
        if (static_cast<int>(chosen.size()) + lower_bound() >= best_size) return;
        Vertex pivot = -1;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (cover_count[v] == 0) {
                pivot = v;
                break;
            }
        if (pivot == -1) {
            best = chosen;
            best_size = static_cast<int>(chosen.size());
            return;
        }
        // Some dominator of the pivot must be in the solution.
        auto try_vertex = [&](Vertex v) {
            select(v);
            run();
            unselect(v);
        };
        try_vertex(pivot);
        for (Vertex u : g.neighbors(pivot)) try_vertex(u);
    }
};

} // namespace

DsSolution ds_exact(const Graph& g) {
    if (g.vertex_count() == 0) return {};
    DsSolution ub = greedy_dominating(g);
    DsBranchState state(g, ub.size);
    state.best = ub.witness;
    state.run();
    std::sort(state.best.begin(), state.best.end());
    return {state.best_size, state.best};
}

namespace {

struct AnnotatedSearch {
    const Graph& g;
    const std::vector<std::vector<Vertex>>& groups;
    std::vector<int> cover_count;     // domination multiplicity per vertex
    std::vector<char> is_target;      // needs domination
    std::vector<int> group_hits;      // chosen vertices per group
    std::vector<std::vector<int>> groups_of; // vertex -> group indexes
    int undominated = 0;
    int unhit_groups = 0;
    int max_groups_per_vertex = 1;
    std::vector<Vertex> chosen;
    std::vector<Vertex> result;
    bool found = false;
    int limit = 0;

    AnnotatedSearch(const AnnotatedInstance& inst)
        : g(inst.graph), groups(inst.required_groups) {
        const int n = g.vertex_count();
        cover_count.assign(n, 0);
        is_target.assign(n, 1);
        for (Vertex v : inst.exempt) {
            g.check_vertex(v);
            is_target[v] = 0;
        }
        for (Vertex v = 0; v < n; ++v) undominated += is_target[v];
        group_hits.assign(groups.size(), 0);
        unhit_groups = static_cast<int>(groups.size());
        groups_of.assign(n, {});
        for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi)
            for (Vertex v : groups[gi]) {
                g.check_vertex(v);
                groups_of[v].push_back(gi);
            }
        for (Vertex v = 0; v < n; ++v)
            max_groups_per_vertex =
                std::max(max_groups_per_vertex, static_cast<int>(groups_of[v].size()));
    }

    void select(Vertex v, int delta) {
        if (is_target[v] && cover_count[v] == 0 && delta > 0) --undominated;
        if (is_target[v] && cover_count[v] == 1 && delta < 0) ++undominated;
        cover_count[v] += delta;
        for (Vertex u : g.neighbors(v)) {
            if (is_target[u] && cover_count[u] == 0 && delta > 0) --undominated;
            if (is_target[u] && cover_count[u] == 1 && delta < 0) ++undominated;
            cover_count[u] += delta;
        }
        for (int gi : groups_of[v]) {
            if (delta > 0 && group_hits[gi]++ == 0) --unhit_groups;
            if (delta < 0 && --group_hits[gi] == 0) ++unhit_groups;
        }
    }

    bool feasible_tail(Vertex start) const {
        // Every undominated target and unhit group must still have a
        // candidate at or beyond `start`.
        for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (!is_target[v] || cover_count[v] > 0) continue;
            Vertex last = v; // N[v] is sorted, v dominates itself
            if (!g.neighbors(v).empty()) last = std::max(last, g.neighbors(v).back());
            if (last < start) return false;
        }
        for (int gi = 0; gi < static_cast<int>(groups.size()); ++gi) {
            if (group_hits[gi] > 0) continue;
            Vertex last = -1;
            for (Vertex v : groups[gi]) last = std::max(last, v);
            if (last < start) return false;
        }
        return true;
    }

    void dfs(Vertex start) {
        if (found) return;
        int remaining = limit - static_cast<int>(chosen.size());
        if (undominated == 0 && unhit_groups == 0) {
            result = chosen;
            found = true;
            return;
        }
        if (remaining == 0) return;
        if (unhit_groups > remaining * max_groups_per_vertex) return;
        if (!feasible_tail(start)) return;
        for (Vertex v = start; v < g.vertex_count(); ++v) {
            select(v, +1);
            chosen.push_back(v);
            dfs(v + 1);
            chosen.pop_back();
            select(v, -1);
            if (found) return;
        }
    }
};

} // namespace

std::optional<DsSolution> annotated_ds_exact(const AnnotatedInstance& inst) {
    for (const auto& group : inst.required_groups)
        if (group.empty()) return std::nullopt; // unrealizable group
    AnnotatedSearch search(inst);
    // Feasible upper bound: one vertex per group, every leftover target
    // dominates itself.
    int ub;
    {
        std::vector<Vertex> picks;
        for (const auto& group : inst.required_groups)
            picks.push_back(*std::min_element(group.begin(), group.end()));
        for (Vertex v : picks) search.select(v, +1);
        ub = static_cast<int>(picks.size()) + search.undominated;
        for (Vertex v : picks) search.select(v, -1);
    }
    if (inst.size_cap && *inst.size_cap < ub) ub = *inst.size_cap;
    for (int k = 0; k <= ub; ++k) {
        search.limit = k;
        search.found = false;
        search.dfs(0);
        if (search.found) return DsSolution{k, search.result};
    }
    return std::nullopt;
}

namespace {

struct AbSearch {
    const Graph& g;
    std::vector<Vertex> order;        // candidate interior vertices
    std::vector<int> cover_count;
    std::vector<char> is_target;
    std::vector<int> last_order_pos;  // per target: last candidate position able to cover it
    int undominated = 0;
    std::vector<Vertex> chosen;
    std::vector<Vertex> result;
    bool found = false;
    int limit = 0;

    void cover(Vertex v, int delta) {
        auto touch = [&](Vertex u) {
            if (is_target[u] && cover_count[u] == 0 && delta > 0) --undominated;
            if (is_target[u] && cover_count[u] == 1 && delta < 0) ++undominated;
            cover_count[u] += delta;
        };
        touch(v);
        for (Vertex u : g.neighbors(v)) touch(u);
    }

    bool feasible_tail(int start_pos) const {
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            if (is_target[v] && cover_count[v] == 0 && last_order_pos[v] < start_pos)
                return false;
        return true;
    }

    void dfs(int start_pos) {
        if (found) return;
        if (undominated == 0) {
            result = chosen;
            found = true;
            return;
        }
        if (static_cast<int>(chosen.size()) == limit) return;
        if (!feasible_tail(start_pos)) return;
        for (int pos = start_pos; pos < static_cast<int>(order.size()); ++pos) {
            Vertex v = order[pos];
            cover(v, +1);
            chosen.push_back(v);
            dfs(pos + 1);
            chosen.pop_back();
            cover(v, -1);
            if (found) return;
        }
    }

    explicit AbSearch(const Graph& graph) : g(graph) {}
};

} // namespace

std::optional<DsSolution> ab_dominator_min(const BoundariedGraph& h, std::span<const Vertex> a,
                                           std::span<const Vertex> b,
                                           std::optional<int> size_cap,
                                           std::optional<Vertex> prefer_first) {
    const Graph& g = h.graph;
    const int n = g.vertex_count();
    std::vector<char> on_boundary(n, 0);
    for (Vertex v : h.boundary) {
        g.check_vertex(v);
        on_boundary[v] = 1;
    }
    for (Vertex v : a) {
        g.check_vertex(v);
        if (!on_boundary[v])
            throw InputError("A-vertex " + std::to_string(v) + " not on the boundary");
    }
    for (Vertex v : b) {
        g.check_vertex(v);
        if (!on_boundary[v])
            throw InputError("B-vertex " + std::to_string(v) + " not on the boundary");
    }

    AbSearch search(g);
    search.cover_count.assign(n, 0);
    search.is_target.assign(n, 0);
    for (Vertex v = 0; v < n; ++v)
        if (!on_boundary[v]) search.is_target[v] = 1;
    for (Vertex v : b) search.is_target[v] = 1;
    for (Vertex v = 0; v < n; ++v) search.undominated += search.is_target[v];

    for (Vertex v = 0; v < n; ++v)
        if (!on_boundary[v] && (!prefer_first || v != *prefer_first)) search.order.push_back(v);
    if (prefer_first && *prefer_first >= 0 && *prefer_first < n && !on_boundary[*prefer_first])
        search.order.insert(search.order.begin(), *prefer_first);

    std::vector<int> pos_of(n, -1);
    for (int i = 0; i < static_cast<int>(search.order.size()); ++i) pos_of[search.order[i]] = i;
    // Last candidate position able to cover each vertex; targets that A
    // already dominates never show up as undominated.
    search.last_order_pos.assign(n, -1);
    for (Vertex v = 0; v < n; ++v) {
        int last = pos_of[v];
        for (Vertex u : g.neighbors(v)) last = std::max(last, pos_of[u]);
        search.last_order_pos[v] = last;
    }

    for (Vertex v : a) search.cover(v, +1);
    for (Vertex v = 0; v < n; ++v)
        if (search.is_target[v] && search.cover_count[v] == 0 &&
            search.last_order_pos[v] < 0)
            return std::nullopt; // some target has no possible dominator

    const int base = static_cast<int>(a.size());
    int max_extra = static_cast<int>(search.order.size());
    if (size_cap) {
        if (*size_cap < base) return std::nullopt;
        max_extra = std::min(max_extra, *size_cap - base);
    }
    for (int extra = 0; extra <= max_extra; ++extra) {
        search.limit = extra;
        search.found = false;
        search.dfs(0);
        if (search.found) {
            DsSolution sol;
            sol.witness.assign(a.begin(), a.end());
            sol.witness.insert(sol.witness.end(), search.result.begin(), search.result.end());
            std::sort(sol.witness.begin(), sol.witness.end());
            sol.size = base + extra;
            return sol;
        }
    }
    return std::nullopt;
}

std::optional<std::vector<Vertex>> colourful_ds_exact(const ColourfulInstance& inst) {
    const Graph& g = inst.graph;
    const int n = g.vertex_count();
    const int k = static_cast<int>(inst.blocks.size()) - 1;
    std::vector<int> c0_bit(n, -1);
    int c0_size = 0;
    if (!inst.blocks.empty())
        for (Vertex v : inst.blocks[0]) {
            g.check_vertex(v);
            c0_bit[v] = c0_size++;
        }
    const int words = (c0_size + 63) / 64;
    auto full = std::vector<std::uint64_t>(words, 0);
    for (int i = 0; i < c0_size; ++i) full[i / 64] |= std::uint64_t(1) << (i % 64);

    auto coverage = [&](Vertex v) {
        std::vector<std::uint64_t> bits(words, 0);
        auto set = [&](Vertex u) {
            if (c0_bit[u] >= 0) bits[c0_bit[u] / 64] |= std::uint64_t(1) << (c0_bit[u] % 64);
        };
        set(v);
        for (Vertex u : g.neighbors(v)) set(u);
        return bits;
    };

    if (k <= 0) {
        if (c0_size == 0) return std::vector<Vertex>{};
        return std::nullopt;
    }
    for (int i = 1; i <= k; ++i)
        if (inst.blocks[i].empty()) return std::nullopt;

    std::vector<std::vector<std::vector<std::uint64_t>>> cover(k + 1);
    std::vector<std::vector<std::uint64_t>> block_union(k + 2,
                                                        std::vector<std::uint64_t>(words, 0));
    for (int i = 1; i <= k; ++i) {
        cover[i].reserve(inst.blocks[i].size());
        for (Vertex v : inst.blocks[i]) {
            cover[i].push_back(coverage(v));
            for (int w = 0; w < words; ++w) block_union[i][w] |= cover[i].back()[w];
        }
    }
    // suffix unions: what blocks i..k can still cover
    std::vector<std::vector<std::uint64_t>> suffix(k + 2, std::vector<std::uint64_t>(words, 0));
    for (int i = k; i >= 1; --i)
        for (int w = 0; w < words; ++w) suffix[i][w] = suffix[i + 1][w] | block_union[i][w];

    std::vector<Vertex> picks;
    std::vector<std::uint64_t> covered(words, 0);
    std::optional<std::vector<Vertex>> found;

    auto covers_all = [&](const std::vector<std::uint64_t>& bits) {
        for (int w = 0; w < words; ++w)
            if ((bits[w] & full[w]) != full[w]) return false;
        return true;
    };

    std::function<void(int)> dfs = [&](int block) {
        if (found) return;
        if (block > k) {
            if (covers_all(covered)) found = picks;
            return;
        }
        for (int j = 0; j < static_cast<int>(inst.blocks[block].size()); ++j) {
            std::vector<std::uint64_t> next(words);
            std::vector<std::uint64_t> reach(words);
            bool ok = true;
            for (int w = 0; w < words; ++w) {
                next[w] = covered[w] | cover[block][j][w];
                reach[w] = next[w] | suffix[block + 1][w];
            }
            ok = covers_all(reach);
            if (!ok) continue;
            std::swap(covered, next);
            picks.push_back(inst.blocks[block][j]);
            dfs(block + 1);
            picks.pop_back();
            std::swap(covered, next);
            if (found) return;
        }
    };
    dfs(1);
    return found;
}

std::optional<std::vector<bool>> sat_brute(const CnfFormula& f) {
    if (f.variable_count > 24)
        throw ResourceError("sat_brute handles at most 24 variables, got " +
                            std::to_string(f.variable_count));
    for (const auto& clause : f.clauses)
        for (int lit : clause)
            if (lit == 0 || std::abs(lit) > f.variable_count)
                throw InputError("literal " + std::to_string(lit) + " out of range");
    const std::uint32_t total = std::uint32_t(1) << f.variable_count;
    for (std::uint32_t mask = 0; mask < total; ++mask) {
        bool all = true;
        for (const auto& clause : f.clauses) {
            bool sat = false;
            for (int lit : clause) {
                const int var = std::abs(lit) - 1;
                const bool value = (mask >> var) & 1;
                if ((lit > 0) == value) {
                    sat = true;
                    break;
                }
            }
            if (!sat) {
                all = false;
                break;
            }
        }
        if (all) {
            std::vector<bool> assignment(f.variable_count);
            for (int v = 0; v < f.variable_count; ++v) assignment[v] = (mask >> v) & 1;
            return assignment;
        }
    }
    return std::nullopt;
}

} // namespace dsai
