#include "dsai/kernelizer.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dsai/cost.hpp"
#include "dsai/errors.hpp"
#include "dsai/nbhd_classes.hpp"

namespace dsai {

namespace {

long long ball_core_bound(int rprime_size) {
    // (4^|R'| + 1) |R'| + 1
    const long long four_pow = 1LL << (2 * rprime_size);
    return (four_pow + 1) * rprime_size + 1;
}

std::vector<Vertex> masked_subset(const std::vector<Vertex>& base, std::uint32_t mask) {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (mask >> i & 1) out.push_back(base[i]);
    return out;
}

} // namespace

BallReplacement plan_ball_replacement(const Graph& g, const std::vector<Vertex>& x_set,
                                      Vertex center, int rprime_cap) {
    g.check_vertex(center);
    if (!std::binary_search(x_set.begin(), x_set.end(), center))
        throw InputError("center " + std::to_string(center) + " is not in the x-set");

    BallReplacement plan;
    plan.center = center;

    auto covered = bfs_distances(g, x_set, 1); // >= 0 means inside N[X]
    Vertex src[1] = {center};
    auto ball2 = neighborhood(g, src, 2, Closure::closed);
    for (Vertex v : ball2)
        if (covered[v] < 0) plan.boundary.push_back(v);

    if (static_cast<int>(plan.boundary.size()) > rprime_cap) {
        plan.skipped = true;
        return plan;
    }

    auto sub = induce(g, ball2);
    std::vector<Vertex> boundary_local;
    for (Vertex v : plan.boundary) boundary_local.push_back(sub.to_local[v]);
    std::sort(boundary_local.begin(), boundary_local.end());
    BoundariedGraph bg{sub.graph, boundary_local};
    const Vertex center_local = sub.to_local[center];

    // Union of one minimal dominator per boundary-behaviour pair. Preferring
    // the center keeps the union within its size bound: whenever a minimum
    // dominator through the center exists, it is the one recorded.
    std::vector<char> in_core(sub.graph.vertex_count(), 0);
    const std::uint32_t pairs = std::uint32_t(1) << plan.boundary.size();
    for (std::uint32_t a_mask = 0; a_mask < pairs; ++a_mask) {
        auto a = masked_subset(boundary_local, a_mask);
        for (std::uint32_t b_mask = 0; b_mask < pairs; ++b_mask) {
            auto b = masked_subset(boundary_local, b_mask);
            // |A| + |B| + 1 always suffices here: the center reaches the whole
            // interior and every boundary vertex has an interior neighbour.
            const int cap = static_cast<int>(a.size() + b.size()) + 1;
            auto sol = ab_dominator_min(bg, a, b, cap, center_local);
            if (!sol) continue;
            for (Vertex v : sol->witness) in_core[v] = 1;
        }
    }
    in_core[center_local] = 1;
    for (Vertex v : boundary_local) in_core[v] = 1;
    for (int local = 0; local < sub.graph.vertex_count(); ++local)
        if (in_core[local]) plan.core.push_back(sub.to_global[local]);

    if (static_cast<long long>(plan.core.size()) >
        ball_core_bound(static_cast<int>(plan.boundary.size())))
        throw std::logic_error("ball core exceeded its size bound at center " +
                               std::to_string(center));

    // Drop edges with neither endpoint in the core; the leftover vertices
    // become an independent set, grouped into core-twin classes.
    for (auto [u, v] : sub.graph.edges())
        if (!in_core[u] && !in_core[v])
            plan.removed_edges.emplace_back(sub.to_global[u], sub.to_global[v]);

    std::vector<Vertex> outside;
    for (int local = 0; local < sub.graph.vertex_count(); ++local)
        if (!in_core[local]) outside.push_back(sub.to_global[local]);
    auto part = partition_by_trace(g, outside, plan.core);
    plan.twin_class_count = static_cast<int>(part.classes.size());
    for (const auto& cls : part.classes)
        for (std::size_t i = 2; i < cls.members.size(); ++i)
            plan.removed_vertices.push_back(cls.members[i]);
    std::sort(plan.removed_vertices.begin(), plan.removed_vertices.end());

    // Trimmed vertices must not reach outside the ball, otherwise removal
    // would change domination beyond it.
    std::vector<char> in_ball(g.vertex_count(), 0);
    for (Vertex v : ball2) in_ball[v] = 1;
    for (Vertex v : plan.removed_vertices)
        for (Vertex u : g.neighbors(v))
            if (!in_ball[u])
                throw std::logic_error("trimmed vertex " + std::to_string(v) +
                                       " reaches outside its ball");
    return plan;
}

SurgeryResult apply_surgery(const Graph& g, std::span<const Vertex> removed_vertices,
                            std::span<const std::pair<Vertex, Vertex>> removed_edges) {
    SurgeryResult out;
    std::vector<char> removed(g.vertex_count(), 0);
    for (Vertex v : removed_vertices) {
        g.check_vertex(v);
        removed[v] = 1;
    }
    std::set<std::pair<Vertex, Vertex>> dead_edges;
    for (auto [u, v] : removed_edges) dead_edges.emplace(std::min(u, v), std::max(u, v));

    out.to_new.assign(g.vertex_count(), -1);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!removed[v]) {
            out.to_new[v] = static_cast<int>(out.to_original.size());
            out.to_original.push_back(v);
        }
    out.graph = Graph(static_cast<int>(out.to_original.size()));
    for (auto [u, v] : g.edges()) {
        if (removed[u] || removed[v]) continue;
        if (dead_edges.count({u, v})) continue;
        out.graph.add_edge(out.to_new[u], out.to_new[v]);
    }
    return out;
}

BallReplaceResult replace_ball(const Graph& g, const std::vector<Vertex>& x_set, Vertex center,
                               int rprime_cap) {
    BallReplaceResult result;
    result.plan = plan_ball_replacement(g, x_set, center, rprime_cap);
    if (result.plan.skipped) {
        result.graph = g;
        result.to_original.resize(g.vertex_count());
        for (Vertex v = 0; v < g.vertex_count(); ++v) result.to_original[v] = v;
        return result;
    }
    auto surgery = apply_surgery(g, result.plan.removed_vertices, result.plan.removed_edges);
    result.graph = std::move(surgery.graph);
    result.to_original = std::move(surgery.to_original);
    return result;
}

CharacteristicVector characteristic_vector(const BoundariedGraph& h,
                                           std::span<const Vertex> anchor, int anchor_cap) {
    CharacteristicVector chi;
    chi.anchor.assign(anchor.begin(), anchor.end());
    std::sort(chi.anchor.begin(), chi.anchor.end());
    std::vector<Vertex> boundary = h.boundary;
    std::sort(boundary.begin(), boundary.end());
    if (chi.anchor != boundary)
        throw InputError("characteristic vector anchor must equal the graph boundary");
    const int k = static_cast<int>(chi.anchor.size());
    if (k > anchor_cap)
        throw ResourceError("boundary of size " + std::to_string(k) +
                            " exceeds the characteristic-vector cap " +
                            std::to_string(anchor_cap));

    const std::uint32_t side = std::uint32_t(1) << k;
    chi.values.assign(static_cast<std::size_t>(side) * side, kInfCost);
    for (std::uint32_t a_mask = 0; a_mask < side; ++a_mask) {
        auto a = masked_subset(chi.anchor, a_mask);
        for (std::uint32_t b_mask = 0; b_mask < side; ++b_mask) {
            auto b = masked_subset(chi.anchor, b_mask);
            const int cap = static_cast<int>(a.size() + b.size()) + 1;
            auto sol = ab_dominator_min(h, a, b, cap);
            chi.values[a_mask * side + b_mask] = sol ? sol->size : kInfCost;
        }
    }
    return chi;
}

namespace {

// Shared by replace_class and kernelize: plans for one trace group plus the
// bucket selection of which balls survive.
struct GroupPlan {
    std::vector<Vertex> boundary; // R'
    std::vector<BallReplacement> plans;
    std::vector<Vertex> kept;
    std::vector<Vertex> removed;
    int buckets = 0;
};

GroupPlan plan_group(const Graph& g, const std::vector<Vertex>& x_set,
                     std::vector<Vertex> group, const KernelConfig& cfg, int residual_total) {
    GroupPlan out;
    std::sort(group.begin(), group.end());
    if (group.empty()) throw InputError("empty center group");

    out.plans.resize(group.size());
    std::exception_ptr error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.threads != 1)
#endif
    for (std::size_t i = 0; i < group.size(); ++i) {
        try {
            out.plans[i] = plan_ball_replacement(g, x_set, group[i], cfg.rprime_cap);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(dsai_kernel_error)
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    out.boundary = out.plans.front().boundary;
    for (const auto& plan : out.plans) {
        if (plan.skipped)
            throw ResourceError("group boundary exceeds the configured cap");
        if (plan.boundary != out.boundary)
            throw InputError("group centers do not share a residual trace");
    }

    // Characteristic vector of each replaced ball.
    std::vector<CharacteristicVector> chis(group.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (cfg.threads != 1)
#endif
    for (std::size_t i = 0; i < group.size(); ++i) {
        try {
        const auto& plan = out.plans[i];
        Vertex src[1] = {group[i]};
        auto ball2 = neighborhood(g, src, 2, Closure::closed);
        std::vector<char> trimmed(g.vertex_count(), 0);
        for (Vertex v : plan.removed_vertices) trimmed[v] = 1;
        std::vector<Vertex> kept_verts;
        for (Vertex v : ball2)
            if (!trimmed[v]) kept_verts.push_back(v);
        auto sub = induce(g, kept_verts);
        std::set<std::pair<Vertex, Vertex>> dead;
        for (auto [u, v] : plan.removed_edges) dead.emplace(std::min(u, v), std::max(u, v));
        Graph replaced(sub.graph.vertex_count());
        for (auto [u, v] : sub.graph.edges()) {
            auto key = std::minmax(sub.to_global[u], sub.to_global[v]);
            if (!dead.count({key.first, key.second})) replaced.add_edge(u, v);
        }
        std::vector<Vertex> boundary_local;
        for (Vertex v : plan.boundary) boundary_local.push_back(sub.to_local[v]);
        std::sort(boundary_local.begin(), boundary_local.end());
        BoundariedGraph bg{std::move(replaced), boundary_local};
        chis[i] = characteristic_vector(bg, bg.boundary, cfg.rprime_cap);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical(dsai_kernel_error)
#endif
            if (!error) error = std::current_exception();
        }
    }
    if (error) std::rethrow_exception(error);

    std::map<std::vector<int>, std::vector<Vertex>> buckets;
    for (std::size_t i = 0; i < group.size(); ++i) buckets[chis[i].values].push_back(group[i]);
    out.buckets = static_cast<int>(buckets.size());

    const int keep_count = cfg.strict_paper_keep
                               ? residual_total
                               : std::max(static_cast<int>(out.boundary.size()), 1);
    for (auto& [values, centers] : buckets) {
        std::sort(centers.begin(), centers.end());
        for (std::size_t i = 0; i < centers.size(); ++i) {
            if (static_cast<int>(i) < keep_count)
                out.kept.push_back(centers[i]);
            else
                out.removed.push_back(centers[i]);
        }
    }
    std::sort(out.kept.begin(), out.kept.end());
    std::sort(out.removed.begin(), out.removed.end());
    return out;
}

int residual_size(const Graph& g, const std::vector<Vertex>& x_set) {
    auto covered = bfs_distances(g, x_set, 1);
    int count = 0;
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (covered[v] < 0) ++count;
    return count;
}

void collect_group_edits(const Graph& g, const GroupPlan& plan,
                         std::vector<Vertex>& removed_vertices,
                         std::vector<std::pair<Vertex, Vertex>>& removed_edges) {
    for (const auto& ball_plan : plan.plans) {
        removed_vertices.insert(removed_vertices.end(), ball_plan.removed_vertices.begin(),
                                ball_plan.removed_vertices.end());
        removed_edges.insert(removed_edges.end(), ball_plan.removed_edges.begin(),
                             ball_plan.removed_edges.end());
    }
    for (Vertex center : plan.removed) {
        Vertex src[1] = {center};
        auto ball = neighborhood(g, src, 1, Closure::closed);
        removed_vertices.insert(removed_vertices.end(), ball.begin(), ball.end());
    }
}

} // namespace

ClassReplaceResult replace_class(const Graph& g, const std::vector<Vertex>& x_set,
                                 const std::vector<Vertex>& group, const KernelConfig& cfg) {
    auto plan = plan_group(g, x_set, group, cfg, residual_size(g, x_set));
    ClassReplaceResult result;
    result.offset = static_cast<int>(plan.removed.size());
    result.buckets = plan.buckets;
    result.removed_centers = plan.removed;
    result.plans = plan.plans;

    std::vector<Vertex> removed_vertices;
    std::vector<std::pair<Vertex, Vertex>> removed_edges;
    collect_group_edits(g, plan, removed_vertices, removed_edges);
    auto surgery = apply_surgery(g, removed_vertices, removed_edges);
    result.graph = std::move(surgery.graph);
    result.to_original = std::move(surgery.to_original);
    return result;
}

StripResult strip_residual_free_balls(const Instance& inst) {
    if (inst.radius < 4)
        throw UnsupportedError("residual-free ball stripping needs radius >= 4, got " +
                               std::to_string(inst.radius));
    validate_instance(inst);

    StripResult out;
    out.instance = inst;
    out.to_original.resize(inst.graph.vertex_count());
    for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) out.to_original[v] = v;

    while (true) {
        const Graph& g = out.instance.graph;
        auto covered = bfs_distances(g, out.instance.x_set, 1);
        std::vector<Vertex> removable;
        for (Vertex x : out.instance.x_set) {
            Vertex src[1] = {x};
            auto ball2 = neighborhood(g, src, 2, Closure::closed);
            bool touches_residual = false;
            for (Vertex v : ball2)
                if (covered[v] < 0) {
                    touches_residual = true;
                    break;
                }
            if (!touches_residual) removable.push_back(x);
        }
        if (removable.empty()) break;

        std::vector<Vertex> removed_vertices;
        for (Vertex x : removable) {
            Vertex src[1] = {x};
            auto ball = neighborhood(g, src, 1, Closure::closed);
            removed_vertices.insert(removed_vertices.end(), ball.begin(), ball.end());
            out.removed_centers.push_back(out.to_original[x]);
        }
        auto surgery = apply_surgery(g, removed_vertices, {});

        std::vector<Vertex> new_x;
        std::vector<char> dropped(g.vertex_count(), 0);
        for (Vertex x : removable) dropped[x] = 1;
        for (Vertex x : out.instance.x_set)
            if (!dropped[x]) new_x.push_back(surgery.to_new[x]);

        std::vector<Vertex> new_map(surgery.to_original.size());
        for (std::size_t i = 0; i < surgery.to_original.size(); ++i)
            new_map[i] = out.to_original[surgery.to_original[i]];

        out.instance.graph = std::move(surgery.graph);
        out.instance.x_set = std::move(new_x);
        out.instance.budget -= static_cast<int>(removable.size());
        out.to_original = std::move(new_map);
    }
    validate_instance(out.instance);
    return out;
}

KernelReport kernelize(const Instance& inst, const KernelConfig& cfg) {
    if (inst.radius < 3)
        throw UnsupportedError("kernelization needs radius >= 3, got " +
                               std::to_string(inst.radius));
    validate_instance(inst);

    KernelReport report;
    report.n_before = inst.graph.vertex_count();
    report.p_before = inst.budget;

    Instance work = inst;
    std::vector<Vertex> work_to_original(inst.graph.vertex_count());
    for (Vertex v = 0; v < inst.graph.vertex_count(); ++v) work_to_original[v] = v;
    if (inst.radius >= 4) {
        auto strip = strip_residual_free_balls(inst);
        work = std::move(strip.instance);
        work_to_original = std::move(strip.to_original);
        report.stripped_centers = std::move(strip.removed_centers);
    }

    auto decomp = decompose(work);
    report.tau = cfg.tau > 0 ? cfg.tau : std::max(1, degeneracy(work.graph));

    std::map<std::vector<Vertex>, std::vector<Vertex>> small_groups;
    for (std::size_t i = 0; i < decomp.x_order.size(); ++i) {
        if (static_cast<int>(decomp.ball_residual[i].size()) > 2 * report.tau)
            report.large_balls.push_back(work_to_original[decomp.x_order[i]]);
        else
            small_groups[decomp.ball_residual[i]].push_back(decomp.x_order[i]);
    }

    const int r_total = static_cast<int>(decomp.residual.size());
    std::vector<Vertex> removed_vertices;
    std::vector<std::pair<Vertex, Vertex>> removed_edges;
    int class_offset = 0;
    for (const auto& [trace, centers] : small_groups) {
        GroupStats stats;
        for (Vertex v : trace) stats.trace.push_back(work_to_original[v]);
        stats.ball_count = static_cast<int>(centers.size());
        if (static_cast<int>(trace.size()) > cfg.rprime_cap) {
            stats.skipped = true;
            stats.kept = stats.ball_count;
            report.groups.push_back(std::move(stats));
            continue;
        }
        auto plan = plan_group(work.graph, work.x_set, centers, cfg, r_total);
        stats.kept = static_cast<int>(plan.kept.size());
        stats.removed = static_cast<int>(plan.removed.size());
        stats.offset = stats.removed;
        class_offset += stats.removed;
        collect_group_edits(work.graph, plan, removed_vertices, removed_edges);
        report.groups.push_back(std::move(stats));
    }

    auto surgery = apply_surgery(work.graph, removed_vertices, removed_edges);
    std::vector<char> gone(work.graph.vertex_count(), 0);
    for (Vertex v : removed_vertices) gone[v] = 1;
    std::vector<Vertex> new_x;
    for (Vertex x : work.x_set)
        if (!gone[x]) new_x.push_back(surgery.to_new[x]);

    report.reduced.graph = std::move(surgery.graph);
    report.reduced.x_set = std::move(new_x);
    report.reduced.radius = inst.radius;
    report.reduced.budget = work.budget - class_offset;
    report.offset = inst.budget - report.reduced.budget;
    for (Vertex v : surgery.to_original) report.vertex_map.push_back(work_to_original[v]);
    validate_instance(report.reduced);

    auto verdict = trivial_verdict(report.reduced);
    if (verdict.has_value() && *verdict) {
        report.verdict = "yes";
        // Canonical positive instance: one vertex dominating itself.
        Instance canonical;
        canonical.graph = Graph(1);
        canonical.x_set = {0};
        canonical.radius = inst.radius;
        canonical.budget = 1;
        report.reduced = std::move(canonical);
        report.vertex_map.clear();
    } else if (verdict.has_value()) {
        report.verdict = "no";
    } else {
        report.verdict = "undecided";
    }
    report.n_after = report.reduced.graph.vertex_count();
    report.p_after = report.reduced.budget;
    return report;
}

nlohmann::json to_json(const KernelReport& report) {
    auto ids = [](const std::vector<Vertex>& vs) {
        std::vector<int> out;
        out.reserve(vs.size());
        for (Vertex v : vs) out.push_back(v + 1);
        return out;
    };
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : report.groups)
        groups.push_back({{"trace", ids(g.trace)},
                          {"balls", g.ball_count},
                          {"kept", g.kept},
                          {"removed", g.removed},
                          {"offset", g.offset},
                          {"skipped", g.skipped}});
    return nlohmann::json{{"offset", report.offset},
                          {"tau", report.tau},
                          {"verdict", report.verdict},
                          {"large_balls", ids(report.large_balls)},
                          {"groups", groups},
                          {"stripped_centers", ids(report.stripped_centers)},
                          {"vertex_map", ids(report.vertex_map)},
                          {"n_before", report.n_before},
                          {"n_after", report.n_after},
                          {"p_before", report.p_before},
                          {"p_after", report.p_after}};
}

} // namespace dsai
