#include "dsai/instance.hpp"

#include <algorithm>
#include <stdexcept>

#include "dsai/errors.hpp"

namespace dsai {

std::vector<std::string> instance_violations(const Instance& inst) {
    std::vector<std::string> out;
    const int n = inst.graph.vertex_count();
    if (inst.radius < 1) out.push_back("radius must be >= 1, got " + std::to_string(inst.radius));
    for (Vertex v : inst.x_set)
        if (v < 0 || v >= n) {
            out.push_back("x-set vertex " + std::to_string(v) + " out of range");
            return out; // later checks would throw on bad ids
        }
    if (!std::is_sorted(inst.x_set.begin(), inst.x_set.end()) ||
        std::adjacent_find(inst.x_set.begin(), inst.x_set.end()) != inst.x_set.end())
        out.push_back("x-set must be sorted and duplicate-free");
    if (inst.radius >= 1 && !is_r_independent(inst.graph, inst.x_set, inst.radius))
        out.push_back("x-set is not " + std::to_string(inst.radius) + "-independent");
    // Maximality: every vertex outside X lies within distance r of X.
    if (n > 0) {
        auto dist = bfs_distances(inst.graph, inst.x_set, inst.radius);
        for (Vertex v = 0; v < n; ++v)
            if (dist[v] < 0) {
                out.push_back("x-set is not maximal: vertex " + std::to_string(v) +
                              " is at distance > " + std::to_string(inst.radius) + " from X");
                break;
            }
    }
    return out;
}

void validate_instance(const Instance& inst) {
    auto violations = instance_violations(inst);
    if (!violations.empty()) throw ValidationError(std::move(violations));
}

ResidualDecomposition decompose(const Instance& inst) {
    validate_instance(inst);
    const Graph& g = inst.graph;
    ResidualDecomposition d;
    d.x_order = inst.x_set;

    auto dist = bfs_distances(g, d.x_order, 2);
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (dist[v] < 0 || dist[v] > 1) d.residual.push_back(v);

    std::vector<char> in_residual(g.vertex_count(), 0);
    for (Vertex v : d.residual) in_residual[v] = 1;

    for (int i = 0; i < static_cast<int>(d.x_order.size()); ++i) {
        Vertex x[1] = {d.x_order[i]};
        d.ball.push_back(neighborhood(g, x, 1, Closure::closed));
        d.ball2.push_back(neighborhood(g, x, 2, Closure::closed));
        std::vector<Vertex> ri;
        for (Vertex v : d.ball2.back())
            if (in_residual[v]) ri.push_back(v);
        d.ball_residual.push_back(std::move(ri));
    }

    auto assert_disjoint = [&](const std::vector<std::vector<Vertex>>& balls, const char* what) {
        std::vector<int> owner(g.vertex_count(), -1);
        for (int i = 0; i < static_cast<int>(balls.size()); ++i)
            for (Vertex v : balls[i]) {
                if (owner[v] != -1)
                    throw std::logic_error(std::string(what) + " of centers " +
                                           std::to_string(d.x_order[owner[v]]) + " and " +
                                           std::to_string(d.x_order[i]) + " overlap");
                owner[v] = i;
            }
        return owner;
    };

    if (inst.radius >= 3) {
        // Closed balls are pairwise disjoint and non-adjacent.
        auto owner = assert_disjoint(d.ball, "closed balls");
        for (int i = 0; i < static_cast<int>(d.ball.size()); ++i)
            for (Vertex v : d.ball[i])
                for (Vertex w : g.neighbors(v))
                    if (owner[w] != -1 && owner[w] != i)
                        throw std::logic_error("closed balls of centers " +
                                               std::to_string(d.x_order[i]) + " and " +
                                               std::to_string(d.x_order[owner[w]]) +
                                               " are adjacent");
    }
    if (inst.radius >= 4) assert_disjoint(d.ball2, "radius-2 balls");
    return d;
}

std::optional<bool> trivial_verdict(const Instance& inst) {
    if (inst.radius < 2)
        throw UnsupportedError("trivial verdict needs radius >= 2, got " +
                               std::to_string(inst.radius));
    validate_instance(inst);
    auto dist = bfs_distances(inst.graph, inst.x_set, 1);
    int residual = 0;
    for (Vertex v = 0; v < inst.graph.vertex_count(); ++v)
        if (dist[v] < 0) ++residual;
    const int x_size = static_cast<int>(inst.x_set.size());
    if (inst.budget >= x_size + residual) return true; // X ∪ R dominates
    if (inst.budget < x_size) return false;            // ds(G) >= |X| for r >= 2
    return std::nullopt;
}

} // namespace dsai
