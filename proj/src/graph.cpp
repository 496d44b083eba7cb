#include "dsai/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "dsai/errors.hpp"

namespace dsai {

ValidationError::ValidationError(std::vector<std::string> v)
    : std::runtime_error(v.empty() ? "invalid instance"
                                   : "invalid instance: " + v.front() +
                                         (v.size() > 1 ? " (+" + std::to_string(v.size() - 1) + " more)" : "")),
      violations(std::move(v)) {}

Graph::Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) : adj_(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= vertex_count())
        throw InputError("vertex id " + std::to_string(v) + " out of range [0, " +
                         std::to_string(vertex_count()) + ")");
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
    check_vertex(v);
    return adj_[v];
}

int Graph::degree(Vertex v) const {
    check_vertex(v);
    return static_cast<int>(adj_[v].size());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InputError("self-loop at vertex " + std::to_string(u));
    auto insert_sorted = [](std::vector<Vertex>& list, Vertex w) {
        auto it = std::lower_bound(list.begin(), list.end(), w);
        if (it != list.end() && *it == w) return false;
        list.insert(it, w);
        return true;
    };
    if (insert_sorted(adj_[u], v)) {
        insert_sorted(adj_[v], u);
        ++edge_count_;
    }
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
    std::vector<std::pair<Vertex, Vertex>> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u)
        for (Vertex v : adj_[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

int Graph::max_degree() const {
    int d = 0;
    for (const auto& list : adj_) d = std::max(d, static_cast<int>(list.size()));
    return d;
}

std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources, int depth_cap) {
    std::vector<int> dist(g.vertex_count(), -1);
    std::deque<Vertex> queue;
    for (Vertex s : sources) {
        g.check_vertex(s);
        if (dist[s] != 0) {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while (!queue.empty()) {
        Vertex u = queue.front();
        queue.pop_front();
        if (depth_cap >= 0 && dist[u] >= depth_cap) continue;
        for (Vertex v : g.neighbors(u)) {
            if (dist[v] == -1) {
                dist[v] = dist[u] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<Vertex> neighborhood(const Graph& g, std::span<const Vertex> s, int depth,
                                 Closure closure) {
    if (depth < 0) throw InputError("neighborhood depth must be nonnegative");
    auto dist = bfs_distances(g, s, depth);
    std::vector<Vertex> out;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (dist[v] < 0) continue;
        if (closure == Closure::open && dist[v] == 0) continue;
        out.push_back(v);
    }
    return out;
}

bool is_r_independent(const Graph& g, std::span<const Vertex> x, int r) {
    for (Vertex v : x) g.check_vertex(v);
    // BFS from each member truncated at depth r; reaching another member
    // means some pair is at distance <= r.
    std::vector<char> in_x(g.vertex_count(), 0);
    for (Vertex v : x) in_x[v] = 1;
    for (Vertex v : x) {
        Vertex src[1] = {v};
        auto dist = bfs_distances(g, src, r);
        for (Vertex u = 0; u < g.vertex_count(); ++u)
            if (dist[u] > 0 && in_x[u]) return false;
    }
    return true;
}

std::vector<Vertex> greedy_maximal_r_independent(const Graph& g, int r) {
    const int n = g.vertex_count();
    std::vector<Vertex> x;
    // dist_to_x[v] = min distance to the chosen set, capped at r+1.
    std::vector<int> dist_to_x(n, r + 1);
    for (Vertex v = 0; v < n; ++v) {
        if (dist_to_x[v] <= r) continue;
        x.push_back(v);
        // Truncated BFS from v, improving the cap.
        std::deque<Vertex> queue{v};
        dist_to_x[v] = 0;
        while (!queue.empty()) {
            Vertex u = queue.front();
            queue.pop_front();
            if (dist_to_x[u] >= r) continue;
            for (Vertex w : g.neighbors(u)) {
                if (dist_to_x[w] > dist_to_x[u] + 1) {
                    dist_to_x[w] = dist_to_x[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    return x;
}

bool is_dominating(const Graph& g, std::span<const Vertex> d) {
    std::vector<char> hit(g.vertex_count(), 0);
    for (Vertex v : d) {
        g.check_vertex(v);
        hit[v] = 1;
        for (Vertex u : g.neighbors(v)) hit[u] = 1;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (!hit[v]) return false;
    return true;
}

int degeneracy(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<int> deg(n);
    int max_deg = 0;
    for (Vertex v = 0; v < n; ++v) {
        deg[v] = g.degree(v);
        max_deg = std::max(max_deg, deg[v]);
    }
    std::vector<std::vector<Vertex>> bucket(max_deg + 1);
    for (Vertex v = 0; v < n; ++v) bucket[deg[v]].push_back(v);
    std::vector<char> done(n, 0);
    int result = 0;
    for (int processed = 0, cur = 0; processed < n;) {
        while (cur <= max_deg && bucket[cur].empty()) ++cur;
        if (cur > max_deg) break;
        Vertex v = bucket[cur].back();
        bucket[cur].pop_back();
        if (done[v] || deg[v] != cur) continue; // stale entry
        done[v] = 1;
        ++processed;
        result = std::max(result, cur);
        for (Vertex u : g.neighbors(v)) {
            if (!done[u]) {
                bucket[--deg[u]].push_back(u);
                cur = std::min(cur, deg[u]);
            }
        }
    }
    return result;
}

InducedSubgraph induce(const Graph& g, std::span<const Vertex> vertices) {
    InducedSubgraph sub;
    sub.to_global.assign(vertices.begin(), vertices.end());
    std::sort(sub.to_global.begin(), sub.to_global.end());
    sub.to_global.erase(std::unique(sub.to_global.begin(), sub.to_global.end()),
                        sub.to_global.end());
    sub.to_local.assign(g.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(sub.to_global.size()); ++i) {
        g.check_vertex(sub.to_global[i]);
        sub.to_local[sub.to_global[i]] = i;
    }
    sub.graph = Graph(static_cast<int>(sub.to_global.size()));
    for (int i = 0; i < static_cast<int>(sub.to_global.size()); ++i)
        for (Vertex w : g.neighbors(sub.to_global[i]))
            if (sub.to_local[w] > i) sub.graph.add_edge(i, sub.to_local[w]);
    return sub;
}

} // namespace dsai
