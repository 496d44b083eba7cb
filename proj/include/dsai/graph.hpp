#pragma once

#include <span>
#include <utility>
#include <vector>

namespace dsai {

using Vertex = int;

/// Simple undirected graph on dense vertex ids 0..n-1. Adjacency lists are
/// kept sorted; duplicate edges are ignored on insertion, self-loops and
/// out-of-range ids throw. Instances are treated as immutable once built and
/// may be shared freely across threads.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(n) {}
    Graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return edge_count_; }

    std::span<const Vertex> neighbors(Vertex v) const;
    int degree(Vertex v) const;
    bool has_edge(Vertex u, Vertex v) const;

    void add_edge(Vertex u, Vertex v);

    /// All edges as (u, v) with u < v, sorted lexicographically.
    std::vector<std::pair<Vertex, Vertex>> edges() const;

    int max_degree() const;

    void check_vertex(Vertex v) const;

private:
    std::vector<std::vector<Vertex>> adj_;
    int edge_count_ = 0;
};

enum class Closure { open, closed };

/// Multi-source BFS distances; -1 marks unreachable vertices. A negative
/// depth_cap means unbounded.
std::vector<int> bfs_distances(const Graph& g, std::span<const Vertex> sources,
                               int depth_cap = -1);

/// N^i(s) (open) or N^i[s] (closed) via breadth-first layering. N^0[s] = s.
std::vector<Vertex> neighborhood(const Graph& g, std::span<const Vertex> s,
                                 int depth, Closure closure);

/// True iff all distinct pairs in x have distance >= r+1. Vertices in
/// different components count as infinitely far apart.
bool is_r_independent(const Graph& g, std::span<const Vertex> x, int r);

/// Ascending-id greedy: a vertex joins X iff it keeps X r-independent.
/// The result is always maximal (every outside vertex is within distance r).
std::vector<Vertex> greedy_maximal_r_independent(const Graph& g, int r);

bool is_dominating(const Graph& g, std::span<const Vertex> d);

/// Degeneracy by repeated minimum-degree removal.
int degeneracy(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    std::vector<Vertex> to_global; // local id -> original id
    std::vector<int> to_local;     // original id -> local id, -1 outside
};

InducedSubgraph induce(const Graph& g, std::span<const Vertex> vertices);

} // namespace dsai
