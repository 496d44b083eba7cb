#include "dsai/generators.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <stdexcept>

#include "dsai/errors.hpp"

namespace dsai {

namespace {

void check_literals(const CnfFormula& f) {
    for (const auto& clause : f.clauses)
        for (int lit : clause)
            if (lit == 0 || std::abs(lit) > f.variable_count)
                throw InputError("literal " + std::to_string(lit) + " out of range");
}

struct EdgeBuilder {
    int next_id = 0;
    std::set<std::pair<Vertex, Vertex>> edges;

    Vertex fresh() { return next_id++; }

    void edge(Vertex u, Vertex v) {
        if (u == v) throw std::logic_error("generator produced a self-loop");
        edges.emplace(std::min(u, v), std::max(u, v));
    }

    Graph build() const {
        Graph g(next_id);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }
};

// Variable triangles plus clause vertices; shared by both SAT reductions.
void build_variable_clause_part(EdgeBuilder& b, GadgetMap& map, const CnfFormula& f) {
    for (int i = 0; i < f.variable_count; ++i) {
        GadgetMap::VariableGadget vg{b.fresh(), b.fresh(), b.fresh()};
        b.edge(vg.var, vg.pos);
        b.edge(vg.var, vg.neg);
        b.edge(vg.pos, vg.neg);
        map.variable_vertices.push_back(vg);
    }
    for (const auto& clause : f.clauses) {
        Vertex c = b.fresh();
        map.clause_vertices.push_back(c);
        for (int lit : clause) {
            const auto& vg = map.variable_vertices[std::abs(lit) - 1];
            b.edge(c, lit > 0 ? vg.pos : vg.neg); // duplicates collapse
        }
    }
}

Instance finish_sat_instance(const EdgeBuilder& b, const GadgetMap& map) {
    Instance inst;
    inst.graph = b.build();
    for (const auto& vg : map.variable_vertices) inst.x_set.push_back(vg.var);
    for (const auto& tg : map.tree_vertices) inst.x_set.push_back(tg.s);
    if (map.tree_vertices.empty()) inst.x_set.push_back(map.y[0]);
    std::sort(inst.x_set.begin(), inst.x_set.end());
    inst.radius = 2;
    inst.budget = static_cast<int>(inst.x_set.size());
    validate_instance(inst);
    return inst;
}

} // namespace

std::pair<Instance, GadgetMap> from_3sat(const CnfFormula& f) {
    check_literals(f);
    for (const auto& clause : f.clauses) {
        if (clause.empty()) throw InputError("empty clause has no gadget");
        if (clause.size() > 3) throw InputError("clauses must have at most 3 literals");
    }
    EdgeBuilder b;
    GadgetMap map;
    build_variable_clause_part(b, map, f);
    Vertex y1 = b.fresh(), y2 = b.fresh(), y3 = b.fresh();
    map.y = {y1, y2, y3};
    for (Vertex c : map.clause_vertices) b.edge(y1, c);
    b.edge(y1, y2);
    b.edge(y2, y3);
    return {finish_sat_instance(b, map), map};
}

namespace {

// Pairs, with a trailing triple when the count is odd; a single item stays
// alone (degenerate one-child gadget).
std::vector<std::vector<int>> pair_up(int count) {
    std::vector<std::vector<int>> groups;
    if (count == 1) return {{0}};
    int i = 0;
    while (count - i > 3) {
        groups.push_back({i, i + 1});
        i += 2;
    }
    if (count - i == 3)
        groups.push_back({i, i + 1, i + 2});
    else if (count - i == 2)
        groups.push_back({i, i + 1});
    return groups;
}

} // namespace

std::pair<Instance, GadgetMap> from_34sat(const CnfFormula& f) {
    check_literals(f);
    std::vector<int> occurrences(f.variable_count, 0);
    for (const auto& clause : f.clauses) {
        if (clause.size() != 3) throw InputError("clauses must have exactly 3 literals");
        std::set<int> vars;
        for (int lit : clause) vars.insert(std::abs(lit));
        for (int var : vars)
            if (++occurrences[var - 1] > 4)
                throw InputError("variable " + std::to_string(var) +
                                 " occurs in more than 4 clauses");
    }

    EdgeBuilder b;
    GadgetMap map;
    build_variable_clause_part(b, map, f);

    if (f.clauses.empty()) {
        // No clause level; keep just the forcing tail.
        Vertex y1 = b.fresh(), y2 = b.fresh(), y3 = b.fresh();
        map.y = {y1, y2, y3};
        b.edge(y1, y2);
        b.edge(y2, y3);
        auto inst = finish_sat_instance(b, map);
        if (inst.graph.max_degree() > 6) throw std::logic_error("degree bound exceeded");
        return {inst, map};
    }

    // First level: clause vertices attach directly to their group hub.
    std::vector<Vertex> level;
    for (const auto& group : pair_up(static_cast<int>(map.clause_vertices.size()))) {
        GadgetMap::TreeGadget tg;
        tg.s = b.fresh();
        tg.r = b.fresh();
        for (int idx : group) b.edge(map.clause_vertices[idx], tg.s);
        b.edge(tg.s, tg.r);
        level.push_back(tg.r);
        map.tree_vertices.push_back(std::move(tg));
    }

    // Tree levels: each group's members hang off the hub through a-vertices.
    while (level.size() > 1) {
        std::vector<Vertex> next;
        for (const auto& group : pair_up(static_cast<int>(level.size()))) {
            GadgetMap::TreeGadget tg;
            tg.s = b.fresh();
            tg.r = b.fresh();
            for (int idx : group) {
                Vertex a = b.fresh();
                tg.a.push_back(a);
                b.edge(level[idx], a);
                b.edge(a, tg.s);
            }
            b.edge(tg.s, tg.r);
            next.push_back(tg.r);
            map.tree_vertices.push_back(std::move(tg));
        }
        level = std::move(next);
    }

    Vertex y3 = b.fresh();
    b.edge(y3, level.front());
    map.y = {map.tree_vertices.back().s, map.tree_vertices.back().r, y3};

    auto inst = finish_sat_instance(b, map);
    if (inst.graph.max_degree() > 6)
        throw std::logic_error("degree bound exceeded: " +
                               std::to_string(inst.graph.max_degree()));
    return {inst, map};
}

std::pair<Instance, GadgetMap> from_colourful(const ColourfulInstance& c, int radius) {
    const int k = static_cast<int>(c.blocks.size()) - 1;
    if (k < 1) throw InputError("colourful construction needs k >= 1 blocks");
    if (radius < 2) throw InputError("colourful construction needs radius >= 2");
    const int n0 = c.graph.vertex_count();
    std::vector<int> block_of(n0, -1);
    for (int i = 0; i <= k; ++i)
        for (Vertex v : c.blocks[i]) {
            c.graph.check_vertex(v);
            if (block_of[v] != -1) throw InputError("blocks are not disjoint");
            block_of[v] = i;
        }
    for (Vertex v = 0; v < n0; ++v)
        if (block_of[v] == -1) throw InputError("blocks do not cover every vertex");
    for (int i = 1; i <= k; ++i)
        if (c.blocks[i].empty())
            throw InputError("block " + std::to_string(i) + " is empty");

    EdgeBuilder b;
    b.next_id = n0;
    for (auto [u, v] : c.graph.edges()) b.edge(u, v);
    GadgetMap map;
    std::vector<Vertex> attach(k + 1, -1);
    for (int i = 1; i <= k; ++i) {
        for (std::size_t p = 0; p < c.blocks[i].size(); ++p)
            for (std::size_t q = p + 1; q < c.blocks[i].size(); ++q)
                b.edge(c.blocks[i][p], c.blocks[i][q]); // clique-complete the block
        attach[i] = b.fresh();
        for (Vertex v : c.blocks[i]) b.edge(attach[i], v);
    }
    Vertex apex = b.fresh();
    for (Vertex v = 0; v < n0; ++v) b.edge(apex, v);
    map.apex_vertices.push_back(apex);
    for (int i = 1; i <= k; ++i) map.apex_vertices.push_back(attach[i]);

    Instance inst;
    inst.graph = b.build();
    inst.x_set = {apex};
    inst.radius = radius;
    inst.budget = k;
    validate_instance(inst);
    return {inst, map};
}

ColourfulInstance redblue_to_colourful(const Graph& g, const std::vector<Vertex>& red,
                                       const std::vector<Vertex>& blue, int k) {
    if (k < 1) throw InputError("need k >= 1 blue copies");
    std::vector<int> side(g.vertex_count(), -1); // 0 = red, 1 = blue
    for (Vertex v : red) {
        g.check_vertex(v);
        if (side[v] != -1) throw InputError("red and blue sets overlap");
        side[v] = 0;
    }
    for (Vertex v : blue) {
        g.check_vertex(v);
        if (side[v] != -1) throw InputError("red and blue sets overlap");
        side[v] = 1;
    }
    for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (side[v] == -1) throw InputError("red and blue must partition the vertices");

    std::vector<Vertex> red_sorted = red;
    std::sort(red_sorted.begin(), red_sorted.end());
    std::vector<Vertex> blue_sorted = blue;
    std::sort(blue_sorted.begin(), blue_sorted.end());
    std::vector<int> red_id(g.vertex_count(), -1);
    for (std::size_t i = 0; i < red_sorted.size(); ++i) red_id[red_sorted[i]] = static_cast<int>(i);

    const int nr = static_cast<int>(red_sorted.size());
    const int nb = static_cast<int>(blue_sorted.size());
    ColourfulInstance out;
    out.graph = Graph(nr + k * nb);
    out.blocks.assign(k + 1, {});
    for (int i = 0; i < nr; ++i) out.blocks[0].push_back(i);

    for (auto [u, v] : g.edges())
        if (side[u] == 0 && side[v] == 0) out.graph.add_edge(red_id[u], red_id[v]);

    for (int copy = 0; copy < k; ++copy) {
        for (int j = 0; j < nb; ++j) {
            Vertex b = blue_sorted[j];
            Vertex id = nr + copy * nb + j;
            out.blocks[copy + 1].push_back(id);
            for (Vertex u : g.neighbors(b))
                if (side[u] == 0) out.graph.add_edge(id, red_id[u]);
        }
    }
    return out;
}

std::pair<Instance, GadgetMap> apex_from_planar_3sat(const CnfFormula& f) {
    auto [inst, map] = from_3sat(f);
    map.apex = true; // planarity of the source formula is the caller's claim
    return {std::move(inst), std::move(map)};
}

namespace {

double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Graph random_graph(const RandomConfig& cfg, std::mt19937_64& rng) {
    Graph g(cfg.n);
    switch (cfg.model) {
    case RandomModel::gnp:
        for (Vertex u = 0; u < cfg.n; ++u)
            for (Vertex v = u + 1; v < cfg.n; ++v)
                if (unit_uniform(rng) < cfg.edge_prob) g.add_edge(u, v);
        break;
    case RandomModel::planar: {
        // Random stacked triangulation (maximal planar), then sparsify.
        std::vector<std::pair<Vertex, Vertex>> edges;
        if (cfg.n >= 2) edges.emplace_back(0, 1);
        if (cfg.n >= 3) {
            edges.emplace_back(0, 2);
            edges.emplace_back(1, 2);
            std::vector<std::array<Vertex, 3>> faces{{0, 1, 2}};
            for (Vertex v = 3; v < cfg.n; ++v) {
                auto face = faces[rng() % faces.size()];
                for (Vertex u : face) edges.emplace_back(u, v);
                faces.push_back({face[0], face[1], v});
                faces.push_back({face[0], face[2], v});
                faces.push_back({face[1], face[2], v});
            }
        }
        for (auto [u, v] : edges)
            if (unit_uniform(rng) < cfg.keep_prob) g.add_edge(u, v);
        break;
    }
    case RandomModel::max_degree: {
        std::vector<int> deg(cfg.n, 0);
        const long long attempts = 2LL * cfg.n * std::max(1, cfg.degree_bound);
        for (long long i = 0; i < attempts && cfg.n >= 2; ++i) {
            Vertex u = static_cast<Vertex>(rng() % cfg.n);
            Vertex v = static_cast<Vertex>(rng() % cfg.n);
            if (u == v || deg[u] >= cfg.degree_bound || deg[v] >= cfg.degree_bound) continue;
            if (g.has_edge(u, v)) continue;
            g.add_edge(u, v);
            ++deg[u];
            ++deg[v];
        }
        break;
    }
    }
    return g;
}

} // namespace

Instance random_instance(const RandomConfig& cfg) {
    if (cfg.n < 1) throw InputError("need at least one vertex");
    if (cfg.radius < 1) throw InputError("radius must be >= 1");
    std::mt19937_64 rng(cfg.seed);
    Instance inst;
    inst.graph = random_graph(cfg, rng);
    inst.x_set = greedy_maximal_r_independent(inst.graph, cfg.radius);
    inst.radius = cfg.radius;
    if (cfg.n <= cfg.oracle_cutoff) {
        inst.budget = ds_exact(inst.graph).size;
    } else {
        auto covered = bfs_distances(inst.graph, inst.x_set, 1);
        int residual = 0;
        for (Vertex v = 0; v < cfg.n; ++v)
            if (covered[v] < 0) ++residual;
        inst.budget = static_cast<int>(inst.x_set.size()) + (residual + 1) / 2;
    }
    return inst;
}

nlohmann::json to_json(const GadgetMap& map, const std::string& kind) {
    auto id = [](Vertex v) { return v + 1; };
    nlohmann::json variables = nlohmann::json::array();
    for (const auto& vg : map.variable_vertices)
        variables.push_back({id(vg.var), id(vg.pos), id(vg.neg)});
    nlohmann::json clauses = nlohmann::json::array();
    for (Vertex c : map.clause_vertices) clauses.push_back(id(c));
    nlohmann::json tree = nlohmann::json::array();
    for (const auto& tg : map.tree_vertices) {
        nlohmann::json a = nlohmann::json::array();
        for (Vertex v : tg.a) a.push_back(id(v));
        tree.push_back({{"s", id(tg.s)}, {"r", id(tg.r)}, {"a", a}});
    }
    nlohmann::json apex = nlohmann::json::array();
    for (Vertex v : map.apex_vertices) apex.push_back(id(v));
    nlohmann::json y = nlohmann::json::array();
    for (Vertex v : map.y)
        y.push_back(v >= 0 ? id(v) : 0);
    return nlohmann::json{{"kind", kind},         {"apex", map.apex}, {"variables", variables},
                          {"clauses", clauses},   {"tree", tree},     {"y", y},
                          {"apex_vertices", apex}};
}

} // namespace dsai
