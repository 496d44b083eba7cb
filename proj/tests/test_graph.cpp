#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dsai/errors.hpp"
#include "dsai/graph.hpp"
#include "dsai/instance.hpp"
#include "dsai/io.hpp"
#include "support/brute.hpp"

using namespace dsai;
using testsupport::path_graph;
using testsupport::star_graph;

TEST_CASE("edge insertion keeps the graph simple") {
    Graph g(3);
    g.add_edge(0, 1);
    g.add_edge(1, 0); // duplicate, ignored
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge(1, 0));
    CHECK_THROWS_AS(g.add_edge(2, 2), InputError);
    CHECK_THROWS_AS(g.add_edge(0, 3), InputError);
}

TEST_CASE("closed neighborhood of a star middle") {
    Graph g = path_graph(3);
    Vertex s[1] = {1};
    CHECK(neighborhood(g, s, 1, Closure::closed) == std::vector<Vertex>{0, 1, 2});
}

TEST_CASE("depth zero closed neighborhood is the set itself") {
    Graph g = path_graph(4);
    Vertex s[2] = {0, 2};
    CHECK(neighborhood(g, s, 0, Closure::closed) == std::vector<Vertex>{0, 2});
    CHECK(neighborhood(g, s, 0, Closure::open).empty());
}

TEST_CASE("open depth-2 neighborhood on a path of five") {
    Graph g = path_graph(5);
    Vertex s[1] = {0};
    CHECK(neighborhood(g, s, 2, Closure::open) == std::vector<Vertex>{1, 2});
}

TEST_CASE("neighborhood rejects out-of-range sources") {
    Graph g = path_graph(3);
    Vertex s[1] = {7};
    CHECK_THROWS_AS(neighborhood(g, s, 1, Closure::closed), InputError);
}

TEST_CASE("r-independence distances") {
    Graph g = path_graph(4);
    std::vector<Vertex> single{2};
    CHECK(is_r_independent(g, single, 5));
    std::vector<Vertex> ends{0, 3}; // distance 3
    CHECK(is_r_independent(g, ends, 2));
    CHECK_FALSE(is_r_independent(g, ends, 3));

    Graph two_parts(4);
    two_parts.add_edge(0, 1);
    two_parts.add_edge(2, 3);
    std::vector<Vertex> far{0, 2}; // different components
    CHECK(is_r_independent(two_parts, far, 100));
}

TEST_CASE("greedy maximal r-independent set") {
    Graph edgeless(5);
    CHECK(greedy_maximal_r_independent(edgeless, 3) == std::vector<Vertex>{0, 1, 2, 3, 4});

    CHECK(greedy_maximal_r_independent(path_graph(4), 2) == std::vector<Vertex>{0, 3});
    CHECK(greedy_maximal_r_independent(star_graph(3), 2) == std::vector<Vertex>{0});
}

TEST_CASE("greedy output is r-independent and maximal on random graphs") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        for (int r = 2; r <= 4; ++r) {
            Graph g = testsupport::random_graph(12, 0.2, seed);
            auto x = greedy_maximal_r_independent(g, r);
            CHECK(is_r_independent(g, x, r));
            auto dist = bfs_distances(g, x, r);
            for (Vertex v = 0; v < g.vertex_count(); ++v) CHECK(dist[v] >= 0);
        }
    }
}

TEST_CASE("domination check") {
    Graph g = path_graph(4);
    std::vector<Vertex> all{0, 1, 2, 3};
    CHECK(is_dominating(g, all));
    std::vector<Vertex> first{0};
    CHECK_FALSE(is_dominating(g, first));
    std::vector<Vertex> center{0};
    CHECK(is_dominating(star_graph(3), center));
}

TEST_CASE("degeneracy by min-degree removal") {
    CHECK(degeneracy(path_graph(5)) == 1);
    CHECK(degeneracy(star_graph(6)) == 1);
    CHECK(degeneracy(testsupport::cycle_graph(5)) == 2);
    Graph k4(4);
    for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    CHECK(degeneracy(k4) == 3);
    CHECK(degeneracy(Graph(3)) == 0);
}

TEST_CASE("instance validation catches broken witnesses") {
    Instance inst;
    inst.graph = path_graph(4);
    inst.x_set = {0, 2}; // distance 2 < 3
    inst.radius = 2;
    auto violations = instance_violations(inst);
    REQUIRE_FALSE(violations.empty());
    CHECK_THROWS_AS(validate_instance(inst), ValidationError);

    inst.x_set = {0}; // vertex 3 at distance 3 > 2
    CHECK_FALSE(instance_violations(inst).empty());

    inst.x_set = {0, 3};
    CHECK(instance_violations(inst).empty());
}

TEST_CASE("decompose splits the vertex set exactly") {
    // Path x - a - rho with X = {x} at radius 3.
    Instance inst{path_graph(3), {0}, 3, 1};
    auto d = decompose(inst);
    CHECK(d.residual == std::vector<Vertex>{2});
    CHECK(d.ball.at(0) == std::vector<Vertex>{0, 1});
    CHECK(d.ball2.at(0) == std::vector<Vertex>{0, 1, 2});
    CHECK(d.ball_residual.at(0) == std::vector<Vertex>{2});

    Instance p4{path_graph(4), {0, 3}, 2, 2};
    CHECK(decompose(p4).residual.empty());

    Instance star{star_graph(5), {0}, 2, 1};
    CHECK(decompose(star).residual.empty());
}

TEST_CASE("decompose partition property on random instances") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Graph g = testsupport::random_graph(14, 0.18, seed);
        Instance inst{g, greedy_maximal_r_independent(g, 3), 3, 0};
        auto d = decompose(inst);
        // X, N(X), R partition V.
        std::vector<int> tag(g.vertex_count(), 0);
        for (Vertex v : inst.x_set) tag[v] += 1;
        for (std::size_t i = 0; i < d.ball.size(); ++i)
            for (Vertex v : d.ball[i])
                if (v != d.x_order[i]) tag[v] += 2;
        for (Vertex v : d.residual) tag[v] += 4;
        for (Vertex v = 0; v < g.vertex_count(); ++v)
            CHECK((tag[v] == 1 || tag[v] == 2 || tag[v] == 4));

        // X ∪ R dominates.
        auto both = inst.x_set;
        both.insert(both.end(), d.residual.begin(), d.residual.end());
        CHECK(is_dominating(g, both));
    }
}

TEST_CASE("trivial verdict band") {
    // Four disjoint pendant edges plus one residual vertex hanging off the first.
    Graph g(9);
    for (int i = 0; i < 4; ++i) g.add_edge(2 * i, 2 * i + 1);
    g.add_edge(1, 8); // rho
    Instance inst{g, {0, 2, 4, 6}, 2, 0};

    inst.budget = 5;
    CHECK(trivial_verdict(inst) == true);
    inst.budget = 3;
    CHECK(trivial_verdict(inst) == false);
    inst.budget = 4;
    CHECK_FALSE(trivial_verdict(inst).has_value());

    inst.radius = 1;
    CHECK_THROWS_AS(trivial_verdict(inst), UnsupportedError);
}

TEST_CASE("instance file round trip") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Graph g = testsupport::random_graph(11, 0.25, seed);
        Instance inst{g, greedy_maximal_r_independent(g, 2), 2, 4};
        std::stringstream buffer;
        write_instance(buffer, inst);
        Instance back = read_instance(buffer);
        CHECK(back.graph.edges() == inst.graph.edges());
        CHECK(back.x_set == inst.x_set);
        CHECK(back.radius == inst.radius);
        CHECK(back.budget == inst.budget);
    }
}

TEST_CASE("instance parser diagnostics") {
    auto parse = [](const std::string& text) {
        std::stringstream in(text);
        return read_instance(in);
    };
    CHECK_THROWS_AS(parse("e 1 2\n"), InputError);                       // no header
    CHECK_THROWS_AS(parse("p dsai 2 1 2 1\ne 1 3\n"), InputError);       // id range
    CHECK_THROWS_AS(parse("p dsai 2 2 2 1\ne 1 2\ne 2 1\n"), InputError); // duplicate
    CHECK_THROWS_AS(parse("p dsai 2 2 2 1\ne 1 2\n"), InputError);       // count mismatch
    CHECK_THROWS_AS(parse("p dsai 2 0 2 1\nq 1\n"), InputError);         // unknown line

    Instance ok = parse("# comment\np dsai 3 2 2 1\ne 1 2\ne 2 3 # trailing\nx 1\n");
    CHECK(ok.graph.vertex_count() == 3);
    CHECK(ok.x_set == std::vector<Vertex>{0});
}

TEST_CASE("dimacs cnf parsing") {
    auto parse = [](const std::string& text) {
        std::stringstream in(text);
        return read_dimacs_cnf(in);
    };
    CnfFormula f = parse("c comment\np cnf 3 2\n1 -2 3 0\n-1 2 0\n");
    CHECK(f.variable_count == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0] == std::vector<int>{1, -2, 3});

    CHECK_THROWS_AS(parse("1 2 0\n"), InputError);              // missing header
    CHECK_THROWS_AS(parse("p cnf 2 1\n3 0\n"), InputError);     // literal range
    CHECK_THROWS_AS(parse("p cnf 2 2\n1 0\n"), InputError);     // clause count

    std::stringstream out;
    write_dimacs_cnf(out, f);
    auto back = read_dimacs_cnf(out);
    CHECK(back.clauses == f.clauses);
    CHECK(back.variable_count == f.variable_count);
}

TEST_CASE("colourful file round trip with default block") {
    ColourfulInstance c;
    c.graph = path_graph(4);
    c.blocks = {{0, 3}, {1}, {2}};
    std::stringstream buffer;
    write_colourful(buffer, c);
    auto back = read_colourful(buffer);
    CHECK(back.blocks == c.blocks);
    CHECK(back.graph.edges() == c.graph.edges());
}
