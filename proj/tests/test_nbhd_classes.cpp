#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "dsai/errors.hpp"
#include "dsai/nbhd_classes.hpp"
#include "support/brute.hpp"

using namespace dsai;

TEST_CASE("partition with empty anchor is a single class") {
    Graph g = testsupport::path_graph(3);
    std::vector<Vertex> ground{0, 1, 2};
    auto p = partition_by_trace(g, ground, {});
    REQUIRE(p.classes.size() == 1);
    CHECK(p.classes[0].trace.empty());
    CHECK(p.classes[0].members == ground);
    CHECK(distinct_traces(p) == std::vector<std::vector<Vertex>>{{}});
}

TEST_CASE("partition splits by adjacency to the anchor") {
    // u1, u2 see rho; u3 does not.
    Graph g(4);
    g.add_edge(0, 3);
    g.add_edge(1, 3);
    std::vector<Vertex> ground{0, 1, 2};
    std::vector<Vertex> anchor{3};
    auto p = partition_by_trace(g, ground, anchor);
    REQUIRE(p.classes.size() == 2);
    CHECK(p.classes[0].trace.empty());
    CHECK(p.classes[0].members == std::vector<Vertex>{2});
    CHECK(p.classes[1].trace == std::vector<Vertex>{3});
    CHECK(p.classes[1].members == std::vector<Vertex>{0, 1});
    CHECK(p.trace_index.at({3}) == 1);
}

TEST_CASE("all-distinct traces give singleton classes") {
    // Ground 0..3, anchor {4,5}; traces {}, {4}, {5}, {4,5}.
    Graph g(6);
    g.add_edge(1, 4);
    g.add_edge(2, 5);
    g.add_edge(3, 4);
    g.add_edge(3, 5);
    std::vector<Vertex> ground{0, 1, 2, 3};
    std::vector<Vertex> anchor{4, 5};
    auto p = partition_by_trace(g, ground, anchor);
    CHECK(p.classes.size() == 4);
    for (const auto& cls : p.classes) CHECK(cls.members.size() == 1);
    CHECK(distinct_traces(p).size() == 4);
}

TEST_CASE("partition is order independent and a refinement fixpoint") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = testsupport::random_graph(12, 0.3, rng());
        std::vector<Vertex> ground{0, 1, 2, 3, 4, 5};
        std::vector<Vertex> anchor{6, 7, 8};
        auto base = partition_by_trace(g, ground, anchor);

        auto shuffled_ground = ground;
        std::shuffle(shuffled_ground.begin(), shuffled_ground.end(), rng);
        auto shuffled_anchor = anchor;
        std::shuffle(shuffled_anchor.begin(), shuffled_anchor.end(), rng);
        auto again = partition_by_trace(g, shuffled_ground, shuffled_anchor);

        REQUIRE(base.classes.size() == again.classes.size());
        for (std::size_t i = 0; i < base.classes.size(); ++i) {
            CHECK(base.classes[i].trace == again.classes[i].trace);
            CHECK(base.classes[i].members == again.classes[i].members);
        }

        // Refining a class against the same anchor returns the class whole.
        for (const auto& cls : base.classes) {
            auto refined = partition_by_trace(g, cls.members, anchor);
            REQUIRE(refined.classes.size() == 1);
            CHECK(refined.classes[0].members == cls.members);
        }
    }
}

TEST_CASE("trace count bounded by ground size and anchor power set") {
    std::mt19937_64 rng(321);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = testsupport::random_graph(11, 0.4, rng());
        std::vector<Vertex> ground, anchor;
        for (Vertex v = 0; v < 7; ++v) ground.push_back(v);
        for (Vertex v = 7; v < 10; ++v) anchor.push_back(v);
        auto p = partition_by_trace(g, ground, anchor);
        auto traces = distinct_traces(p);
        CHECK(traces.size() <= ground.size());
        CHECK(traces.size() <= (std::size_t(1) << anchor.size()));
        // Members really share their class trace.
        for (const auto& cls : p.classes)
            for (Vertex u : cls.members) {
                std::vector<Vertex> t;
                for (Vertex w : g.neighbors(u))
                    if (w >= 7 && w < 10) t.push_back(w);
                CHECK(t == cls.trace);
            }
    }
}

TEST_CASE("twin bounds hold on sparse random corpora") {
    // Ground = N(X), anchor = R, as the kernelizer uses the partition.
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        dsai::Graph g = testsupport::random_graph(30, 0.08, seed * 131);
        auto x = greedy_maximal_r_independent(g, 3);
        Instance inst{g, x, 3, 0};
        auto decomp = decompose(inst);
        std::vector<Vertex> ground;
        std::vector<char> in_x(g.vertex_count(), 0);
        for (Vertex v : x) in_x[v] = 1;
        for (const auto& ball : decomp.ball)
            for (Vertex v : ball)
                if (!in_x[v]) ground.push_back(v);
        auto p = partition_by_trace(g, ground, decomp.residual);
        auto report = twin_bound_report(p, 3);
        CHECK(report.high_degree_ok);
        CHECK(report.trace_ok);
    }
}

TEST_CASE("twin bound report") {
    Graph g = testsupport::star_graph(4);
    std::vector<Vertex> ground{0};
    std::vector<Vertex> anchor{1, 2, 3, 4};
    auto p = partition_by_trace(g, ground, anchor);
    auto report = twin_bound_report(p, 1);
    CHECK(report.trace_count == 1);
    CHECK(report.trace_ok);
    // deg_anchor(center) = 4 > 2*tau = 2, still within 2*tau*|anchor| = 8.
    CHECK(report.high_degree_count == 1);
    CHECK(report.high_degree_ok);

    auto empty_anchor = partition_by_trace(g, ground, {});
    auto degenerate = twin_bound_report(empty_anchor, 1);
    CHECK(degenerate.trace_ok);
    CHECK(degenerate.high_degree_ok);

    CHECK_THROWS_AS(twin_bound_report(p, 0), InputError);

    auto j = to_json(report);
    CHECK(j["tau"] == 1);
    CHECK(j["trace_count"] == 1);
}
