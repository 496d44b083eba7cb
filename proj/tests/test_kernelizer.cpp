#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dsai/cost.hpp"
#include "dsai/errors.hpp"
#include "dsai/generators.hpp"
#include "dsai/kernelizer.hpp"
#include "dsai/oracle.hpp"
#include "support/brute.hpp"

using namespace dsai;
using testsupport::star_graph;

namespace {

// l pendant-path balls x_i - u_i all hanging on one shared residual vertex.
Instance replicated_ball_instance(int balls, int leaves_per_ball = 2) {
    const int per = 2 + leaves_per_ball; // x, u, leaves
    Graph g(balls * per + 1);
    const Vertex rho = balls * per;
    std::vector<Vertex> x;
    for (int i = 0; i < balls; ++i) {
        const Vertex center = i * per;
        const Vertex middle = center + 1;
        g.add_edge(center, middle);
        g.add_edge(middle, rho);
        for (int leaf = 0; leaf < leaves_per_ball; ++leaf)
            g.add_edge(center, center + 2 + leaf);
        x.push_back(center);
    }
    Instance inst{std::move(g), std::move(x), 3, balls};
    validate_instance(inst);
    return inst;
}

int first_small_center(const Instance& inst) { return inst.x_set.front(); }

} // namespace

TEST_CASE("ball replacement trims twin leaves") {
    Instance inst{star_graph(10), {0}, 3, 1};
    auto result = replace_ball(inst.graph, inst.x_set, 0);
    CHECK(result.plan.boundary.empty());
    CHECK(result.plan.core == std::vector<Vertex>{0});
    CHECK(result.plan.twin_class_count == 1);
    CHECK(result.plan.removed_vertices.size() == 8); // keep two representatives
    CHECK(result.graph.vertex_count() == 3);
    CHECK(ds_exact(result.graph).size == ds_exact(inst.graph).size);
}

TEST_CASE("ball replacement respects the core size bound") {
    std::mt19937_64 rng(555);
    int replaced = 0;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        RandomConfig cfg;
        cfg.n = 10 + static_cast<int>(seed % 14);
        cfg.edge_prob = 0.10 + 0.02 * (seed % 5);
        cfg.radius = 3;
        cfg.seed = seed * 37;
        auto inst = random_instance(cfg);
        auto decomp = decompose(inst);
        for (std::size_t i = 0; i < decomp.x_order.size(); ++i) {
            if (decomp.ball_residual[i].size() > 3) continue;
            auto result = replace_ball(inst.graph, inst.x_set, decomp.x_order[i]);
            REQUIRE_FALSE(result.plan.skipped);
            const int k = static_cast<int>(result.plan.boundary.size());
            const long long bound = ((1LL << (2 * k)) + 1) * k + 1;
            CHECK(static_cast<long long>(result.plan.core.size()) <= bound);

            // Replaced ball keeps at most |S| + 2 * classes vertices.
            const int kept_in_ball =
                static_cast<int>(decomp.ball2[i].size() - result.plan.removed_vertices.size());
            CHECK(kept_in_ball <= static_cast<int>(result.plan.core.size()) +
                                      2 * result.plan.twin_class_count);

            // Domination number is preserved and X stays a valid witness set.
            CHECK(ds_exact(result.graph).size == ds_exact(inst.graph).size);
            Instance reduced;
            reduced.graph = result.graph;
            std::vector<int> to_new(inst.graph.vertex_count(), -1);
            for (std::size_t nv = 0; nv < result.to_original.size(); ++nv)
                to_new[result.to_original[nv]] = static_cast<int>(nv);
            for (Vertex v : inst.x_set) reduced.x_set.push_back(to_new[v]);
            reduced.radius = inst.radius;
            reduced.budget = inst.budget;
            validate_instance(reduced);
            ++replaced;
        }
        if (replaced >= 40) break;
    }
    CHECK(replaced >= 40);
}

TEST_CASE("ball replacement produces a subgraph") {
    auto inst = replicated_ball_instance(3);
    auto result = replace_ball(inst.graph, inst.x_set, first_small_center(inst));
    for (auto [u, v] : result.graph.edges())
        CHECK(inst.graph.has_edge(result.to_original[u], result.to_original[v]));
}

TEST_CASE("ball replacement skips oversized boundaries") {
    // Center with two residual contacts, cap 1.
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2); // rho1
    g.add_edge(0, 3);
    g.add_edge(3, 4); // rho2
    Instance inst{g, {0}, 3, 2};
    validate_instance(inst);
    auto plan = plan_ball_replacement(g, inst.x_set, 0, 1);
    CHECK(plan.skipped);
    auto applied = replace_ball(g, inst.x_set, 0, 1);
    CHECK(applied.graph.vertex_count() == g.vertex_count());
}

TEST_CASE("characteristic vector of tiny balls") {
    // Star ball, empty boundary: single entry, the domination number 1.
    BoundariedGraph star{star_graph(3), {}};
    auto chi0 = characteristic_vector(star, star.boundary);
    REQUIRE(chi0.values.size() == 1);
    CHECK(chi0.values[0] == 1);

    // Edge u - b with boundary {b}: every entry is 1.
    Graph edge(2);
    edge.add_edge(0, 1);
    BoundariedGraph h{edge, {1}};
    auto chi = characteristic_vector(h, h.boundary);
    REQUIRE(chi.values.size() == 4);
    for (int value : chi.values) CHECK(value == 1);

    // Unreachable boundary target: the (A=∅, B={b}) entry is infinite.
    BoundariedGraph isolated{Graph(2), {1}};
    auto chi2 = characteristic_vector(isolated, isolated.boundary);
    CHECK(chi2.values[0] == 1);        // A=∅, B=∅: dominate the interior
    CHECK(chi2.values[1] == kInfCost); // A=∅, B={b}

    CHECK_THROWS_AS(characteristic_vector(h, std::vector<Vertex>{0}), InputError);

    std::vector<Vertex> wide{0, 1, 2};
    BoundariedGraph big{star_graph(2), wide};
    CHECK_THROWS_AS(characteristic_vector(big, wide, 2), ResourceError);
}

TEST_CASE("class replacement deduplicates interchangeable balls") {
    auto inst = replicated_ball_instance(5);
    auto result = replace_class(inst.graph, inst.x_set, inst.x_set);
    CHECK(result.buckets == 1);
    CHECK(result.offset == 4); // keep max(|R'|, 1) = 1 ball
    CHECK(ds_exact(inst.graph).size == ds_exact(result.graph).size + result.offset);

    // Group of one: nothing to deduplicate.
    auto solo = replace_class(inst.graph, inst.x_set, {inst.x_set.front()});
    CHECK(solo.offset == 0);
}

TEST_CASE("strict keep count retains one ball per residual vertex") {
    auto inst = replicated_ball_instance(5);
    KernelConfig strict;
    strict.strict_paper_keep = true; // min{|bucket|, |R|} with |R| = 1
    auto result = replace_class(inst.graph, inst.x_set, inst.x_set, strict);
    CHECK(result.offset == 4);
    CHECK(ds_exact(inst.graph).size == ds_exact(result.graph).size + result.offset);
}

TEST_CASE("balls with different characteristic vectors both survive") {
    // x - u - rho - u' - x' - l': both centers trace {rho}, but only the
    // first ball can cover rho with a single interior vertex.
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    Instance inst{g, {0, 4}, 3, 2};
    validate_instance(inst);
    auto result = replace_class(inst.graph, inst.x_set, inst.x_set);
    CHECK(result.buckets == 2);
    CHECK(result.offset == 0);
    CHECK(ds_exact(result.graph).size == ds_exact(g).size);
}

TEST_CASE("kernelize leaves large balls untouched") {
    // One center, three residual contacts: |R_1| = 3 > 2 tau for tau = 1.
    Graph g(7);
    for (int i = 0; i < 3; ++i) {
        g.add_edge(0, 1 + i);
        g.add_edge(1 + i, 4 + i);
    }
    Instance inst{g, {0}, 3, 3};
    validate_instance(inst);
    KernelConfig cfg;
    cfg.tau = 1;
    auto report = kernelize(inst, cfg);
    CHECK(report.large_balls == std::vector<Vertex>{0});
    CHECK(report.groups.empty());
    CHECK(report.offset == 0);
    CHECK(report.n_after == report.n_before);
    CHECK(report.verdict == "undecided");
    CHECK(report.reduced.graph.edges() == g.edges());
}

TEST_CASE("kernelize compresses replicated balls and preserves the optimum") {
    auto inst = replicated_ball_instance(6);
    inst.budget = 3; // below ds, keeps the verdict open and the instance real
    for (bool strict : {false, true}) {
        KernelConfig cfg;
        cfg.strict_paper_keep = strict;
        auto report = kernelize(inst, cfg);
        CHECK(report.offset == 5);
        CHECK(report.verdict != "yes");
        CHECK(ds_exact(inst.graph).size == ds_exact(report.reduced.graph).size + report.offset);
        // Vertex map points back into the original graph, X' into X.
        for (auto [u, v] : report.reduced.graph.edges())
            CHECK(inst.graph.has_edge(report.vertex_map[u], report.vertex_map[v]));
        for (Vertex x : report.reduced.x_set)
            CHECK(std::binary_search(inst.x_set.begin(), inst.x_set.end(),
                                     report.vertex_map[x]));
    }
}

TEST_CASE("kernelize emits the canonical instance once the budget certifies YES") {
    // Three identical residual-free star balls; removing two certifies the rest.
    Graph g(9);
    for (int i = 0; i < 3; ++i) {
        g.add_edge(3 * i, 3 * i + 1);
        g.add_edge(3 * i, 3 * i + 2);
    }
    Instance inst{g, {0, 3, 6}, 3, 3}; // p = ds(G) = 3
    validate_instance(inst);
    auto report = kernelize(inst);
    CHECK(report.offset == 2);
    CHECK(report.verdict == "yes");
    CHECK(report.reduced.graph.vertex_count() == 1);
    CHECK(report.reduced.x_set == std::vector<Vertex>{0});
    CHECK(report.reduced.budget == 1);
    CHECK(report.vertex_map.empty());
    CHECK(trivial_verdict(report.reduced) == true);
}

TEST_CASE("kernelize flags groups above the boundary cap") {
    // Two residual contacts per center; cap 1 leaves the group unreduced.
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 3);
    g.add_edge(3, 4);
    Instance inst{g, {0}, 3, 2};
    KernelConfig cfg;
    cfg.rprime_cap = 1;
    cfg.tau = 2; // keep |R_i| = 2 <= 2 tau, so the group is small but capped
    auto report = kernelize(inst, cfg);
    REQUIRE(report.groups.size() == 1);
    CHECK(report.groups[0].skipped);
    CHECK(report.n_after == report.n_before);
}

TEST_CASE("kernelize preserves the optimum on random instances") {
    std::mt19937_64 rng(777);
    int tested = 0;
    for (std::uint64_t seed = 1; tested < 25 && seed <= 400; ++seed) {
        RandomConfig cfg;
        cfg.n = 12 + static_cast<int>(seed % 18);
        cfg.edge_prob = 0.08 + 0.02 * (seed % 6);
        cfg.radius = 3;
        cfg.seed = seed * 571;
        auto inst = random_instance(cfg);
        if (decompose(inst).residual.size() > 6) continue;
        inst.budget = static_cast<int>(inst.x_set.size()) - 1; // stay out of the YES band
        ++tested;
        for (bool strict : {false, true}) {
            KernelConfig kc;
            kc.strict_paper_keep = strict;
            auto report = kernelize(inst, kc);
            REQUIRE(report.verdict != "yes");
            CHECK(ds_exact(inst.graph).size ==
                  ds_exact(report.reduced.graph).size + report.offset);
        }
    }
    CHECK(tested == 25);
}

TEST_CASE("residual-free ball stripping") {
    // Component A: star with no residual. Component B: path with residual.
    Graph g(8);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    g.add_edge(6, 7);
    Instance inst{g, {0, 3}, 4, 3};
    validate_instance(inst);

    auto strip = strip_residual_free_balls(inst);
    CHECK(strip.removed_centers == std::vector<Vertex>{0});
    CHECK(strip.instance.budget == 2);
    CHECK(strip.instance.x_set.size() == 1);
    CHECK(ds_exact(g).size ==
          ds_exact(strip.instance.graph).size + static_cast<int>(strip.removed_centers.size()));

    // Observation: reduced instances have |R| >= |X|.
    auto decomp = decompose(strip.instance);
    CHECK(decomp.residual.size() >= strip.instance.x_set.size());

    // Idempotent on already-reduced instances.
    auto again = strip_residual_free_balls(strip.instance);
    CHECK(again.removed_centers.empty());
    CHECK(again.instance.graph.vertex_count() == strip.instance.graph.vertex_count());

    // All balls removable: nothing is left.
    Instance all_stars{star_graph(3), {0}, 4, 1};
    auto stripped = strip_residual_free_balls(all_stars);
    CHECK(stripped.instance.graph.vertex_count() == 0);
    CHECK(stripped.instance.budget == 0);

    CHECK_THROWS_AS(strip_residual_free_balls(Instance{star_graph(2), {0}, 3, 1}),
                    UnsupportedError);
}

TEST_CASE("stripping keeps equivalence on random radius-4 instances") {
    int tested = 0;
    for (std::uint64_t seed = 1; tested < 25 && seed <= 300; ++seed) {
        RandomConfig cfg;
        cfg.n = 10 + static_cast<int>(seed % 15);
        cfg.edge_prob = 0.07 + 0.02 * (seed % 4);
        cfg.radius = 4;
        cfg.seed = seed * 41;
        auto inst = random_instance(cfg);
        ++tested;
        auto strip = strip_residual_free_balls(inst);
        CHECK(ds_exact(inst.graph).size ==
              ds_exact(strip.instance.graph).size +
                  static_cast<int>(strip.removed_centers.size()));
        auto decomp = decompose(strip.instance);
        CHECK(decomp.residual.size() >= strip.instance.x_set.size());
    }
    CHECK(tested == 25);
}

TEST_CASE("kernelize survives stripping the entire graph") {
    // Two residual-free star balls at radius 4: stripping removes everything.
    Graph g(6);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(3, 4);
    g.add_edge(3, 5);
    Instance yes{g, {0, 3}, 4, 2}; // p = ds(G): trivially YES after stripping
    auto report = kernelize(yes);
    CHECK(report.stripped_centers == std::vector<Vertex>{0, 3});
    CHECK(report.verdict == "yes");
    CHECK(report.reduced.graph.vertex_count() == 1); // canonical instance

    Instance no = yes;
    no.budget = 1; // below ds
    auto report_no = kernelize(no);
    CHECK(report_no.verdict == "no");
    CHECK(report_no.reduced.graph.vertex_count() == 0);
    CHECK(report_no.offset == 2);
}

TEST_CASE("kernelize strips residual-free balls first at radius 4") {
    Graph g(8);
    g.add_edge(0, 1);
    g.add_edge(0, 2);
    g.add_edge(3, 4);
    g.add_edge(4, 5);
    g.add_edge(5, 6);
    g.add_edge(6, 7);
    Instance inst{g, {0, 3}, 4, 2}; // ds(G) = 3: below band, verdict no
    auto report = kernelize(inst);
    CHECK(report.stripped_centers == std::vector<Vertex>{0});
    CHECK(report.offset >= 1);
    CHECK(ds_exact(g).size == ds_exact(report.reduced.graph).size + report.offset);
}
