#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fmdpsel/cascade.hpp"

using namespace fmdpsel;

namespace {

CascadeNetwork path_graph(int n, double p) {
    CascadeNetwork g;
    g.n_nodes = n;
    g.adjacency.resize(n);
    g.influence_prob = p;
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    g.finalize();
    return g;
}

}  // namespace

TEST_CASE("graph construction canonicalizes and validates edges") {
    CascadeNetwork g;
    g.n_nodes = 3;
    g.adjacency.resize(3);
    g.add_edge(2, 0);
    g.add_edge(0, 2);  // duplicate in the other orientation
    g.finalize();
    CHECK(g.edges == std::vector<std::pair<int, int>>{{0, 2}});
    CHECK(g.adjacency[0] == std::vector<int>{2});
    REQUIRE_NOTHROW(g.validate());
    CHECK_THROWS_AS(g.add_edge(1, 1), input_error);
}

TEST_CASE("deterministic cascade sweeps a path when p = 1") {
    auto g = path_graph(5, 1.0);
    Rng rng = make_rng(1, 1);
    auto tr = simulate_cascade(g, {0}, {}, rng);
    // one new failure per step: 0, then 1, ..., then 4
    CHECK(tr.failure_time == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(tr.healthy_final == 0);
    CHECK(tr.healthy_counts == std::vector<int>{4, 3, 2, 1, 0});
    CHECK(tr.termination_step <= g.n_nodes);

    // islanding the middle node cuts the far side off entirely
    Rng rng2 = make_rng(1, 1);
    auto tr2 = simulate_cascade(g, {0}, {2}, rng2);
    CHECK(tr2.failure_time[2] == -1);
    CHECK(tr2.failure_time[3] == -1);
    CHECK(tr2.failure_time[4] == -1);
    CHECK(tr2.healthy_final == 3);
}

TEST_CASE("zero influence probability freezes the cascade at its seeds") {
    auto g = path_graph(6, 0.0);
    Rng rng = make_rng(2, 2);
    auto tr = simulate_cascade(g, {1, 4}, {}, rng);
    CHECK(tr.healthy_final == 4);
    CHECK(tr.termination_step <= 1);
    // discounted return: healthy count is constant, so the tail closes
    double ret = detail::trajectory_return(tr, 0.95);
    CHECK(ret == Catch::Approx(4.0 / (1.0 - 0.95)).margin(1e-9));
}

TEST_CASE("islanded seed nodes never fail") {
    auto g = path_graph(4, 1.0);
    Rng rng = make_rng(3, 3);
    auto tr = simulate_cascade(g, {0}, {0}, rng);
    CHECK(tr.failure_time == std::vector<int>{-1, -1, -1, -1});
    CHECK(tr.healthy_final == 4);
}

TEST_CASE("more seeds never help and islanding never hurts, under paired noise") {
    auto g = gen_er(25, 0.25, 11);
    g.influence_prob = 0.4;
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
        Rng r1 = make_rng(500, trial);
        Rng r2 = make_rng(500, trial);
        auto small = simulate_cascade(g, {0, 1}, {}, r1);
        auto big = simulate_cascade(g, {0, 1, 2}, {}, r2);
        // paired streams: the superset of seeds can only destroy more
        CHECK(big.healthy_final <= small.healthy_final);

        Rng r3 = make_rng(900, trial);
        Rng r4 = make_rng(900, trial);
        auto open = simulate_cascade(g, {0, 1}, {}, r3);
        auto cut = simulate_cascade(g, {0, 1}, {5, 6, 7}, r4);
        CHECK(cut.healthy_final >= open.healthy_final);
        CHECK(open.termination_step <= g.n_nodes);
    }
}

TEST_CASE("generated graphs are valid and seed-reproducible") {
    auto er1 = gen_er(30, 0.3, 42);
    auto er2 = gen_er(30, 0.3, 42);
    CHECK(er1.edges == er2.edges);
    REQUIRE_NOTHROW(er1.validate());
    CHECK(gen_er(30, 0.3, 43).edges != er1.edges);
    CHECK(gen_er(10, 0.0, 1).edges.empty());
    CHECK(gen_er(5, 1.0, 1).edges.size() == 10);

    auto ba = gen_ba(30, 42);
    REQUIRE_NOTHROW(ba.validate());
    // clique of 3 plus 2 edges per later node
    CHECK(ba.edges.size() == 3 + 2 * (30 - 3));
    CHECK(gen_ba(30, 42).edges == ba.edges);
    CHECK_THROWS_AS(gen_ba(2, 1), input_error);
    CHECK_THROWS_AS(gen_er(0, 0.5, 1), input_error);
}

TEST_CASE("influence maximization prefers the hub of a star") {
    CascadeNetwork g;
    g.n_nodes = 6;
    g.adjacency.resize(6);
    g.influence_prob = 0.5;
    for (int leaf = 1; leaf < 6; ++leaf) g.add_edge(0, leaf);
    g.finalize();
    auto seeds = influence_max_greedy(g, 1, 200, 7);
    CHECK(seeds == std::vector<int>{0});
}

TEST_CASE("asen returns are deterministic and respond to islanding") {
    AsenProblem prob;
    prob.network = path_graph(8, 1.0);
    prob.faulty_seeds = {0};
    prob.budget = 2;
    prob.discount = 0.95;
    prob.n_rollouts = 50;
    prob.noise_seed = 99;
    REQUIRE_NOTHROW(prob.validate());
    double blank = asen_discounted_return(prob, {});
    CHECK(blank == Catch::Approx(asen_discounted_return(prob, {})).margin(0.0));
    // cutting right next to the seed saves 6 nodes permanently
    double cut = asen_discounted_return(prob, {1});
    CHECK(cut > blank);
    CHECK(cut == Catch::Approx(7.0 + 7.0 * 0.95 / (1 - 0.95)).margin(1e-9));
    CHECK_THROWS_AS(asen_discounted_return(AsenProblem{prob.network, {99}, 1}, {}), input_error);
}

TEST_CASE("random baseline is a uniform budget-size subset") {
    std::vector<int> cands = {0, 1, 2, 3, 4};
    auto pick = random_select_baseline(cands, 2, 5);
    CHECK(pick.size() == 2);
    CHECK(std::is_sorted(pick.begin(), pick.end()));
    CHECK(pick == random_select_baseline(cands, 2, 5));
    // every candidate appears with frequency near budget/n
    std::vector<int> counts(5, 0);
    const int trials = 4000;
    for (int t = 0; t < trials; ++t)
        for (int v : random_select_baseline(cands, 2, 1000 + t)) ++counts[v];
    for (int v = 0; v < 5; ++v) {
        double freq = static_cast<double>(counts[v]) / trials;
        // 3 sigma around p = 0.4 with n = 4000
        CHECK(freq == Catch::Approx(0.4).margin(3 * std::sqrt(0.4 * 0.6 / trials)));
    }
    CHECK_THROWS_AS(random_select_baseline(cands, 6, 1), input_error);
}
