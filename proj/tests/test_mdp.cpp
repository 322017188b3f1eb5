#include <catch2/catch_amalgamated.hpp>

#include "fmdpsel/instances.hpp"
#include "fmdpsel/mdp.hpp"

using namespace fmdpsel;

namespace {

// Two-state chain: action 0 stays (reward 0), action 1 moves 0->1 and keeps
// 1 absorbing with reward 1 in state 1. V*(1) = r/(1-g), V*(0) = g V*(1).
ExplicitMdp two_state_chain(double gamma) {
    ExplicitMdp m;
    m.n_states = 2;
    m.n_actions = 2;
    m.discount = gamma;
    m.transitions = {
        // a=0
        1, 0, /**/ 0, 1,
        // a=1
        0, 1, /**/ 0, 1};
    m.rewards = {0, 0, 1, 1};  // r(s,a): r(1,0)=1, r(1,1)=1
    return m;
}

ExplicitMdp gadget_flat(double R, double delta, double gamma) {
    auto p = example1_mdp(R, delta, gamma);
    return p.fmdp.flatten();
}

}  // namespace

TEST_CASE("value iteration solves the two-state chain in closed form") {
    double g = 0.9;
    auto m = two_state_chain(g);
    auto [v, pi] = value_iteration(m, 1e-12);
    CHECK(v[1] == Catch::Approx(1.0 / (1 - g)).margin(1e-9));
    CHECK(v[0] == Catch::Approx(g / (1 - g)).margin(1e-9));
    CHECK(pi[0] == 1);
}

TEST_CASE("policy iteration agrees with value iteration") {
    auto m = two_state_chain(0.95);
    auto [vv, vp] = value_iteration(m, 1e-12);
    auto [pv, pp] = policy_iteration(m);
    for (int s = 0; s < m.n_states; ++s) CHECK(pv[s] == Catch::Approx(vv[s]).margin(1e-8));
    CHECK(pp == vp);
}

TEST_CASE("fixed-policy evaluation solves the linear system exactly") {
    auto m = two_state_chain(0.9);
    // always act: V(1)=1/(1-g), V(0)=g/(1-g)
    auto v = evaluate_fixed_policy(m, {1, 1});
    CHECK(v[1] == Catch::Approx(10.0).margin(1e-12));
    CHECK(v[0] == Catch::Approx(9.0).margin(1e-12));
    // never act from 0: V(0)=0
    auto v0 = evaluate_fixed_policy(m, {0, 0});
    CHECK(v0[0] == Catch::Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(evaluate_fixed_policy(m, {0}), input_error);
    CHECK_THROWS_AS(evaluate_fixed_policy(m, {0, 5}), input_error);
}

TEST_CASE("gadget MDP optimum is R/(1-gamma) from every start") {
    double R = 1.0, g = 0.9;
    auto m = gadget_flat(R, 0.1, g);
    auto [v, pi] = policy_iteration(m);
    // fully observed: steer immediately (a=1 in A, a=2 in B), reach C, then
    // collect R forever.
    CHECK(v[gadget::A] == Catch::Approx(R / (1 - g)).margin(1e-9));
    CHECK(v[gadget::B] == Catch::Approx(R / (1 - g)).margin(1e-9));
    CHECK(v[gadget::C] == Catch::Approx(R / (1 - g)).margin(1e-9));
    CHECK(pi[gadget::A] == 1);
    CHECK(pi[gadget::B] == 2);
    // D is absorbing with the penalty forever
    CHECK(v[gadget::D] == Catch::Approx(-(1.1) * R / (1 - g)).margin(1e-9));
}

TEST_CASE("value iteration tie-break keeps the lowest action index") {
    ExplicitMdp m;
    m.n_states = 1;
    m.n_actions = 3;
    m.discount = 0.5;
    m.transitions = {1, 1, 1};
    m.rewards = {1, 1, 0};  // actions 0 and 1 tie
    auto [v, pi] = value_iteration(m, 1e-12);
    CHECK(pi[0] == 0);
    CHECK(v[0] == Catch::Approx(2.0).margin(1e-9));
}

TEST_CASE("value iteration rejects nonpositive tolerance") {
    auto m = two_state_chain(0.9);
    CHECK_THROWS_AS(value_iteration(m, 0.0), input_error);
}
