#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "fmdpsel/errors.hpp"
#include "fmdpsel/fmdp.hpp"
#include "fmdpsel/problems.hpp"
#include "fmdpsel/rng.hpp"

namespace fmdpsel {

// ---------------------------------------------------------------------------
// The four-state gadget MDP (states A,B,C,D; actions 0,1,2)

namespace gadget {

constexpr int A = 0, B = 1, C = 2, D = 3;

/// Transition table [a][s][s'], shared by every gadget construction.
inline std::vector<double> transition_table() {
    // a=0: A,B mix uniformly over {A,B}; C and D absorb.
    // a=1: A->C, B->D.  a=2: A->D, B->C.
    return {
        // a = 0
        0.5, 0.5, 0, 0, /**/ 0.5, 0.5, 0, 0, /**/ 0, 0, 1, 0, /**/ 0, 0, 0, 1,
        // a = 1
        0, 0, 1, 0, /**/ 0, 0, 0, 1, /**/ 0, 0, 1, 0, /**/ 0, 0, 0, 1,
        // a = 2
        0, 0, 0, 1, /**/ 0, 0, 1, 0, /**/ 0, 0, 1, 0, /**/ 0, 0, 0, 1};
}

/// Gadget reward r(s,a) as a table indexed (s major, a minor): R for the
/// correct steering action and in C, -(1+delta)R for the wrong one and in D.
inline std::vector<double> reward_table(double R, double delta) {
    double P = -(1.0 + delta) * R;
    return {
        /* A */ 0, R, P,
        /* B */ 0, P, R,
        /* C */ R, R, R,
        /* D */ P, P, P};
}

/// Penalty-only variant: the positive entries are zeroed, leaving only the
/// -(1+delta)R deterrents. Used for Example 3/4's third variable, whose
/// upside is the shared R4 component rather than its own steering reward.
inline std::vector<double> penalty_only_reward_table(double R, double delta) {
    double P = -(1.0 + delta) * R;
    return {
        /* A */ 0, 0, P,
        /* B */ 0, P, 0,
        /* C */ 0, 0, 0,
        /* D */ P, P, P};
}

inline TransitionKernel kernel(int var) {
    TransitionKernel k;
    k.action_factor = var;
    k.parents = {var};
    // reshape [a][s][s'] into (a, s) rows directly
    k.probs = transition_table();
    return k;
}

inline RewardComponent own_reward(int var, double R, double delta, bool penalty_only = false) {
    RewardComponent rc;
    rc.kind = RewardComponent::Kind::Table;
    rc.state_scope = {var};
    rc.action_scope = {var};
    rc.table = penalty_only ? penalty_only_reward_table(R, delta) : reward_table(R, delta);
    return rc;
}

inline FactoredMdp chain(int n_vars, double gamma) {
    FactoredMdp m;
    m.discount = gamma;
    for (int i = 0; i < n_vars; ++i) {
        m.state_domains.push_back(4);
        m.action_domains.push_back(3);
        m.kernels.push_back(kernel(i));
        m.initial_belief_factors.push_back({0.5, 0.5, 0.0, 0.0});
    }
    return m;
}

}  // namespace gadget

/// Example 1: the 4-state, 3-action gadget with one noiseless full-state
/// sensor. Initial distribution [0.5, 0.5, 0, 0].
inline FactoredSensorProblem example1_mdp(double R, double delta, double gamma) {
    if (R <= 0 || delta <= 0) throw input_error("example1_mdp: require R > 0 and delta > 0");
    if (gamma <= 0 || gamma >= 1) throw input_error("example1_mdp: gamma must be in (0,1)");
    FactoredSensorProblem p;
    p.fmdp = gadget::chain(1, gamma);
    p.fmdp.rewards.push_back(gadget::own_reward(0, R, delta));
    p.catalog.sensors.push_back(Sensor{0, {}, 0, 1.0});
    p.catalog.budget = 1.0;
    return p;
}

/// Example 2: identical dynamics and rewards; one actuator candidate that
/// unlocks the full {0,1,2} action set (otherwise only the default 0).
inline FactoredActuatorProblem example2_mdp(double R, double delta, double gamma) {
    auto base = example1_mdp(R, delta, gamma);
    FactoredActuatorProblem p;
    p.fmdp = std::move(base.fmdp);
    p.catalog.actuators.push_back(Actuator{0, {}, 1.0});
    p.catalog.budget = 1.0;
    return p;
}

namespace detail {

/// Shared-R4 component for Examples 3/4: pays R4 whenever the pair of
/// gadget variables transitions into (C, C), i.e. the expected next-state
/// indicator folded into r(s, a). Under the steering policies this makes
/// the component worth exactly R4 per step from the start.
inline RewardComponent pair_bonus_component(int var_a, int var_b, double R4) {
    RewardComponent rc;
    rc.kind = RewardComponent::Kind::Table;
    rc.state_scope = {var_a, var_b};
    rc.action_scope = {var_a, var_b};
    auto t = gadget::transition_table();
    auto p_to_c = [&](int s, int a) { return t[(a * 4 + s) * 4 + gadget::C]; };
    rc.table.resize(4 * 4 * 3 * 3);
    for (int sa = 0; sa < 4; ++sa)
        for (int sb = 0; sb < 4; ++sb)
            for (int aa = 0; aa < 3; ++aa)
                for (int ab = 0; ab < 3; ++ab)
                    rc.table[((sa * 4 + sb) * 3 + aa) * 3 + ab] =
                        R4 * p_to_c(sa, aa) * p_to_c(sb, ab);
    return rc;
}

inline void check_example34_params(double R1, double R2, double R3, double R4, double c,
                                   double delta, double gamma) {
    if (!(R4 > R1)) throw input_error("example3: violated R4 > R1");
    if (!(R1 > R2)) throw input_error("example3: violated R1 > R2");
    if (!(R2 > R3)) throw input_error("example3: violated R2 > R3");
    if (!(R3 > 0)) throw input_error("example3: violated R3 > 0");
    if (std::abs(R1 - (R2 + c)) > 1e-12) throw input_error("example3: violated R1 = R2 + c");
    if (!(delta > R4 / R3 - 1.0)) throw input_error("example3: violated delta > R4/R3 - 1");
    if (gamma <= 0 || gamma >= 1) throw input_error("example3: gamma must be in (0,1)");
}

inline FactoredMdp example34_fmdp(double R1, double R2, double R3, double R4, double c,
                                  double delta, double gamma) {
    check_example34_params(R1, R2, R3, R4, c, delta, gamma);
    FactoredMdp m = gadget::chain(4, gamma);
    m.rewards.push_back(gadget::own_reward(0, R1, delta));
    m.rewards.push_back(gadget::own_reward(1, R2, delta));
    m.rewards.push_back(gadget::own_reward(2, R3, delta, /*penalty_only=*/true));
    m.rewards.push_back(pair_bonus_component(1, 2, R4));
    return m;
}

}  // namespace detail

/// Example 3: the four-variable fMDP-SS instance on which greedy fails.
/// Sensor costs (1,1,1,3), budget 2.
inline FactoredSensorProblem example3_instance(double R1, double R2, double R3, double R4,
                                               double c, double delta, double gamma) {
    FactoredSensorProblem p;
    p.fmdp = detail::example34_fmdp(R1, R2, R3, R4, c, delta, gamma);
    for (int i = 0; i < 4; ++i) p.catalog.sensors.push_back(Sensor{i, {}, 0, i == 3 ? 3.0 : 1.0});
    p.catalog.budget = 2.0;
    return p;
}

/// Example 4: the actuator mirror of Example 3. Actuator costs (1,1,1,3),
/// budget 2, Example-2 default-action semantics.
inline FactoredActuatorProblem example4_instance(double R1, double R2, double R3, double R4,
                                                 double c, double delta, double gamma) {
    FactoredActuatorProblem p;
    p.fmdp = detail::example34_fmdp(R1, R2, R3, R4, c, delta, gamma);
    for (int i = 0; i < 4; ++i) p.catalog.actuators.push_back(Actuator{i, {}, i == 3 ? 3.0 : 1.0});
    p.catalog.budget = 2.0;
    return p;
}

// ---------------------------------------------------------------------------
// SetCover and the hardness reductions

struct SetCoverInstance {
    int universe_size = 0;                // elements 0..n-1
    std::vector<std::vector<int>> sets;   // each subset of the universe
    int bound = 0;                        // k

    void validate() const {
        if (universe_size < 0 || bound < 0) throw input_error("setcover: negative sizes");
        for (const auto& s : sets)
            for (int u : s)
                if (u < 0 || u >= universe_size)
                    throw input_error("setcover: element outside universe");
    }
};

struct SetCoverWitness {
    bool covered = false;
    std::vector<int> witness;  // set indices, when covered
};

/// Exhaustive check for a cover of size at most k.
inline SetCoverWitness setcover_brute_force(const SetCoverInstance& sc,
                                            std::size_t cap = 1'000'000) {
    sc.validate();
    if (sc.universe_size > 63)
        throw capacity_error("setcover_brute_force: universe too large for bitmask search");
    const int m = static_cast<int>(sc.sets.size());
    const int k = std::min(sc.bound, m);
    std::size_t count = 0;
    std::vector<int> chosen;
    SetCoverWitness result;
    std::function<bool(int, std::uint64_t)> rec = [&](int i, std::uint64_t mask) -> bool {
        std::uint64_t full = (1ULL << sc.universe_size) - 1;
        if (mask == full) {
            result.covered = true;
            result.witness = chosen;
            return true;
        }
        if (i == m || static_cast<int>(chosen.size()) == k) return false;
        if (++count > cap) throw capacity_error("setcover_brute_force: enumeration cap exceeded");
        std::uint64_t add = 0;
        for (int u : sc.sets[i]) add |= 1ULL << u;
        chosen.push_back(i);
        if (rec(i + 1, mask | add)) return true;
        chosen.pop_back();
        return rec(i + 1, mask);
    };
    if (sc.universe_size == 0) {
        result.covered = true;
        return result;
    }
    rec(0, 0);
    return result;
}

/// The Theorem 1/2 gap ratio (k + g(n-1)) / (k + g n + g n^c).
inline double r_approx(int k, int n, double gamma, double c_exp) {
    if (k < 1 || n < 1) throw input_error("r_approx: k and n must be at least 1");
    if (gamma <= 0 || gamma >= 1) throw input_error("r_approx: gamma must be in (0,1)");
    if (c_exp <= 1) throw input_error("r_approx: c must exceed 1");
    double nc = std::pow(static_cast<double>(n), c_exp);
    return (k + gamma * n - gamma) / (k + gamma * n + gamma * nc);
}

template <typename Problem>
struct ReductionInstance {
    Problem problem;
    SetCoverInstance source;
    double threshold = 0.0;  // value achieved exactly when a k-cover exists
    double gap_bound = 0.0;  // upper bound on the optimum when none exists
    int layer3_count = 0;    // rounded n^c
    double R = 1.0;
    double gamma = 0.9;
    double delta = 0.0;
    double c_exp = 2.0;
};

using SsReduction = ReductionInstance<FactoredSensorProblem>;
using AsReduction = ReductionInstance<FactoredActuatorProblem>;

namespace detail {

/// Layered gadget fMDP shared by the SS and AS reductions: m layer-1 MDPs
/// carrying their own gadget rewards, n layer-2 components paying R while
/// some covering layer-1 MDP sits in C, and n^c layer-3 components paying R
/// while every element is covered that way. Layer-2/3 state variables have
/// gadget dynamics but contribute no reward of their own; selecting them is
/// priced out by cost k+1.
inline FactoredMdp reduction_fmdp(const SetCoverInstance& sc, int layer3_count, double R,
                                  double gamma, double delta) {
    const int m = static_cast<int>(sc.sets.size());
    const int n = sc.universe_size;
    FactoredMdp fm = gadget::chain(m + n + layer3_count, gamma);
    for (int i = 0; i < m; ++i) fm.rewards.push_back(gadget::own_reward(i, R, delta));

    std::vector<std::vector<int>> covering(n);
    for (int j = 0; j < m; ++j)
        for (int u : sc.sets[j]) covering[u].push_back(j);

    for (int e = 0; e < n; ++e) {
        RewardComponent rc;
        rc.kind = RewardComponent::Kind::TildeOr;
        rc.state_scope = covering[e];
        rc.fire_reward = R;
        fm.rewards.push_back(std::move(rc));
    }

    // layer-3 components: all elements simultaneously covered
    std::vector<int> scope;
    for (int e = 0; e < n; ++e) scope.insert(scope.end(), covering[e].begin(), covering[e].end());
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    std::vector<std::vector<int>> groups(n);
    auto pos = [&](int v) {
        return static_cast<int>(std::lower_bound(scope.begin(), scope.end(), v) - scope.begin());
    };
    for (int e = 0; e < n; ++e)
        for (int j : covering[e]) groups[e].push_back(pos(j));
    for (int t = 0; t < layer3_count; ++t) {
        RewardComponent rc;
        rc.kind = RewardComponent::Kind::TildeAndAll;
        rc.state_scope = scope;
        rc.groups = groups;
        rc.fire_reward = R;
        fm.rewards.push_back(rc);
    }
    return fm;
}

inline int rounded_layer3_count(int n, double c_exp) {
    if (c_exp <= 1) throw input_error("reduction: c exponent must exceed 1");
    return std::max(1, static_cast<int>(std::llround(std::pow(static_cast<double>(n), c_exp))));
}

/// Deterrent strength: a gamble on an unobserved gadget can unlock at most
/// (n + n^c) R per step of layered reward, so any delta above that makes
/// the expected gamble strictly losing.
inline double default_delta(int n, int layer3_count) { return n + layer3_count + 1.0; }

}  // namespace detail

/// SetCover -> fMDP-SS reduction. Sensor costs are 1 on layer 1 and k+1
/// elsewhere; budget k; threshold (k + gn + gn^c) R/(1-g).
inline SsReduction setcover_to_fmdp_ss(const SetCoverInstance& sc, double c_exp, double R,
                                       double gamma) {
    sc.validate();
    if (R <= 0) throw input_error("reduction: R must be positive");
    if (gamma <= 0 || gamma >= 1) throw input_error("reduction: gamma must be in (0,1)");
    SsReduction red;
    red.source = sc;
    red.layer3_count = detail::rounded_layer3_count(sc.universe_size, c_exp);
    red.R = R;
    red.gamma = gamma;
    red.c_exp = c_exp;
    red.delta = detail::default_delta(sc.universe_size, red.layer3_count);
    red.problem.fmdp = detail::reduction_fmdp(sc, red.layer3_count, R, gamma, red.delta);
    const int m = static_cast<int>(sc.sets.size());
    const int N = red.problem.fmdp.num_vars();
    for (int i = 0; i < N; ++i)
        red.problem.catalog.sensors.push_back(
            Sensor{i, {}, 0, i < m ? 1.0 : static_cast<double>(sc.bound + 1)});
    red.problem.catalog.budget = sc.bound;
    const int n = sc.universe_size, k = sc.bound;
    red.threshold = (k + gamma * n + gamma * red.layer3_count) * R / (1.0 - gamma);
    red.gap_bound = (k + gamma * (n - 1)) * R / (1.0 - gamma);
    return red;
}

/// SetCover -> fMDP-AS reduction: the same layered fMDP with Example-2
/// actuator semantics in place of sensors.
inline AsReduction setcover_to_fmdp_as(const SetCoverInstance& sc, double c_exp, double R,
                                       double gamma) {
    SsReduction ss = setcover_to_fmdp_ss(sc, c_exp, R, gamma);
    AsReduction red;
    red.source = ss.source;
    red.layer3_count = ss.layer3_count;
    red.R = ss.R;
    red.gamma = ss.gamma;
    red.delta = ss.delta;
    red.c_exp = ss.c_exp;
    red.threshold = ss.threshold;
    red.gap_bound = ss.gap_bound;
    red.problem.fmdp = std::move(ss.problem.fmdp);
    for (const auto& s : ss.problem.catalog.sensors)
        red.problem.catalog.actuators.push_back(Actuator{s.variable, {}, s.cost});
    red.problem.catalog.budget = ss.problem.catalog.budget;
    return red;
}

// ---------------------------------------------------------------------------
// Random instance distributions

namespace detail {

inline std::vector<double> random_simplex_row(int n, Rng& rng) {
    std::vector<double> row(n);
    double sum = 0.0;
    for (double& v : row) {
        v = -std::log(std::max(uniform01(rng), 1e-300));
        sum += v;
    }
    for (double& v : row) v /= sum;
    // exact renormalization of the largest entry so rows sum to 1 at 1e-12
    double total = std::accumulate(row.begin(), row.end(), 0.0);
    auto it = std::max_element(row.begin(), row.end());
    *it += 1.0 - total;
    return row;
}

inline double half_normal(double sigma, Rng& rng) {
    // Box-Muller, deterministic across standard libraries
    double u1 = std::max(uniform01(rng), 1e-300);
    double u2 = uniform01(rng);
    double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    return std::abs(z) * sigma;
}

inline ExplicitMdp random_explicit(int n_states, int n_actions, double gamma, Rng& rng) {
    ExplicitMdp m;
    m.n_states = n_states;
    m.n_actions = n_actions;
    m.discount = gamma;
    m.transitions.resize(static_cast<std::size_t>(n_actions) * n_states * n_states);
    m.rewards.resize(static_cast<std::size_t>(n_states) * n_actions);
    double sigma = 10.0 * uniform01(rng);
    for (int a = 0; a < n_actions; ++a)
        for (int s = 0; s < n_states; ++s) {
            auto row = random_simplex_row(n_states, rng);
            for (int s2 = 0; s2 < n_states; ++s2) m.t(a, s, s2) = row[s2];
        }
    for (int s = 0; s < n_states; ++s)
        for (int a = 0; a < n_actions; ++a) m.r(s, a) = half_normal(sigma, rng);
    return m;
}

}  // namespace detail

/// Random fMDP-SS instance: 16 joint states over 4 binary variables, 16
/// unfactored actions, per-(s,a) transition rows uniform on the simplex,
/// rewards |N(0, sigma)| with sigma ~ U(0,10), four noiseless
/// single-variable sensors at unit cost, budget 2.
inline ExplicitSensorProblem random_fmdp_ss_instance(std::uint64_t seed, double gamma = 0.9) {
    Rng rng = make_rng(seed, /*task=*/101);
    ExplicitSensorProblem p;
    p.model = detail::random_explicit(16, 16, gamma, rng);
    p.model.state_factor_sizes = {2, 2, 2, 2};
    p.initial_belief.assign(16, 1.0 / 16.0);
    for (int i = 0; i < 4; ++i) p.catalog.sensors.push_back(Sensor{i, {}, 0, 1.0});
    p.catalog.budget = 2.0;
    return p;
}

/// Random fMDP-AS instance: 20 states; two base actions always available
/// plus one extra action per actuator; 10 unit-cost actuators, budget 5.
inline ExplicitActuatorProblem random_fmdp_as_instance(std::uint64_t seed, double gamma = 0.9) {
    Rng rng = make_rng(seed, /*task=*/202);
    ExplicitActuatorProblem p;
    p.model = detail::random_explicit(20, 12, gamma, rng);
    p.base_actions = {0, 1};
    for (int i = 0; i < 10; ++i) p.catalog.actuators.push_back(Actuator{-1, {2 + i}, 1.0});
    p.catalog.budget = 5.0;
    p.initial_distribution.assign(20, 1.0 / 20.0);
    return p;
}

}  // namespace fmdpsel
