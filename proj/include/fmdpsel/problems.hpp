#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "fmdpsel/errors.hpp"
#include "fmdpsel/fmdp.hpp"
#include "fmdpsel/mdp.hpp"
#include "fmdpsel/pomdp.hpp"
#include "fmdpsel/selection.hpp"

namespace fmdpsel {

/// A candidate sensor. `variable` names the observed state variable; the
/// optional likelihood (rows: variable value, cols: symbol) models a noisy
/// channel, empty meaning a noiseless identity readout.
struct Sensor {
    int variable = 0;
    std::vector<double> likelihood;  // empty => noiseless
    int n_symbols = 0;               // 0 => variable domain size
    double cost = 1.0;
};

struct SensorCatalog {
    std::vector<Sensor> sensors;
    double budget = 1.0;

    void validate() const {
        if (budget <= 0) throw input_error("sensor budget must be positive");
        for (const auto& s : sensors)
            if (s.cost < 0) throw input_error("sensor costs must be nonnegative");
    }
    std::vector<double> costs() const {
        std::vector<double> c;
        for (const auto& s : sensors) c.push_back(s.cost);
        return c;
    }
};

/// A candidate actuator. For factored problems `variable` names the state
/// variable whose full action set the actuator unlocks (unselected factors
/// are pinned to the default action 0). For explicit problems
/// `explicit_actions` lists the joint-action indices it grants on top of
/// the always-available base actions.
struct Actuator {
    int variable = -1;
    std::vector<int> explicit_actions;
    double cost = 1.0;
};

struct ActuatorCatalog {
    std::vector<Actuator> actuators;
    double budget = 1.0;

    void validate() const {
        if (budget <= 0) throw input_error("actuator budget must be positive");
        for (const auto& a : actuators)
            if (a.cost < 0) throw input_error("actuator costs must be nonnegative");
    }
    std::vector<double> costs() const {
        std::vector<double> c;
        for (const auto& a : actuators) c.push_back(a.cost);
        return c;
    }
};

struct FactoredSensorProblem {
    FactoredMdp fmdp;
    SensorCatalog catalog;
};

struct FactoredActuatorProblem {
    FactoredMdp fmdp;
    ActuatorCatalog catalog;
};

/// Sensor-selection problem over an already-explicit model. The factored
/// structure survives only through `model.state_factor_sizes`, which is
/// what sensors observe.
struct ExplicitSensorProblem {
    ExplicitMdp model;
    BeliefState initial_belief;
    SensorCatalog catalog;
};

struct ExplicitActuatorProblem {
    ExplicitMdp model;  // full action space
    std::vector<int> base_actions;
    ActuatorCatalog catalog;
    std::vector<double> initial_distribution;
};

struct EvalOptions {
    double eta = 1e-6;          // POMDP value tolerance
    double mdp_tol = 1e-9;      // unused by policy iteration (exact)
    PomdpSolveOptions pomdp_options() const {
        PomdpSolveOptions o;
        o.eta = eta;
        return o;
    }
};

// ---------------------------------------------------------------------------
// POMDP assembly helpers

namespace detail {

/// Builds the joint observation model of a sensor subset over an explicit
/// model with factor structure: the joint symbol is the tuple of per-sensor
/// outputs on the arrival state; an empty subset yields one dummy symbol.
inline void attach_observation_model(PomdpInstance& pomdp,
                                     const std::vector<const Sensor*>& selected,
                                     const std::vector<int>& factor_sizes) {
    const int S = pomdp.mdp.n_states;
    const int A = pomdp.mdp.n_actions;
    std::vector<int> radices;
    for (const Sensor* s : selected) {
        int dom = factor_sizes.at(s->variable);
        radices.push_back(s->n_symbols > 0 ? s->n_symbols : dom);
    }
    int n_obs = 1;
    for (int r : radices) n_obs *= r;
    pomdp.n_obs = n_obs;
    pomdp.obs_lik.assign(static_cast<std::size_t>(A) * S * n_obs, 0.0);
    for (int s2 = 0; s2 < S; ++s2) {
        // likelihood of each joint symbol given arrival state (action-free)
        for (int ob = 0; ob < n_obs; ++ob) {
            double lik = 1.0;
            int rem = ob;
            for (std::size_t i = radices.size(); i-- > 0;) {
                int sym = rem % radices[i];
                rem /= radices[i];
                const Sensor* sen = selected[i];
                int val = [&] {
                    // factor value of s2 for this sensor's variable
                    std::size_t idx = static_cast<std::size_t>(s2);
                    int v = 0;
                    for (std::size_t f = factor_sizes.size(); f-- > 0;) {
                        int fv = static_cast<int>(idx % factor_sizes[f]);
                        idx /= factor_sizes[f];
                        if (static_cast<int>(f) == sen->variable) v = fv;
                    }
                    return v;
                }();
                if (sen->likelihood.empty())
                    lik *= (sym == val) ? 1.0 : 0.0;
                else
                    lik *= sen->likelihood[val * radices[i] + sym];
                if (lik == 0.0) break;
            }
            if (lik != 0.0)
                for (int a = 0; a < A; ++a)
                    pomdp.obs_lik[(static_cast<std::size_t>(a) * S + s2) * n_obs + ob] = lik;
        }
    }
}

/// Value of a solved POMDP when a sensor reading of the initial state is
/// available before the first action: the expectation over the initial
/// symbol of the value at the conditioned belief.
inline double value_with_initial_observation(const PomdpInstance& m,
                                             const std::vector<AlphaVector>& vectors) {
    const BeliefState& b0 = m.initial_belief;
    if (m.n_obs == 1) return value_at(vectors, b0);
    double total = 0.0;
    for (int ob = 0; ob < m.n_obs; ++ob) {
        BeliefState cond(m.mdp.n_states, 0.0);
        double p = 0.0;
        for (int s = 0; s < m.mdp.n_states; ++s) {
            cond[s] = m.o(0, s, ob) * b0[s];
            p += cond[s];
        }
        if (p <= 1e-300) continue;
        for (double& v : cond) v /= p;
        total += p * value_at(vectors, cond);
    }
    return total;
}

/// Connected components of state variables under reward scopes and kernel
/// parent sets. Transitions are product-form across components and rewards
/// are additive by component, so the problem value is the sum of the
/// per-component values.
inline std::vector<std::vector<int>> reward_clusters(const FactoredMdp& m) {
    const int n = m.num_vars();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    for (const auto& rc : m.rewards)
        for (std::size_t i = 1; i < rc.state_scope.size(); ++i)
            unite(rc.state_scope[0], rc.state_scope[i]);
    for (int v = 0; v < n; ++v)
        for (int p : m.kernels[v].parents)
            if (p != v) unite(v, p);
    std::vector<std::vector<int>> clusters(n);
    for (int v = 0; v < n; ++v) clusters[find(v)].push_back(v);
    std::vector<std::vector<int>> out;
    for (auto& c : clusters)
        if (!c.empty()) out.push_back(std::move(c));
    return out;
}

/// Extracts the sub-fMDP induced by one variable cluster, remapping
/// variable and action-factor indices. Rewards fully inside the cluster
/// are kept; rewards outside it must not touch cluster variables.
struct ClusterProblem {
    FactoredMdp sub;
    std::vector<int> vars;            // original variable ids, ascending
    std::vector<int> action_factors;  // original action factor ids, ascending
    bool has_reward = false;
};

inline ClusterProblem extract_cluster(const FactoredMdp& m, std::vector<int> vars) {
    std::sort(vars.begin(), vars.end());
    ClusterProblem cp;
    cp.vars = vars;
    auto var_pos = [&](int v) {
        auto it = std::lower_bound(vars.begin(), vars.end(), v);
        return static_cast<int>(it - vars.begin());
    };
    // action factors used by the cluster's kernels or rewards
    std::vector<int> afs;
    for (int v : vars) afs.push_back(m.kernels[v].action_factor);
    for (const auto& rc : m.rewards) {
        bool inside = !rc.state_scope.empty() &&
                      std::binary_search(vars.begin(), vars.end(), rc.state_scope.front());
        if (inside)
            for (int f : rc.action_scope) afs.push_back(f);
    }
    std::sort(afs.begin(), afs.end());
    afs.erase(std::unique(afs.begin(), afs.end()), afs.end());
    cp.action_factors = afs;
    auto af_pos = [&](int f) {
        auto it = std::lower_bound(afs.begin(), afs.end(), f);
        if (it == afs.end() || *it != f)
            throw input_error("extract_cluster: reward action scope crosses clusters");
        return static_cast<int>(it - afs.begin());
    };

    cp.sub.discount = m.discount;
    for (int v : vars) cp.sub.state_domains.push_back(m.state_domains[v]);
    for (int f : afs) cp.sub.action_domains.push_back(m.action_domains[f]);
    for (int v : vars) {
        TransitionKernel k = m.kernels[v];
        k.action_factor = af_pos(k.action_factor);
        for (int& p : k.parents) p = var_pos(p);
        cp.sub.kernels.push_back(std::move(k));
    }
    for (const auto& rc : m.rewards) {
        if (rc.state_scope.empty()) continue;
        if (!std::binary_search(vars.begin(), vars.end(), rc.state_scope.front())) continue;
        RewardComponent r = rc;
        for (int& v : r.state_scope) v = var_pos(v);
        for (int& f : r.action_scope) f = af_pos(f);
        cp.sub.rewards.push_back(std::move(r));
        cp.has_reward = true;
    }
    if (!m.initial_belief_factors.empty())
        for (int v : vars) cp.sub.initial_belief_factors.push_back(m.initial_belief_factors[v]);
    return cp;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Sensor evaluation

/// Optimal return of an explicit sensor-selection problem for one subset,
/// via the exact POMDP solver. `subset` holds indices into the catalog.
inline double evaluate_sensor_set(const ExplicitSensorProblem& prob, const std::vector<int>& subset,
                                  const EvalOptions& opts = {}) {
    PomdpInstance pomdp;
    pomdp.mdp = prob.model;
    pomdp.initial_belief = prob.initial_belief;
    std::vector<const Sensor*> selected;
    for (int i : subset) selected.push_back(&prob.catalog.sensors.at(i));
    detail::attach_observation_model(pomdp, selected, prob.model.state_factor_sizes);
    auto res = solve_infinite_horizon(pomdp, opts.pomdp_options());
    if (!res.converged)
        throw capacity_error("evaluate_sensor_set: POMDP solve hit a stage or vector cap");
    return detail::value_with_initial_observation(pomdp, res.vectors);
}

/// Factored variant: decomposes into reward clusters, solves each cluster's
/// POMDP with the subset's sensors restricted to that cluster, and sums.
inline double evaluate_sensor_set(const FactoredSensorProblem& prob, const std::vector<int>& subset,
                                  const EvalOptions& opts = {}) {
    double total = 0.0;
    for (const auto& vars : detail::reward_clusters(prob.fmdp)) {
        auto cp = detail::extract_cluster(prob.fmdp, vars);
        if (!cp.has_reward) continue;
        ExplicitSensorProblem ep;
        ep.model = cp.sub.flatten();
        ep.initial_belief = cp.sub.joint_initial_belief();
        std::vector<int> local_subset;
        for (int i : subset) {
            const Sensor& s = prob.catalog.sensors.at(i);
            auto it = std::lower_bound(cp.vars.begin(), cp.vars.end(), s.variable);
            if (it == cp.vars.end() || *it != s.variable) continue;
            Sensor local = s;
            local.variable = static_cast<int>(it - cp.vars.begin());
            ep.catalog.sensors.push_back(std::move(local));
            local_subset.push_back(static_cast<int>(ep.catalog.sensors.size()) - 1);
        }
        ep.catalog.budget = prob.catalog.budget;
        total += evaluate_sensor_set(ep, local_subset, opts);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Actuator evaluation

/// Optimal return of an explicit actuator-selection problem for one subset:
/// restrict the action space to base + granted actions, solve by policy
/// iteration, and take the expectation under the initial distribution.
inline double evaluate_actuator_set(const ExplicitActuatorProblem& prob,
                                    const std::vector<int>& subset, const EvalOptions& = {}) {
    std::vector<int> actions = prob.base_actions;
    for (int i : subset) {
        const auto& grants = prob.catalog.actuators.at(i).explicit_actions;
        actions.insert(actions.end(), grants.begin(), grants.end());
    }
    std::sort(actions.begin(), actions.end());
    actions.erase(std::unique(actions.begin(), actions.end()), actions.end());
    if (actions.empty()) throw input_error("evaluate_actuator_set: no available actions");

    ExplicitMdp sub;
    sub.n_states = prob.model.n_states;
    sub.n_actions = static_cast<int>(actions.size());
    sub.discount = prob.model.discount;
    sub.state_factor_sizes = prob.model.state_factor_sizes;
    sub.transitions.resize(static_cast<std::size_t>(sub.n_actions) * sub.n_states * sub.n_states);
    sub.rewards.resize(static_cast<std::size_t>(sub.n_states) * sub.n_actions);
    for (int ai = 0; ai < sub.n_actions; ++ai) {
        int a = actions[ai];
        for (int s = 0; s < sub.n_states; ++s) {
            sub.r(s, ai) = prob.model.r(s, a);
            for (int s2 = 0; s2 < sub.n_states; ++s2) sub.t(ai, s, s2) = prob.model.t(a, s, s2);
        }
    }
    auto [values, policy] = policy_iteration(sub);
    double v = 0.0;
    for (int s = 0; s < sub.n_states; ++s) v += prob.initial_distribution[s] * values[s];
    return v;
}

/// Factored variant: per reward cluster, pin unselected factors to the
/// default action 0, flatten the restricted action space, and solve.
inline double evaluate_actuator_set(const FactoredActuatorProblem& prob,
                                    const std::vector<int>& subset, const EvalOptions& opts = {}) {
    double total = 0.0;
    for (const auto& vars : detail::reward_clusters(prob.fmdp)) {
        auto cp = detail::extract_cluster(prob.fmdp, vars);
        if (!cp.has_reward) continue;
        std::vector<std::vector<int>> allowed(cp.sub.action_domains.size(), std::vector<int>{0});
        for (int i : subset) {
            const Actuator& act = prob.catalog.actuators.at(i);
            if (act.variable < 0) continue;
            auto it = std::lower_bound(cp.vars.begin(), cp.vars.end(), act.variable);
            if (it == cp.vars.end() || *it != act.variable) continue;
            int local_var = static_cast<int>(it - cp.vars.begin());
            int f = cp.sub.kernels[local_var].action_factor;
            allowed[f].resize(cp.sub.action_domains[f]);
            std::iota(allowed[f].begin(), allowed[f].end(), 0);
        }
        ExplicitMdp sub = cp.sub.flatten_restricted(allowed);
        auto [values, policy] = policy_iteration(sub);
        auto b0 = cp.sub.joint_initial_belief();
        double v = 0.0;
        for (int s = 0; s < sub.n_states; ++s) v += b0[s] * values[s];
        total += v;
        (void)opts;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Objective adapters

inline SubsetObjective sensor_objective(const FactoredSensorProblem& prob,
                                        const EvalOptions& opts = {}) {
    return [&prob, opts](const std::vector<int>& subset) {
        return evaluate_sensor_set(prob, subset, opts);
    };
}

inline SubsetObjective sensor_objective(const ExplicitSensorProblem& prob,
                                        const EvalOptions& opts = {}) {
    return [&prob, opts](const std::vector<int>& subset) {
        return evaluate_sensor_set(prob, subset, opts);
    };
}

inline SubsetObjective actuator_objective(const FactoredActuatorProblem& prob,
                                          const EvalOptions& opts = {}) {
    return [&prob, opts](const std::vector<int>& subset) {
        return evaluate_actuator_set(prob, subset, opts);
    };
}

inline SubsetObjective actuator_objective(const ExplicitActuatorProblem& prob,
                                          const EvalOptions& opts = {}) {
    return [&prob, opts](const std::vector<int>& subset) {
        return evaluate_actuator_set(prob, subset, opts);
    };
}

}  // namespace fmdpsel
