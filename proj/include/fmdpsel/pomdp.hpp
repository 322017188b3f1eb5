#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "fmdpsel/errors.hpp"
#include "fmdpsel/fmdp.hpp"
#include "fmdpsel/lp.hpp"

namespace fmdpsel {

struct impossible_observation : input_error {
    explicit impossible_observation(const std::string& what) : input_error(what) {}
};

using BeliefState = std::vector<double>;

/// Linear value-function piece over states, tagged with the action whose
/// conditional plan it represents.
struct AlphaVector {
    std::vector<double> values;
    int action = 0;

    double dot(const BeliefState& b) const {
        double v = 0.0;
        for (std::size_t s = 0; s < values.size(); ++s) v += values[s] * b[s];
        return v;
    }
};

/// Explicit POMDP: an enumerated MDP plus an observation likelihood
/// O(o | s', a) conditioned on the arrival state.
struct PomdpInstance {
    ExplicitMdp mdp;
    int n_obs = 1;
    std::vector<double> obs_lik;  // [a][s'][o]
    BeliefState initial_belief;

    double o(int a, int s2, int obs) const {
        return obs_lik[(static_cast<std::size_t>(a) * mdp.n_states + s2) * n_obs + obs];
    }

    void validate() const {
        mdp.validate();
        if (obs_lik.size() != static_cast<std::size_t>(mdp.n_actions) * mdp.n_states * n_obs)
            throw input_error("observation likelihood has wrong size");
        for (int a = 0; a < mdp.n_actions; ++a)
            for (int s2 = 0; s2 < mdp.n_states; ++s2) {
                double sum = 0;
                for (int ob = 0; ob < n_obs; ++ob) sum += o(a, s2, ob);
                if (std::abs(sum - 1.0) > 1e-9)
                    throw input_error("observation likelihood row not normalized");
            }
        if (!initial_belief.empty() &&
            static_cast<int>(initial_belief.size()) != mdp.n_states)
            throw input_error("initial belief dimension mismatch");
    }
};

inline double belief_reward(const BeliefState& b, int a, const PomdpInstance& m) {
    double v = 0.0;
    for (int s = 0; s < m.mdp.n_states; ++s) v += b[s] * m.mdp.r(s, a);
    return v;
}

/// Probability of observing `obs` after taking `a` from belief `b`.
inline double observation_prob(const BeliefState& b, int a, int obs, const PomdpInstance& m) {
    double p = 0.0;
    for (int s2 = 0; s2 < m.mdp.n_states; ++s2) {
        double arrive = 0.0;
        for (int s = 0; s < m.mdp.n_states; ++s) arrive += m.mdp.t(a, s, s2) * b[s];
        p += m.o(a, s2, obs) * arrive;
    }
    return p;
}

/// Bayes update b'(s') proportional to O(o|s',a) sum_s T(s'|s,a) b(s).
inline BeliefState belief_update(const BeliefState& b, int a, int obs, const PomdpInstance& m) {
    BeliefState next(m.mdp.n_states, 0.0);
    double norm = 0.0;
    for (int s2 = 0; s2 < m.mdp.n_states; ++s2) {
        double arrive = 0.0;
        for (int s = 0; s < m.mdp.n_states; ++s) arrive += m.mdp.t(a, s, s2) * b[s];
        next[s2] = m.o(a, s2, obs) * arrive;
        norm += next[s2];
    }
    if (norm <= 1e-300)
        throw impossible_observation("belief_update: observation has zero probability");
    for (double& v : next) v /= norm;
    return next;
}

/// Pointwise max over a set of alpha vectors.
inline double value_at(const std::vector<AlphaVector>& vs, const BeliefState& b) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& a : vs) best = std::max(best, a.dot(b));
    return best;
}

namespace detail {

inline bool lex_less(const AlphaVector& a, const AlphaVector& b) {
    if (a.action != b.action) return a.action < b.action;
    return std::lexicographical_compare(a.values.begin(), a.values.end(), b.values.begin(),
                                        b.values.end());
}

inline bool pointwise_leq(const std::vector<double>& a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

}  // namespace detail

/// Exact domination pruning: a pointwise filter followed by Lark-style
/// LP witness search. The returned set attains the same max over every
/// belief and contains no dominated member.
inline std::vector<AlphaVector> prune(std::vector<AlphaVector> vs, double tol = 1e-11) {
    if (vs.empty()) return vs;
    std::sort(vs.begin(), vs.end(), detail::lex_less);
    vs.erase(std::unique(vs.begin(), vs.end(),
                         [](const AlphaVector& a, const AlphaVector& b) {
                             return a.values == b.values;
                         }),
             vs.end());
    // pointwise domination filter
    std::vector<char> dominated(vs.size(), 0);
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (std::size_t j = 0; j < vs.size(); ++j)
            if (j != i && !dominated[j] && detail::pointwise_leq(vs[i].values, vs[j].values) &&
                (vs[i].values != vs[j].values || j < i)) {
                dominated[i] = 1;
                break;
            }
    std::vector<AlphaVector> kept;
    for (std::size_t i = 0; i < vs.size(); ++i)
        if (!dominated[i]) kept.push_back(std::move(vs[i]));
    if (kept.size() <= 1) return kept;

    std::vector<AlphaVector> result;
    std::vector<std::vector<double>> result_vals;
    std::vector<AlphaVector> pending(std::move(kept));
    while (!pending.empty()) {
        GapResult g = best_belief_gap(pending.front().values, result_vals);
        if (g.gap > tol) {
            // keep the best member of `pending` at the witness belief
            std::size_t best_i = 0;
            double best_v = -std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < pending.size(); ++i) {
                double v = pending[i].dot(g.witness);
                if (v > best_v + 1e-12) {
                    best_v = v;
                    best_i = i;
                }
            }
            result_vals.push_back(pending[best_i].values);
            result.push_back(std::move(pending[best_i]));
            pending.erase(pending.begin() + best_i);
        } else {
            pending.erase(pending.begin());
        }
    }
    return result;
}

/// Sup-norm distance between two alpha-set value functions over the belief
/// simplex, computed by per-vector LPs.
inline double value_function_distance(const std::vector<AlphaVector>& v1,
                                      const std::vector<AlphaVector>& v2) {
    auto one_side = [](const std::vector<AlphaVector>& from, const std::vector<AlphaVector>& to) {
        std::vector<std::vector<double>> to_vals;
        to_vals.reserve(to.size());
        for (const auto& a : to) to_vals.push_back(a.values);
        double d = -std::numeric_limits<double>::infinity();
        for (const auto& a : from) d = std::max(d, best_belief_gap(a.values, to_vals).gap);
        return d;
    };
    return std::max({one_side(v1, v2), one_side(v2, v1), 0.0});
}

struct PomdpSolveResult {
    std::vector<AlphaVector> vectors;
    double value_at_b0 = 0.0;
    int stages = 0;
    bool converged = false;  // false means a cap hit; result is partial

    double value(const BeliefState& b) const { return value_at(vectors, b); }
};

struct PomdpSolveOptions {
    double eta = 1e-6;
    int max_stages = 2000;
    std::size_t max_vectors = 20'000;
};

namespace detail {

/// One stage of incremental pruning: cross-sums over observations inside
/// each action, discounted back-projections of the previous stage set.
inline std::vector<AlphaVector> backup_stage(const PomdpInstance& m,
                                             const std::vector<AlphaVector>& prev,
                                             std::size_t max_vectors) {
    const int S = m.mdp.n_states;
    std::vector<AlphaVector> next;
    for (int a = 0; a < m.mdp.n_actions; ++a) {
        // back-projections gamma * sum_{s'} O(o|s',a) T(s'|s,a) alpha(s')
        std::vector<std::vector<AlphaVector>> proj(m.n_obs);
        for (int ob = 0; ob < m.n_obs; ++ob) {
            proj[ob].reserve(prev.size());
            for (const auto& alpha : prev) {
                AlphaVector g;
                g.action = a;
                g.values.assign(S, 0.0);
                for (int s = 0; s < S; ++s) {
                    double v = 0.0;
                    for (int s2 = 0; s2 < S; ++s2) {
                        double p = m.mdp.t(a, s, s2);
                        if (p != 0.0) v += p * m.o(a, s2, ob) * alpha.values[s2];
                    }
                    g.values[s] = m.mdp.discount * v;
                }
                proj[ob].push_back(std::move(g));
            }
            proj[ob] = prune(std::move(proj[ob]));
        }
        std::vector<AlphaVector> acc = proj[0];
        for (int ob = 1; ob < m.n_obs; ++ob) {
            std::vector<AlphaVector> sum;
            sum.reserve(acc.size() * proj[ob].size());
            for (const auto& x : acc)
                for (const auto& y : proj[ob]) {
                    AlphaVector z;
                    z.action = a;
                    z.values.resize(S);
                    for (int s = 0; s < S; ++s) z.values[s] = x.values[s] + y.values[s];
                    sum.push_back(std::move(z));
                }
            if (sum.size() > max_vectors)
                throw capacity_error("pomdp backup: cross-sum exceeded the vector cap");
            acc = prune(std::move(sum));
        }
        for (auto& alpha : acc)
            for (int s = 0; s < S; ++s) alpha.values[s] += m.mdp.r(s, a);
        next.insert(next.end(), std::make_move_iterator(acc.begin()),
                    std::make_move_iterator(acc.end()));
    }
    return prune(std::move(next));
}

}  // namespace detail

/// Alpha-vector value iteration for exactly `n` stages starting from the
/// zero value function (the n-step optimal value).
inline std::vector<AlphaVector> solve_finite_stages(const PomdpInstance& m, int n,
                                                    std::size_t max_vectors = 20'000) {
    std::vector<AlphaVector> v{AlphaVector{std::vector<double>(m.mdp.n_states, 0.0), 0}};
    for (int i = 0; i < n; ++i) v = detail::backup_stage(m, v, max_vectors);
    return v;
}

/// Infinite-horizon incremental pruning, stopping when the sup-norm change
/// of the value function over the simplex falls below eta. Hitting a
/// stage or vector cap returns the partial answer flagged unconverged.
inline PomdpSolveResult solve_infinite_horizon(const PomdpInstance& m,
                                               const PomdpSolveOptions& opts = {}) {
    if (opts.eta <= 0) throw input_error("solve_infinite_horizon: eta must be positive");
    PomdpSolveResult res;
    std::vector<AlphaVector> v{AlphaVector{std::vector<double>(m.mdp.n_states, 0.0), 0}};
    for (int stage = 1; stage <= opts.max_stages; ++stage) {
        std::vector<AlphaVector> next;
        try {
            next = detail::backup_stage(m, v, opts.max_vectors);
        } catch (const capacity_error&) {
            res.vectors = std::move(v);
            res.stages = stage - 1;
            res.converged = false;
            if (!m.initial_belief.empty()) res.value_at_b0 = res.value(m.initial_belief);
            return res;
        }
        double dist = value_function_distance(next, v);
        v = std::move(next);
        res.stages = stage;
        if (dist <= opts.eta || v.size() > opts.max_vectors) {
            res.converged = dist <= opts.eta;
            break;
        }
    }
    res.vectors = std::move(v);
    if (!m.initial_belief.empty()) res.value_at_b0 = res.value(m.initial_belief);
    return res;
}

/// Brute-force finite-horizon verifier: exhaustive expectimax over all
/// depth-T conditional plans from the initial belief. Enforced caps keep
/// the enumeration desk-scale.
inline double finite_horizon_oracle(const PomdpInstance& m, int horizon,
                                    bool initial_observation = false) {
    if (horizon < 0) throw input_error("finite_horizon_oracle: negative horizon");
    if (horizon > 4 || m.mdp.n_actions > 4 || m.n_obs > 4)
        throw capacity_error("finite_horizon_oracle: enumeration cap exceeded (T<=4, |A|<=4, |O|<=4)");
    std::function<double(const BeliefState&, int)> best = [&](const BeliefState& b,
                                                              int depth) -> double {
        if (depth == 0) return 0.0;
        double best_v = -std::numeric_limits<double>::infinity();
        for (int a = 0; a < m.mdp.n_actions; ++a) {
            double v = belief_reward(b, a, m);
            for (int ob = 0; ob < m.n_obs; ++ob) {
                double p = observation_prob(b, a, ob, m);
                if (p <= 1e-14) continue;
                v += m.mdp.discount * p * best(belief_update(b, a, ob, m), depth - 1);
            }
            best_v = std::max(best_v, v);
        }
        return best_v;
    };
    if (m.initial_belief.empty())
        throw input_error("finite_horizon_oracle: instance has no initial belief");
    if (!initial_observation || m.n_obs == 1) return best(m.initial_belief, horizon);
    // Sensors that also report the initial state: condition b0 on the
    // pre-action symbol (the likelihood is action independent, so channel 0
    // stands in for "no preceding action").
    double total = 0.0;
    for (int ob = 0; ob < m.n_obs; ++ob) {
        BeliefState cond(m.mdp.n_states, 0.0);
        double p = 0.0;
        for (int s = 0; s < m.mdp.n_states; ++s) {
            cond[s] = m.o(0, s, ob) * m.initial_belief[s];
            p += cond[s];
        }
        if (p <= 1e-14) continue;
        for (double& v : cond) v /= p;
        total += p * best(cond, horizon);
    }
    return total;
}

}  // namespace fmdpsel
