#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "fmdpsel/errors.hpp"
#include "fmdpsel/fmdp.hpp"

namespace fmdpsel {

using ValueFunction = std::vector<double>;
using DeterministicPolicy = std::vector<int>;

namespace detail {

inline double bellman_backup(const ExplicitMdp& m, const ValueFunction& v, ValueFunction& out,
                             DeterministicPolicy* policy) {
    double residual = 0.0;
    for (int s = 0; s < m.n_states; ++s) {
        double best = -std::numeric_limits<double>::infinity();
        int best_a = 0;
        for (int a = 0; a < m.n_actions; ++a) {
            double q = m.r(s, a);
            for (int s2 = 0; s2 < m.n_states; ++s2) {
                double p = m.t(a, s, s2);
                if (p != 0.0) q += m.discount * p * v[s2];
            }
            if (q > best) {  // ties keep the lowest action index
                best = q;
                best_a = a;
            }
        }
        residual = std::max(residual, std::abs(best - v[s]));
        out[s] = best;
        if (policy) (*policy)[s] = best_a;
    }
    return residual;
}

}  // namespace detail

/// Solves (I - gamma P_pi) V = R_pi by a dense LU factorization.
inline ValueFunction evaluate_fixed_policy(const ExplicitMdp& m, const DeterministicPolicy& p) {
    if (static_cast<int>(p.size()) != m.n_states)
        throw input_error("evaluate_fixed_policy: policy size mismatch");
    const int n = m.n_states;
    Eigen::MatrixXd A = Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd rhs(n);
    for (int s = 0; s < n; ++s) {
        int a = p[s];
        if (a < 0 || a >= m.n_actions) throw input_error("evaluate_fixed_policy: invalid action");
        for (int s2 = 0; s2 < n; ++s2) A(s, s2) -= m.discount * m.t(a, s, s2);
        rhs(s) = m.r(s, a);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd v = lu.solve(rhs);
    if (!v.allFinite()) throw numeric_error("evaluate_fixed_policy: singular evaluation system");
    return ValueFunction(v.data(), v.data() + n);
}

/// Value iteration to a sup-norm Bellman residual of at most `tol`, with
/// the greedy policy extracted from the converged values.
inline std::pair<ValueFunction, DeterministicPolicy> value_iteration(const ExplicitMdp& m,
                                                                     double tol = 1e-9) {
    if (tol <= 0) throw input_error("value_iteration: tol must be positive");
    ValueFunction v(m.n_states, 0.0), next(m.n_states, 0.0);
    DeterministicPolicy policy(m.n_states, 0);
    // residual <= tol * (1-gamma)/gamma guarantees sup-norm distance to V*
    // within tol; iterate on the raw residual against tol directly, which
    // is the contract stated for this solver.
    while (true) {
        double residual = detail::bellman_backup(m, v, next, &policy);
        v.swap(next);
        if (residual <= tol) break;
    }
    return {v, policy};
}

/// Howard policy iteration with exact linear policy evaluation. Each
/// improvement step is verified to be value-monotone.
inline std::pair<ValueFunction, DeterministicPolicy> policy_iteration(const ExplicitMdp& m) {
    DeterministicPolicy policy(m.n_states, 0);
    ValueFunction v = evaluate_fixed_policy(m, policy);
    const double improve_eps = 1e-10;
    for (int round = 0; round < 10'000; ++round) {
        bool changed = false;
        DeterministicPolicy next = policy;
        for (int s = 0; s < m.n_states; ++s) {
            double best = -std::numeric_limits<double>::infinity();
            int best_a = 0;
            for (int a = 0; a < m.n_actions; ++a) {
                double q = m.r(s, a);
                for (int s2 = 0; s2 < m.n_states; ++s2) q += m.discount * m.t(a, s, s2) * v[s2];
                if (q > best) {
                    best = q;
                    best_a = a;
                }
            }
            if (best > v[s] + improve_eps && best_a != policy[s]) {
                next[s] = best_a;
                changed = true;
            }
        }
        if (!changed) return {v, policy};
        ValueFunction v2 = evaluate_fixed_policy(m, next);
        for (int s = 0; s < m.n_states; ++s)
            if (v2[s] < v[s] - 1e-8)
                throw numeric_error("policy_iteration: improvement step decreased a state value");
        policy.swap(next);
        v.swap(v2);
    }
    throw numeric_error("policy_iteration: did not converge in 10000 rounds");
}

}  // namespace fmdpsel
