#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "fmdpsel/errors.hpp"

namespace fmdpsel {

using JointState = std::vector<int>;
using JointAction = std::vector<int>;

/// One-hot 4-bit code of a 4-state variable value, A=1000, B=0100, C=0010,
/// D=0001 (bit 3 is the leftmost printed bit).
inline std::uint8_t onehot_code(int value, int domain = 4) {
    if (value < 0 || value >= domain) throw input_error("onehot_code: value out of domain");
    return static_cast<std::uint8_t>(1u << (domain - 1 - value));
}

inline int onehot_decode(std::uint8_t code, int domain = 4) {
    for (int v = 0; v < domain; ++v)
        if (code == (1u << (domain - 1 - v))) return v;
    throw input_error("onehot_decode: not a one-hot code");
}

/// Bitwise OR over the incident layer-1 codes, then AND with the C bit
/// (0010). An empty incidence set yields 0000: the element is covered by
/// nothing and can never trigger its reward.
inline std::uint8_t tilde_state(std::span<const std::uint8_t> layer1_codes,
                                std::span<const int> incident) {
    std::uint8_t acc = 0;
    for (int j : incident) {
        if (j < 0 || j >= static_cast<int>(layer1_codes.size()))
            throw input_error("tilde_state: incidence index out of range");
        acc |= layer1_codes[j];
    }
    return static_cast<std::uint8_t>(acc & 0b0010u);
}

/// One additive term of the fMDP reward. Evaluation reads only the declared
/// state/action scopes. Table components store a dense mixed-radix table;
/// the tilde kinds evaluate the layered bitwise predicates over one-hot
/// codes of 4-state variables.
struct RewardComponent {
    enum class Kind { Table, TildeOr, TildeAndAll };

    Kind kind = Kind::Table;
    std::vector<int> state_scope;   // variable indices, ascending
    std::vector<int> action_scope;  // action-factor indices, ascending

    // Table: mixed-radix over (state_scope values, action_scope values),
    // first scope entry most significant.
    std::vector<double> table;

    // TildeOr / TildeAndAll: reward fired when the predicate holds.
    double fire_reward = 0.0;
    // TildeAndAll: positions *into state_scope* per universe element.
    // TildeOr uses the whole state_scope as a single group.
    std::vector<std::vector<int>> groups;

    double evaluate(std::span<const int> state_vals, std::span<const int> scope_domains,
                    std::span<const int> action_vals) const {
        switch (kind) {
        case Kind::Table: {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < state_vals.size(); ++i)
                idx = idx * scope_domains[i] + state_vals[i];
            for (std::size_t i = 0; i < action_vals.size(); ++i)
                idx = idx * scope_domains[state_vals.size() + i] + action_vals[i];
            return table.at(idx);
        }
        case Kind::TildeOr: {
            std::uint8_t acc = 0;
            for (std::size_t i = 0; i < state_vals.size(); ++i) acc |= onehot_code(state_vals[i]);
            return (acc & 0b0010u) == 0b0010u ? fire_reward : 0.0;
        }
        case Kind::TildeAndAll: {
            for (const auto& group : groups) {
                std::uint8_t acc = 0;
                for (int pos : group) acc |= onehot_code(state_vals[pos]);
                if ((acc & 0b0010u) != 0b0010u) return 0.0;
            }
            return fire_reward;
        }
        }
        throw input_error("RewardComponent: unknown kind");
    }
};

/// Per-variable transition kernel T_i(s_i' | parents, a_i). Parents default
/// to {i}; general DBN parent sets are allowed but every construction in
/// this library uses independent variables.
struct TransitionKernel {
    int action_factor = 0;
    std::vector<int> parents;  // variable indices read by this kernel
    // probs indexed by (a, parent values..., s'), first parent most
    // significant among the parent block.
    std::vector<double> probs;
};

struct ExplicitMdp;

/// Factored MDP: product-form transitions and additive scoped rewards.
/// Immutable after construction; all operations are pure.
struct FactoredMdp {
    std::vector<int> state_domains;
    std::vector<int> action_domains;
    std::vector<TransitionKernel> kernels;  // one per state variable
    std::vector<RewardComponent> rewards;
    double discount = 0.9;
    // Product-form initial belief, one distribution per variable. Empty if
    // the problem supplies an explicit joint belief instead.
    std::vector<std::vector<double>> initial_belief_factors;

    int num_vars() const { return static_cast<int>(state_domains.size()); }
    int num_action_factors() const { return static_cast<int>(action_domains.size()); }

    std::size_t joint_state_count() const {
        std::size_t n = 1;
        for (int d : state_domains) n *= static_cast<std::size_t>(d);
        return n;
    }
    std::size_t joint_action_count() const {
        std::size_t n = 1;
        for (int d : action_domains) n *= static_cast<std::size_t>(d);
        return n;
    }

    void validate(double row_tol = 1e-12) const {
        if (discount <= 0.0 || discount >= 1.0) throw input_error("discount must be in (0,1)");
        if (kernels.size() != state_domains.size())
            throw input_error("one kernel required per state variable");
        for (int i = 0; i < num_vars(); ++i) {
            const auto& k = kernels[i];
            int si = state_domains[i];
            int ai = action_domains.at(k.action_factor);
            std::size_t rows = static_cast<std::size_t>(ai);
            for (int p : k.parents) rows *= static_cast<std::size_t>(state_domains.at(p));
            if (k.probs.size() != rows * si)
                throw input_error("kernel " + std::to_string(i) + ": wrong table size");
            for (std::size_t r = 0; r < rows; ++r) {
                double sum = 0;
                for (int s2 = 0; s2 < si; ++s2) sum += k.probs[r * si + s2];
                if (std::abs(sum - 1.0) > row_tol)
                    throw input_error("kernel " + std::to_string(i) + ": row not stochastic");
            }
        }
        for (const auto& b : initial_belief_factors) {
            double sum = std::accumulate(b.begin(), b.end(), 0.0);
            if (std::abs(sum - 1.0) > 1e-12) throw input_error("initial belief factor not normalized");
        }
    }

    double kernel_prob(int var, std::span<const int> s, int a_val, int s2_val) const {
        const auto& k = kernels[var];
        std::size_t idx = a_val;
        for (int p : k.parents) idx = idx * state_domains[p] + s[p];
        return k.probs[idx * state_domains[var] + s2_val];
    }

    double joint_transition_prob(std::span<const int> s, std::span<const int> a,
                                 std::span<const int> s2) const {
        if (static_cast<int>(s.size()) != num_vars() || static_cast<int>(s2.size()) != num_vars() ||
            static_cast<int>(a.size()) != num_action_factors())
            throw input_error("joint_transition_prob: dimension mismatch");
        double p = 1.0;
        for (int i = 0; i < num_vars() && p > 0.0; ++i)
            p *= kernel_prob(i, s, a[kernels[i].action_factor], s2[i]);
        return p;
    }

    double total_reward(std::span<const int> s, std::span<const int> a) const {
        if (static_cast<int>(s.size()) != num_vars() || static_cast<int>(a.size()) != num_action_factors())
            throw input_error("total_reward: dimension mismatch");
        double total = 0.0;
        std::vector<int> svals, avals, domains;
        for (const auto& rc : rewards) {
            svals.clear();
            avals.clear();
            domains.clear();
            for (int v : rc.state_scope) {
                svals.push_back(s[v]);
                domains.push_back(state_domains[v]);
            }
            for (int f : rc.action_scope) {
                avals.push_back(a[f]);
                domains.push_back(action_domains[f]);
            }
            total += rc.evaluate(svals, domains, avals);
        }
        return total;
    }

    ExplicitMdp flatten(std::size_t state_cap = 1'000'000) const;
    ExplicitMdp flatten_restricted(const std::vector<std::vector<int>>& allowed_actions,
                                   std::size_t state_cap = 1'000'000) const;

    /// Joint initial belief as the product of the per-variable factors,
    /// in lexicographic joint-state order.
    std::vector<double> joint_initial_belief() const;
};

/// Mixed-radix encode/decode in lexicographic tuple order (first factor
/// most significant).
inline std::size_t encode_tuple(std::span<const int> vals, std::span<const int> domains) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < vals.size(); ++i) idx = idx * domains[i] + vals[i];
    return idx;
}

inline std::vector<int> decode_tuple(std::size_t idx, std::span<const int> domains) {
    std::vector<int> vals(domains.size());
    for (std::size_t i = domains.size(); i-- > 0;) {
        vals[i] = static_cast<int>(idx % domains[i]);
        idx /= domains[i];
    }
    return vals;
}

/// Dense enumerated MDP. Joint states/actions are in lexicographic tuple
/// order when produced by flattening; `state_factor_sizes` keeps the
/// factorization so per-variable sensors remain meaningful.
struct ExplicitMdp {
    int n_states = 0;
    int n_actions = 0;
    std::vector<double> transitions;  // [a][s][s']
    std::vector<double> rewards;      // [s][a]
    double discount = 0.9;

    std::vector<int> state_factor_sizes;            // empty if unfactored
    std::vector<std::vector<int>> action_tuples;    // per action, factor values (may be empty)

    double t(int a, int s, int s2) const {
        return transitions[(static_cast<std::size_t>(a) * n_states + s) * n_states + s2];
    }
    double& t(int a, int s, int s2) {
        return transitions[(static_cast<std::size_t>(a) * n_states + s) * n_states + s2];
    }
    double r(int s, int a) const { return rewards[static_cast<std::size_t>(s) * n_actions + a]; }
    double& r(int s, int a) { return rewards[static_cast<std::size_t>(s) * n_actions + a]; }

    int factor_value(int state, int var) const {
        std::size_t idx = static_cast<std::size_t>(state);
        for (std::size_t i = state_factor_sizes.size(); i-- > 0;) {
            int v = static_cast<int>(idx % state_factor_sizes[i]);
            idx /= state_factor_sizes[i];
            if (static_cast<int>(i) == var) return v;
        }
        throw input_error("factor_value: variable index out of range");
    }

    void validate(double row_tol = 1e-9) const {
        if (discount <= 0.0 || discount >= 1.0) throw input_error("discount must be in (0,1)");
        if (transitions.size() != static_cast<std::size_t>(n_actions) * n_states * n_states)
            throw input_error("transition tensor has wrong size");
        if (rewards.size() != static_cast<std::size_t>(n_states) * n_actions)
            throw input_error("reward table has wrong size");
        for (int a = 0; a < n_actions; ++a)
            for (int s = 0; s < n_states; ++s) {
                double sum = 0;
                for (int s2 = 0; s2 < n_states; ++s2) sum += t(a, s, s2);
                if (std::abs(sum - 1.0) > row_tol) throw input_error("transition row not stochastic");
            }
    }
};

inline ExplicitMdp FactoredMdp::flatten_restricted(
    const std::vector<std::vector<int>>& allowed_actions, std::size_t state_cap) const {
    validate();
    std::size_t ns = joint_state_count();
    if (ns > state_cap) throw capacity_error("flatten: joint state count exceeds cap");
    std::size_t na = 1;
    for (const auto& av : allowed_actions) {
        if (av.empty()) throw input_error("flatten: empty allowed-action set for a factor");
        na *= av.size();
    }
    if (allowed_actions.size() != action_domains.size())
        throw input_error("flatten: allowed-action list size mismatch");

    ExplicitMdp out;
    out.n_states = static_cast<int>(ns);
    out.n_actions = static_cast<int>(na);
    out.discount = discount;
    out.state_factor_sizes = state_domains;
    out.transitions.assign(na * ns * ns, 0.0);
    out.rewards.assign(ns * na, 0.0);

    // enumerate restricted joint actions in lexicographic order
    std::vector<int> radices;
    for (const auto& av : allowed_actions) radices.push_back(static_cast<int>(av.size()));
    out.action_tuples.resize(na);
    for (std::size_t ai = 0; ai < na; ++ai) {
        auto sel = decode_tuple(ai, radices);
        std::vector<int> tuple(action_domains.size());
        for (std::size_t f = 0; f < sel.size(); ++f) tuple[f] = allowed_actions[f][sel[f]];
        out.action_tuples[ai] = std::move(tuple);
    }

    std::vector<int> s2(num_vars());
    for (std::size_t si = 0; si < ns; ++si) {
        auto s = decode_tuple(si, state_domains);
        for (std::size_t ai = 0; ai < na; ++ai) {
            const auto& a = out.action_tuples[ai];
            out.r(static_cast<int>(si), static_cast<int>(ai)) = total_reward(s, a);
            // recursive product over per-variable next values
            std::size_t base = (ai * ns + si) * ns;
            std::function<void(int, std::size_t, double)> rec = [&](int var, std::size_t idx,
                                                                    double p) {
                if (p == 0.0) return;
                if (var == num_vars()) {
                    out.transitions[base + idx] += p;
                    return;
                }
                int a_val = a[kernels[var].action_factor];
                for (int v = 0; v < state_domains[var]; ++v)
                    rec(var + 1, idx * state_domains[var] + v, p * kernel_prob(var, s, a_val, v));
            };
            rec(0, 0, 1.0);
        }
    }
    return out;
}

inline ExplicitMdp FactoredMdp::flatten(std::size_t state_cap) const {
    std::vector<std::vector<int>> all(action_domains.size());
    for (std::size_t f = 0; f < action_domains.size(); ++f) {
        all[f].resize(action_domains[f]);
        std::iota(all[f].begin(), all[f].end(), 0);
    }
    return flatten_restricted(all, state_cap);
}

inline std::vector<double> FactoredMdp::joint_initial_belief() const {
    if (initial_belief_factors.size() != state_domains.size())
        throw input_error("joint_initial_belief: missing per-variable factors");
    std::size_t ns = joint_state_count();
    std::vector<double> b(ns, 1.0);
    for (std::size_t si = 0; si < ns; ++si) {
        auto s = decode_tuple(si, state_domains);
        for (int i = 0; i < num_vars(); ++i) b[si] *= initial_belief_factors[i][s[i]];
    }
    return b;
}

}  // namespace fmdpsel
