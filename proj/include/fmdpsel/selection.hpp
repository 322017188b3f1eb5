#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "fmdpsel/errors.hpp"

namespace fmdpsel {

/// Evaluates a candidate subset (sorted ids) to its achieved value.
using SubsetObjective = std::function<double(const std::vector<int>&)>;

struct GreedyTraceRow {
    int iteration = 0;
    int candidate = 0;
    double gain = 0.0;
    bool chosen = false;
};

struct SelectionReport {
    std::vector<int> selected;  // sorted
    double value = 0.0;
    std::optional<double> oracle_value;
    std::optional<double> ratio;
    std::vector<GreedyTraceRow> trace;
};

/// Memoizing wrapper so greedy/brute-force drivers never re-solve the same
/// subset.
class CachingObjective {
public:
    explicit CachingObjective(SubsetObjective fn) : fn_(std::move(fn)) {}

    double operator()(const std::vector<int>& subset) const {
        auto it = cache_.find(subset);
        if (it != cache_.end()) return it->second;
        double v = fn_(subset);
        cache_.emplace(subset, v);
        return v;
    }

    std::size_t evaluations() const { return cache_.size(); }

    /// View sharing this cache, for passing to the selection drivers.
    SubsetObjective ref() const {
        return [this](const std::vector<int>& subset) { return (*this)(subset); };
    }

private:
    SubsetObjective fn_;
    mutable std::map<std::vector<int>, double> cache_;
};

namespace detail {

inline std::vector<int> with_candidate(const std::vector<int>& subset, int c) {
    std::vector<int> out = subset;
    out.insert(std::lower_bound(out.begin(), out.end(), c), c);
    return out;
}

}  // namespace detail

/// Uniform-cost greedy selection: exactly `budget` picks, argmax marginal
/// gain each round, ties broken by the lowest candidate id. The full gain
/// trace of every considered candidate is recorded.
inline SelectionReport greedy_select(const SubsetObjective& objective,
                                     const std::vector<int>& candidates, int budget) {
    if (budget < 0 || budget > static_cast<int>(candidates.size()))
        throw input_error("greedy_select: budget must be in [0, |candidates|]");
    SelectionReport report;
    double current = objective({});
    for (int iter = 0; iter < budget; ++iter) {
        int best_c = -1;
        double best_v = 0.0;
        for (int c : candidates) {
            if (std::binary_search(report.selected.begin(), report.selected.end(), c)) continue;
            double v = objective(detail::with_candidate(report.selected, c));
            report.trace.push_back({iter, c, v - current, false});
            if (best_c < 0 || v > best_v) {
                best_v = v;
                best_c = c;
            }
        }
        for (auto& row : report.trace)
            if (row.iteration == iter && row.candidate == best_c) row.chosen = true;
        report.selected = detail::with_candidate(report.selected, best_c);
        current = best_v;
    }
    report.value = current;
    return report;
}

/// Cost-aware greedy: picks the feasible candidate with the largest
/// gain/cost ratio until nothing fits the remaining budget.
inline SelectionReport greedy_select_cost_ratio(const SubsetObjective& objective,
                                                const std::vector<int>& candidates,
                                                const std::vector<double>& costs, double budget) {
    if (costs.size() != candidates.size())
        throw input_error("greedy_select_cost_ratio: cost list size mismatch");
    for (double c : costs)
        if (c <= 0) throw input_error("greedy_select_cost_ratio: costs must be positive");
    SelectionReport report;
    double current = objective({});
    double remaining = budget;
    for (int iter = 0;; ++iter) {
        int best_i = -1;
        double best_ratio = 0.0, best_v = 0.0;
        bool any = false;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            int c = candidates[i];
            if (std::binary_search(report.selected.begin(), report.selected.end(), c)) continue;
            if (costs[i] > remaining + 1e-12) continue;
            double v = objective(detail::with_candidate(report.selected, c));
            double ratio = (v - current) / costs[i];
            report.trace.push_back({iter, c, v - current, false});
            if (!any || ratio > best_ratio) {
                best_ratio = ratio;
                best_i = static_cast<int>(i);
                best_v = v;
                any = true;
            }
        }
        if (!any) break;
        for (auto& row : report.trace)
            if (row.iteration == iter && row.candidate == candidates[best_i]) row.chosen = true;
        report.selected = detail::with_candidate(report.selected, candidates[best_i]);
        remaining -= costs[best_i];
        current = best_v;
    }
    report.value = current;
    return report;
}

/// Exact optimum over every subset whose total cost fits the budget.
/// Deterministic tie-break: the lexicographically smallest best subset.
inline SelectionReport brute_force_select(const SubsetObjective& objective,
                                          const std::vector<int>& candidates,
                                          const std::vector<double>& costs, double budget,
                                          std::size_t subset_cap = 100'000) {
    if (costs.size() != candidates.size())
        throw input_error("brute_force_select: cost list size mismatch");
    SelectionReport report;
    std::size_t evaluated = 0;
    std::vector<int> subset;
    bool have_best = false;
    std::vector<int> best_subset;
    double best_v = 0.0;

    std::function<void(std::size_t, double)> rec = [&](std::size_t i, double remaining) {
        if (i == candidates.size()) {
            if (++evaluated > subset_cap)
                throw capacity_error("brute_force_select: feasible subset cap exceeded");
            double v = objective(subset);
            if (!have_best || v > best_v ||
                (v == best_v && std::lexicographical_compare(subset.begin(), subset.end(),
                                                             best_subset.begin(),
                                                             best_subset.end()))) {
                have_best = true;
                best_v = v;
                best_subset = subset;
            }
            return;
        }
        if (costs[i] <= remaining + 1e-12) {
            subset.push_back(candidates[i]);
            rec(i + 1, remaining - costs[i]);
            subset.pop_back();
        }
        rec(i + 1, remaining);
    };
    rec(0, budget);
    report.selected = best_subset;
    std::sort(report.selected.begin(), report.selected.end());
    report.value = best_v;
    return report;
}

/// r_gre = greedy value / oracle value.
inline double greedy_ratio(const SelectionReport& greedy, const SelectionReport& oracle) {
    if (oracle.value <= 0) throw input_error("greedy_ratio: nonpositive oracle value");
    return greedy.value / oracle.value;
}

/// Uniform-cost budget helper: candidates whose individual cost exceeds the
/// budget can never be chosen and are removed before selection runs.
inline std::vector<int> filter_affordable(const std::vector<int>& candidates,
                                          const std::vector<double>& costs, double budget,
                                          std::vector<double>* kept_costs = nullptr) {
    std::vector<int> out;
    if (kept_costs) kept_costs->clear();
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (costs[i] <= budget + 1e-12) {
            out.push_back(candidates[i]);
            if (kept_costs) kept_costs->push_back(costs[i]);
        }
    return out;
}

}  // namespace fmdpsel
