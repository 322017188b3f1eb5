#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "fmdpsel/errors.hpp"

namespace fmdpsel {

struct LpResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

/// Dense two-phase simplex for the small domination LPs:
///   maximize c.x  subject to  A x (<=|==) b, x >= 0.
/// The first `n_leq` rows are inequalities, the rest equalities. Uses
/// Dantzig pricing with a Bland fallback against cycling.
inline LpResult solve_lp(std::vector<std::vector<double>> A, std::vector<double> b,
                         const std::vector<double>& c, int n_leq) {
    const int m = static_cast<int>(A.size());
    const int n = static_cast<int>(c.size());
    const double eps = 1e-9;

    // slack per inequality row, artificial per row
    const int n_slack = n_leq;
    const int total = n + n_slack + m;
    std::vector<std::vector<double>> T(m, std::vector<double>(total + 1, 0.0));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        double sign = (b[i] < 0.0) ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) T[i][j] = sign * A[i][j];
        if (i < n_leq) T[i][n + i] = sign * 1.0;
        T[i][n + n_slack + i] = 1.0;
        T[i][total] = sign * b[i];
        basis[i] = n + n_slack + i;
    }

    // objective row as reduced costs; phase 1 minimizes the artificials
    auto run_phase = [&](const std::vector<double>& obj, int limit_cols) -> double {
        std::vector<double> z(limit_cols + 1, 0.0);
        // z_j = sum over basic rows of obj[basis] * T[i][j] - obj[j]
        auto recompute = [&]() {
            for (int j = 0; j <= limit_cols; ++j) {
                double v = (j < limit_cols) ? -obj[j] : 0.0;
                for (int i = 0; i < m; ++i)
                    v += obj[basis[i]] * T[i][j == limit_cols ? total : j];
                z[j] = v;
            }
        };
        recompute();
        long iters = 0;
        const long bland_after = 2000 + 20L * (m + limit_cols);
        while (true) {
            if (++iters > 200'000) throw numeric_error("simplex: iteration limit");
            int enter = -1;
            if (iters < bland_after) {
                double best = -eps;
                for (int j = 0; j < limit_cols; ++j)
                    if (z[j] < best) {
                        best = z[j];
                        enter = j;
                    }
            } else {  // Bland's rule
                for (int j = 0; j < limit_cols; ++j)
                    if (z[j] < -eps) {
                        enter = j;
                        break;
                    }
            }
            if (enter < 0) return z[limit_cols];
            int leave = -1;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m; ++i) {
                if (T[i][enter] > eps) {
                    double ratio = T[i][total] / T[i][enter];
                    if (ratio < best_ratio - eps ||
                        (ratio < best_ratio + eps && (leave < 0 || basis[i] < basis[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave < 0) return std::numeric_limits<double>::infinity();  // unbounded
            // pivot
            double piv = T[leave][enter];
            for (int j = 0; j <= total; ++j) T[leave][j] /= piv;
            for (int i = 0; i < m; ++i) {
                if (i == leave) continue;
                double f = T[i][enter];
                if (f == 0.0) continue;
                for (int j = 0; j <= total; ++j) T[i][j] -= f * T[leave][j];
            }
            double zf = z[enter];
            for (int j = 0; j < limit_cols; ++j) z[j] -= zf * T[leave][j];
            z[limit_cols] -= zf * T[leave][total];
            basis[leave] = enter;
        }
    };

    // phase 1: maximize -(sum of artificials)
    std::vector<double> obj1(total, 0.0);
    for (int i = 0; i < m; ++i) obj1[n + n_slack + i] = -1.0;
    double p1 = run_phase(obj1, total);
    if (p1 < -1e-7) return {};  // infeasible

    // pivot remaining artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
        if (basis[i] < n + n_slack) continue;
        int enter = -1;
        for (int j = 0; j < n + n_slack; ++j)
            if (std::abs(T[i][j]) > eps) {
                enter = j;
                break;
            }
        if (enter < 0) continue;  // redundant row
        double piv = T[i][enter];
        for (int j = 0; j <= total; ++j) T[i][j] /= piv;
        for (int k = 0; k < m; ++k) {
            if (k == i) continue;
            double f = T[k][enter];
            if (f == 0.0) continue;
            for (int j = 0; j <= total; ++j) T[k][j] -= f * T[i][j];
        }
        basis[i] = enter;
    }

    // phase 2 over original + slack columns only
    std::vector<double> obj2(total, 0.0);
    for (int j = 0; j < n; ++j) obj2[j] = c[j];
    double opt = run_phase(obj2, n + n_slack);
    if (!std::isfinite(opt)) throw numeric_error("simplex: unbounded objective");

    LpResult res;
    res.feasible = true;
    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (basis[i] < n) res.x[basis[i]] = T[i][total];
    res.objective = opt;
    return res;
}

/// Best-gap LP over the belief simplex: returns (d, b) maximizing
///   d = min_{w in W} (alpha - w) . b,  b in simplex.
/// d > 0 means `alpha` rises above the upper surface of W somewhere and b
/// is a witness belief.
struct GapResult {
    double gap = 0.0;
    std::vector<double> witness;
};

inline GapResult best_belief_gap(const std::vector<double>& alpha,
                                 const std::vector<std::vector<double>>& W) {
    const int S = static_cast<int>(alpha.size());
    if (W.empty()) {
        GapResult r;
        r.gap = std::numeric_limits<double>::infinity();
        r.witness.assign(S, 0.0);
        r.witness[0] = 1.0;
        return r;
    }
    // The gap d can be negative, so solve for the shifted u = d + L >= 0,
    // where L bounds |d|. A single nonnegative column keeps the tableau
    // clear of the exactly-cancelling free-variable pair.
    double L = 1.0;
    for (const auto& w : W)
        for (int s = 0; s < S; ++s) L = std::max(L, std::abs(alpha[s] - w[s]));
    L += 1.0;
    const int n = S + 1;
    std::vector<std::vector<double>> A;
    std::vector<double> rhs;
    for (const auto& w : W) {
        std::vector<double> row(n, 0.0);
        for (int s = 0; s < S; ++s) row[s] = w[s] - alpha[s];
        row[S] = 1.0;
        A.push_back(std::move(row));
        rhs.push_back(L);
    }
    {
        std::vector<double> row(n, 0.0);
        for (int s = 0; s < S; ++s) row[s] = 1.0;
        A.push_back(std::move(row));
        rhs.push_back(1.0);
    }
    std::vector<double> c(n, 0.0);
    c[S] = 1.0;
    auto lp = solve_lp(std::move(A), std::move(rhs), c, static_cast<int>(W.size()));
    if (!lp.feasible) throw numeric_error("best_belief_gap: domination LP infeasible");
    GapResult r;
    r.gap = lp.objective - L;
    r.witness.assign(lp.x.begin(), lp.x.begin() + S);
    // clean tiny negatives and renormalize the witness
    double sum = 0.0;
    for (double& v : r.witness) {
        if (v < 0.0) v = 0.0;
        sum += v;
    }
    if (sum > 0.0)
        for (double& v : r.witness) v /= sum;
    return r;
}

}  // namespace fmdpsel
