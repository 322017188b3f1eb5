// End-to-end acceptance checks. Each criterion prints exactly one
// PASS/FAIL line; the exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "fmdpsel/experiments.hpp"

using namespace fmdpsel;

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// --- criterion 1: one noiseless sensor recovers V* = R/(1-gamma) ----------

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    auto p = example1_mdp(1.0, 0.1, 0.9);
    double with = evaluate_sensor_set(p, {0});
    double without = evaluate_sensor_set(p, {});
    double wall = seconds_since(t0);
    bool ok = std::abs(with - 10.0) <= 1e-4 && std::abs(without) <= 1e-4 && wall < 10.0;
    report(1, ok,
           "sensor example, with=" + fmt(with) + " (want 10 +/- 1e-4), without=" + fmt(without) +
               " (want 0 +/- 1e-4), " + fmt(wall) + "s");
}

// --- criterion 2: one actuator recovers the same optimum exactly ----------

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    auto p = example2_mdp(1.0, 0.1, 0.9);
    double with = evaluate_actuator_set(p, {0});
    double without = evaluate_actuator_set(p, {});
    double wall = seconds_since(t0);
    bool ok = std::abs(with - 10.0) <= 1e-9 && std::abs(without) <= 1e-9 && wall < 1.0;
    report(2, ok,
           "actuator example, with=" + fmt(with) + ", without=" + fmt(without) + " (exact), " +
               fmt(wall) + "s");
}

// --- criteria 3/4: the greedy gap on the four-variable counterexamples ----

template <typename Instance, typename Objective>
bool gap_point(double r4, double tol, Objective make_objective, Instance make_instance,
               std::string& detail) {
    const double R2 = 1.0, R3 = 0.5, c = 0.01, gamma = 0.9;
    const double delta = r4 / R3 + r4 / R2;
    auto p = make_instance(R2 + c, R2, R3, r4, c, delta, gamma);
    CachingObjective obj(make_objective(p));
    auto cands = filter_affordable({0, 1, 2, 3}, p.catalog.costs(), p.catalog.budget);
    auto gre = greedy_select_cost_ratio(obj.ref(), cands, {1, 1, 1}, p.catalog.budget);
    auto opt = brute_force_select(obj.ref(), {0, 1, 2, 3}, p.catalog.costs(), p.catalog.budget);
    double ratio = gre.value / opt.value;
    double expected = (2 * R2 + c) / (R2 + r4);
    bool ok = gre.selected == std::vector<int>{0, 1} && std::abs(ratio - expected) <= tol;
    detail += " R4=" + fmt(r4) + ":ratio=" + fmt(ratio) + (ok ? "" : "(BAD)");
    return ok;
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail = "greedy picks {w1,w2}, ratio=(2R2+c)/(R2+R4);";
    bool ok = true;
    double ratio_at_100 = 1.0;
    for (double r4 : {2.0, 5.0, 10.0, 100.0}) {
        ok = gap_point(
                 r4, 1e-4, [](const auto& p) { return sensor_objective(p); },
                 [](double a, double b, double cc, double d, double e, double f, double g) {
                     return example3_instance(a, b, cc, d, e, f, g);
                 },
                 detail) &&
             ok;
        if (r4 == 100.0) ratio_at_100 = (2 * 1.0 + 0.01) / (1.0 + r4);
    }
    double wall = seconds_since(t0);
    ok = ok && ratio_at_100 < 0.02 && wall < 120.0;
    report(3, ok, detail + " " + fmt(wall) + "s");
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    std::string detail = "actuator mirror;";
    bool ok = true;
    for (double r4 : {2.0, 5.0, 10.0, 100.0})
        ok = gap_point(
                 r4, 1e-6, [](const auto& p) { return actuator_objective(p); },
                 [](double a, double b, double cc, double d, double e, double f, double g) {
                     return example4_instance(a, b, cc, d, e, f, g);
                 },
                 detail) &&
             ok;
    double wall = seconds_since(t0);
    ok = ok && wall < 10.0;
    report(4, ok, detail + " " + fmt(wall) + "s");
}

// --- criterion 5: cover exists iff the reduction value reaches threshold --

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.kind = "reduction-audit";
    auto rep = run(cfg);
    int violations = 0;
    for (const auto& r : rep.rows)
        if (r.note.find("VIOLATION") != std::string::npos) ++violations;
    double wall = seconds_since(t0);
    bool ok = !rep.rows.empty() && violations == 0 && wall < 600.0;
    report(5, ok,
           "reduction audit n<=3 m<=3 k<=2: " + std::to_string(rep.rows.size()) + " checks, " +
               std::to_string(violations) + " violations, " + fmt(wall) + "s");
}

// --- criterion 6: the approximation-ratio formula ------------------------

void criterion6() {
    bool exact = r_approx(2, 3, 0.9, 2.0) == 0.296875;
    bool monotone = true;
    double prev = 2.0;
    for (int i = 0; i < 10; ++i) {
        double r = r_approx(2, 3, 0.9, 1.5 + 0.5 * i);
        if (r >= prev) monotone = false;
        prev = r;
    }
    report(6, exact && monotone,
           "r_approx(2,3,0.9,2)=" + fmt(r_approx(2, 3, 0.9, 2.0)) +
               " (want 0.296875), strictly decreasing in c over 10 points: " +
               (monotone ? "yes" : "no"));
}

// --- criteria 7/8: random studies against the brute-force optimum --------

void random_study(int criterion, const char* kind, double time_limit) {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.kind = kind;
    cfg.seeds.clear();
    for (std::uint64_t s = 1; s <= 20; ++s) cfg.seeds.push_back(s);
    auto rep = run(cfg);
    double sum = 0.0, min_ratio = 2.0;
    int n = 0;
    bool in_range = true;
    for (const auto& r : rep.rows) {
        if (r.method != "greedy") continue;
        ++n;
        sum += r.ratio;
        min_ratio = std::min(min_ratio, r.ratio);
        if (r.ratio < -1e-6 || r.ratio > 1.0 + 1e-6) in_range = false;
    }
    double mean = n ? sum / n : 0.0;
    double wall = seconds_since(t0);
    bool ok = n == 20 && mean >= 0.70 && in_range && wall < time_limit;
    report(criterion, ok,
           std::string(kind) + " over 20 seeds: mean greedy ratio " + fmt(mean) + " (want >= 0.70), min " +
               fmt(min_ratio) + ", " + fmt(wall) + "s");
}

// --- criterion 9: cascade islanding sweeps -------------------------------

void criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    ExperimentConfig cfg;
    cfg.kind = "asen-sweep";
    cfg.asen_graphs = {"er", "ba"};
    cfg.asen_sizes = {20, 30};
    cfg.asen_budgets = {3, 5};
    cfg.seeds = {1, 2, 3, 4, 5};
    auto rep = run(cfg);
    std::map<std::string, double> greedy, random_v;
    double sum = 0.0;
    int n = 0;
    for (const auto& r : rep.rows) {
        if (r.method == "greedy") {
            greedy[r.instance_id] = r.ratio;
            sum += r.ratio;
            ++n;
        }
        if (r.method == "random") random_v[r.instance_id] = r.ratio;
    }
    int paired = 0, greedy_wins = 0;
    for (const auto& [id, g] : greedy) {
        auto it = random_v.find(id);
        if (it == random_v.end()) continue;
        ++paired;
        if (g >= it->second - 1e-9) ++greedy_wins;
    }
    double mean = n ? sum / n : 0.0;
    double win_frac = paired ? static_cast<double>(greedy_wins) / paired : 0.0;
    double wall = seconds_since(t0);
    bool ok = n == 40 && mean >= 0.70 && win_frac >= 0.90 && wall < 1800.0;
    report(9, ok,
           "islanding sweep (er/ba x {20,30} x K{3,5} x 5 seeds): mean greedy ratio " + fmt(mean) +
               ", greedy >= random on " + fmt(100.0 * win_frac) + "% of " +
               std::to_string(paired) + " paired instances, " + fmt(wall) + "s");
}

// --- criterion 10: structural property sweeps ----------------------------

void criterion10() {
    int bad = 0;
    std::string first_bad;
    auto fail = [&](const std::string& what) {
        ++bad;
        if (first_bad.empty()) first_bad = what;
    };

    // transition-row stochasticity on random and constructed instances
    for (std::uint64_t s = 1; s <= 5; ++s) {
        auto p = random_fmdp_ss_instance(s);
        for (int a = 0; a < p.model.n_actions; ++a)
            for (int st = 0; st < p.model.n_states; ++st) {
                double sum = 0.0;
                for (int s2 = 0; s2 < p.model.n_states; ++s2) sum += p.model.t(a, st, s2);
                if (std::abs(sum - 1.0) > 1e-12) fail("transition row not stochastic");
            }
    }

    // belief-simplex preservation under Bayes updates
    {
        auto p = example1_mdp(1.0, 0.1, 0.9);
        PomdpInstance m;
        m.mdp = p.fmdp.flatten();
        m.initial_belief = p.fmdp.joint_initial_belief();
        m.n_obs = 4;
        m.obs_lik.assign(3 * 4 * 4, 0.0);
        for (int a = 0; a < 3; ++a)
            for (int s2 = 0; s2 < 4; ++s2) m.obs_lik[(a * 4 + s2) * 4 + s2] = 1.0;
        Rng rng = make_rng(77, 0);
        BeliefState b = m.initial_belief;
        for (int step = 0; step < 50; ++step) {
            int a = static_cast<int>(uniform01(rng) * 3);
            std::vector<double> w;
            for (int ob = 0; ob < 4; ++ob) w.push_back(observation_prob(b, a, ob, m));
            double total = 0.0;
            for (double v : w) total += v;
            if (std::abs(total - 1.0) > 1e-9) fail("observation probabilities not normalized");
            double pick = uniform01(rng) * total, acc = 0.0;
            int ob = 0;
            for (; ob < 3; ++ob) {
                acc += w[ob];
                if (pick < acc) break;
            }
            if (w[ob] <= 1e-12) continue;
            b = belief_update(b, a, ob, m);
            double sum = 0.0;
            for (double v : b) {
                if (v < -1e-12) fail("negative belief mass");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-9) fail("belief left the simplex");
        }
    }

    // prune soundness on 1000 random beliefs
    {
        Rng rng = make_rng(88, 0);
        std::vector<AlphaVector> vs;
        for (int i = 0; i < 60; ++i) {
            AlphaVector a;
            a.values.resize(5);
            for (double& v : a.values) v = 10.0 * uniform01(rng) - 5.0;
            vs.push_back(a);
        }
        auto pruned = prune(vs);
        for (int t = 0; t < 1000; ++t) {
            BeliefState b(5);
            double sum = 0.0;
            for (double& v : b) {
                v = -std::log(std::max(uniform01(rng), 1e-300));
                sum += v;
            }
            for (double& v : b) v /= sum;
            if (std::abs(value_at(pruned, b) - value_at(vs, b)) > 1e-9)
                fail("prune changed the value function");
        }
    }

    // finite-horizon oracle equality at stages n <= 3
    {
        auto p = example1_mdp(1.0, 0.1, 0.9);
        PomdpInstance m;
        m.mdp = p.fmdp.flatten();
        m.initial_belief = p.fmdp.joint_initial_belief();
        m.n_obs = 4;
        m.obs_lik.assign(3 * 4 * 4, 0.0);
        for (int a = 0; a < 3; ++a)
            for (int s2 = 0; s2 < 4; ++s2) m.obs_lik[(a * 4 + s2) * 4 + s2] = 1.0;
        for (int nstage = 1; nstage <= 3; ++nstage) {
            auto vs = solve_finite_stages(m, nstage);
            if (std::abs(value_at(vs, m.initial_belief) - finite_horizon_oracle(m, nstage)) > 1e-9)
                fail("stage value disagrees with the exhaustive oracle");
        }
    }

    // flatten/factored equivalence of cluster evaluation
    {
        FactoredSensorProblem p;
        p.fmdp = gadget::chain(2, 0.9);
        p.fmdp.rewards.push_back(gadget::own_reward(0, 1.0, 0.1));
        p.fmdp.rewards.push_back(gadget::own_reward(1, 0.5, 0.1));
        for (int i = 0; i < 2; ++i) p.catalog.sensors.push_back(Sensor{i, {}, 0, 1.0});
        p.catalog.budget = 2.0;
        ExplicitSensorProblem flat;
        flat.model = p.fmdp.flatten();
        flat.initial_belief = p.fmdp.joint_initial_belief();
        flat.catalog = p.catalog;
        for (const auto& subset : std::vector<std::vector<int>>{{}, {0}, {0, 1}})
            if (std::abs(evaluate_sensor_set(p, subset) - evaluate_sensor_set(flat, subset)) >
                1e-3)
                fail("clustered evaluation disagrees with the flat solve");
    }

    // cascade monotonicity under paired seeds
    {
        auto g = gen_er(25, 0.25, 5);
        g.influence_prob = 0.4;
        for (std::uint64_t trial = 0; trial < 50; ++trial) {
            Rng r1 = make_rng(123, trial), r2 = make_rng(123, trial);
            auto open = simulate_cascade(g, {0, 1}, {}, r1);
            auto cut = simulate_cascade(g, {0, 1}, {3, 4}, r2);
            if (cut.healthy_final < open.healthy_final) fail("islanding hurt a paired rollout");
            Rng r3 = make_rng(321, trial), r4 = make_rng(321, trial);
            auto few = simulate_cascade(g, {0}, {}, r3);
            auto many = simulate_cascade(g, {0, 1}, {}, r4);
            if (many.healthy_final > few.healthy_final) fail("extra seed healed a paired rollout");
        }
    }

    report(10, bad == 0,
           bad == 0 ? "property sweeps: 0 violations"
                    : "property sweeps: " + std::to_string(bad) + " violations, first: " +
                          first_bad);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    random_study(7, "random-ss", 1800.0);
    random_study(8, "random-as", 600.0);
    criterion9();
    criterion10();
    return failures;
}
