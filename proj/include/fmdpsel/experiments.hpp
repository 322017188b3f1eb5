#pragma once

#include <atomic>
#include <chrono>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fmdpsel/cascade.hpp"
#include "fmdpsel/errors.hpp"
#include "fmdpsel/instances.hpp"
#include "fmdpsel/io.hpp"
#include "fmdpsel/problems.hpp"
#include "fmdpsel/selection.hpp"

namespace fmdpsel {

struct ExperimentConfig {
    std::string kind;                   // lemma-check | prop-gap | reduction-audit |
                                        // random-ss | random-as | asen-sweep
    std::string instance_path;          // optional explicit instance file
    std::vector<std::uint64_t> seeds = {1};
    std::vector<std::string> methods = {"greedy", "brute"};
    double eta = 1e-6;
    double tol = 1e-9;
    std::string out_path;               // CSV written here when nonempty
    int jobs = 1;

    // prop-gap
    std::vector<double> r4_values = {2, 5, 10, 100};

    // reduction-audit
    int audit_n_max = 3;
    int audit_m_max = 3;
    int audit_k_max = 2;
    double audit_c_exp = 2.0;
    double audit_R = 1.0;
    double audit_gamma = 0.25;

    // asen-sweep
    std::vector<std::string> asen_graphs = {"er"};
    std::vector<int> asen_sizes = {30};
    std::vector<int> asen_budgets = {5};
    int asen_n_faulty = 5;
    double asen_edge_prob = 0.3;
    double asen_gamma = 0.95;
    int asen_rollouts = 2000;
    int asen_im_rollouts = 200;
    int asen_pool_size = 10;            // brute-force candidate pool

    void validate() const {
        static const char* kinds[] = {"lemma-check", "prop-gap",  "prop-gap-as",
                                      "reduction-audit", "random-ss", "random-as",
                                      "asen-sweep"};
        for (const char* k : kinds)
            if (kind == k) {
                if (seeds.empty()) throw input_error("config: seed list must be nonempty");
                if (jobs < 1) throw input_error("config: jobs must be positive");
                return;
            }
        throw input_error("config: unknown experiment kind '" + kind + "'");
    }
};

inline void to_json(json& j, const ExperimentConfig& c) {
    j = json{{"kind", c.kind},
             {"instance_path", c.instance_path},
             {"seeds", c.seeds},
             {"methods", c.methods},
             {"eta", c.eta},
             {"tol", c.tol},
             {"out_path", c.out_path},
             {"jobs", c.jobs},
             {"r4_values", c.r4_values},
             {"audit_n_max", c.audit_n_max},
             {"audit_m_max", c.audit_m_max},
             {"audit_k_max", c.audit_k_max},
             {"audit_c_exp", c.audit_c_exp},
             {"audit_R", c.audit_R},
             {"audit_gamma", c.audit_gamma},
             {"asen_graphs", c.asen_graphs},
             {"asen_sizes", c.asen_sizes},
             {"asen_budgets", c.asen_budgets},
             {"asen_n_faulty", c.asen_n_faulty},
             {"asen_edge_prob", c.asen_edge_prob},
             {"asen_gamma", c.asen_gamma},
             {"asen_rollouts", c.asen_rollouts},
             {"asen_im_rollouts", c.asen_im_rollouts},
             {"asen_pool_size", c.asen_pool_size}};
}

inline void from_json(const json& j, ExperimentConfig& c) {
    ExperimentConfig defaults;
    c = defaults;
    j.at("kind").get_to(c.kind);
#define FMDPSEL_OPT(field) \
    if (j.contains(#field)) j.at(#field).get_to(c.field)
    FMDPSEL_OPT(instance_path);
    FMDPSEL_OPT(seeds);
    FMDPSEL_OPT(methods);
    FMDPSEL_OPT(eta);
    FMDPSEL_OPT(tol);
    FMDPSEL_OPT(out_path);
    FMDPSEL_OPT(jobs);
    FMDPSEL_OPT(r4_values);
    FMDPSEL_OPT(audit_n_max);
    FMDPSEL_OPT(audit_m_max);
    FMDPSEL_OPT(audit_k_max);
    FMDPSEL_OPT(audit_c_exp);
    FMDPSEL_OPT(audit_R);
    FMDPSEL_OPT(audit_gamma);
    FMDPSEL_OPT(asen_graphs);
    FMDPSEL_OPT(asen_sizes);
    FMDPSEL_OPT(asen_budgets);
    FMDPSEL_OPT(asen_n_faulty);
    FMDPSEL_OPT(asen_edge_prob);
    FMDPSEL_OPT(asen_gamma);
    FMDPSEL_OPT(asen_rollouts);
    FMDPSEL_OPT(asen_im_rollouts);
    FMDPSEL_OPT(asen_pool_size);
#undef FMDPSEL_OPT
}

inline ExperimentConfig load_config(const std::string& path) {
    json j = detail::parse_file(path);
    try {
        auto c = j.get<ExperimentConfig>();
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw input_error("malformed config " + path + ": " + e.what());
    }
}

struct RunRow {
    std::string instance_id;
    std::string method;
    double value = 0.0;
    double oracle = 0.0;
    double ratio = 0.0;
    double wall_seconds = 0.0;  // in-memory only, kept out of the CSV
    std::string note;
};

struct RunReport {
    std::vector<RunRow> rows;
    double mean_ratio = 0.0;

    void finalize() {
        std::sort(rows.begin(), rows.end(), [](const RunRow& a, const RunRow& b) {
            if (a.instance_id != b.instance_id) return a.instance_id < b.instance_id;
            return a.method < b.method;
        });
        double sum = 0.0;
        for (const auto& r : rows) sum += r.ratio;
        mean_ratio = rows.empty() ? 0.0 : sum / rows.size();
    }
};

struct SummaryStats {
    double mean_ratio = 0.0;
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    int count = 0;
};

inline SummaryStats summarize(const RunReport& report) {
    if (report.rows.empty()) throw input_error("summarize: empty report");
    SummaryStats s;
    s.count = static_cast<int>(report.rows.size());
    s.min_ratio = s.max_ratio = report.rows.front().ratio;
    for (const auto& r : report.rows) {
        s.mean_ratio += r.ratio;
        s.min_ratio = std::min(s.min_ratio, r.ratio);
        s.max_ratio = std::max(s.max_ratio, r.ratio);
    }
    s.mean_ratio /= s.count;
    return s;
}

inline void write_report_csv(const RunReport& report, std::ostream& out) {
    out << "instance_id,method,value,oracle,ratio,note\n";
    for (const auto& r : report.rows)
        out << r.instance_id << ',' << r.method << ',' << csv_double(r.value) << ','
            << csv_double(r.oracle) << ',' << csv_double(r.ratio) << ',' << r.note << '\n';
}

inline void write_report_csv(const RunReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path);
    write_report_csv(report, out);
}

namespace detail {

/// Runs fn(0..n-1) over `jobs` threads; results land at their own index so
/// output order never depends on scheduling.
template <typename Fn>
inline std::vector<std::vector<RunRow>> parallel_map(int n, int jobs, Fn fn) {
    std::vector<std::vector<RunRow>> out(n);
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::atomic<int> next{0};
    std::vector<std::string> errors;
    std::mutex err_mu;
    auto worker = [&]() {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            try {
                out[i] = fn(i);
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(err_mu);
                errors.push_back(e.what());
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min(jobs, n); ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (!errors.empty()) throw numeric_error("parallel task failed: " + errors.front());
    return out;
}

inline double elapsed_s(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Cluster-memoized twin of the factored evaluate_sensor_set: identical
/// arithmetic, but each (cluster, local sensor placement) value is cached.
/// The reduction audit hits the same handful of clusters thousands of
/// times across the instance enumeration.
class MemoSensorEvaluator {
  public:
    explicit MemoSensorEvaluator(EvalOptions opts = {}) : opts_(opts) {}

    double operator()(const FactoredSensorProblem& prob, const std::vector<int>& subset) {
        double total = 0.0;
        for (const auto& vars : reward_clusters(prob.fmdp)) {
            auto cp = extract_cluster(prob.fmdp, vars);
            if (!cp.has_reward) continue;
            std::vector<int> observed_local;
            for (int i : subset) {
                int v = prob.catalog.sensors.at(i).variable;
                auto it = std::lower_bound(cp.vars.begin(), cp.vars.end(), v);
                if (it != cp.vars.end() && *it == v)
                    observed_local.push_back(static_cast<int>(it - cp.vars.begin()));
            }
            std::sort(observed_local.begin(), observed_local.end());
            json key_j = {{"mdp", cp.sub}, {"obs", observed_local}};
            std::string key = key_j.dump();
            {
                std::lock_guard<std::mutex> lock(mu_);
                auto it = cache_.find(key);
                if (it != cache_.end()) {
                    total += it->second;
                    continue;
                }
            }
            ExplicitSensorProblem ep;
            ep.model = cp.sub.flatten();
            ep.initial_belief = cp.sub.joint_initial_belief();
            std::vector<int> local_subset;
            for (int v : observed_local) {
                ep.catalog.sensors.push_back(Sensor{v, {}, 0, 1.0});
                local_subset.push_back(static_cast<int>(ep.catalog.sensors.size()) - 1);
            }
            ep.catalog.budget = 1.0;
            double v = evaluate_sensor_set(ep, local_subset, opts_);
            {
                std::lock_guard<std::mutex> lock(mu_);
                cache_.emplace(std::move(key), v);
            }
            total += v;
        }
        return total;
    }

  private:
    EvalOptions opts_;
    std::map<std::string, double> cache_;
    std::mutex mu_;
};

// --------------------------------------------------------------------------
// Experiment kinds

inline std::vector<RunRow> run_lemma_check(const ExperimentConfig& cfg) {
    EvalOptions opts;
    opts.eta = cfg.eta;
    std::vector<RunRow> rows;
    auto p1 = example1_mdp(1.0, 0.1, 0.9);
    auto t0 = std::chrono::steady_clock::now();
    double with1 = evaluate_sensor_set(p1, {0}, opts);
    double without1 = evaluate_sensor_set(p1, {}, opts);
    rows.push_back({"example1", "with-sensor", with1, with1, 1.0, elapsed_s(t0), ""});
    rows.push_back({"example1", "no-sensor", without1, with1, without1 / with1, 0.0, ""});
    auto p2 = example2_mdp(1.0, 0.1, 0.9);
    t0 = std::chrono::steady_clock::now();
    double with2 = evaluate_actuator_set(p2, {0}, opts);
    double without2 = evaluate_actuator_set(p2, {}, opts);
    rows.push_back({"example2", "with-actuator", with2, with2, 1.0, elapsed_s(t0), ""});
    rows.push_back({"example2", "no-actuator", without2, with2, without2 / with2, 0.0, ""});
    return rows;
}

inline std::string format_r4(double r4) {
    std::ostringstream os;
    os << "r4=" << r4;
    return os.str();
}

inline std::vector<RunRow> run_prop_gap_point(const ExperimentConfig& cfg, double r4,
                                              bool actuators) {
    const double R2 = 1.0, R3 = 0.5, c = 0.01, gamma = 0.9;
    const double R1 = R2 + c;
    const double delta = r4 / R3 + r4 / R2;  // beyond all gamble break-evens
    EvalOptions opts;
    opts.eta = cfg.eta;
    std::vector<RunRow> rows;
    auto t0 = std::chrono::steady_clock::now();
    SelectionReport gre, opt;
    if (actuators) {
        auto p = example4_instance(R1, R2, R3, r4, c, delta, gamma);
        CachingObjective obj(actuator_objective(p, opts));
        auto cands = filter_affordable({0, 1, 2, 3}, p.catalog.costs(), p.catalog.budget);
        gre = greedy_select_cost_ratio(obj.ref(), cands, {1, 1, 1}, p.catalog.budget);
        opt = brute_force_select(obj.ref(), {0, 1, 2, 3}, p.catalog.costs(), p.catalog.budget);
    } else {
        auto p = example3_instance(R1, R2, R3, r4, c, delta, gamma);
        CachingObjective obj(sensor_objective(p, opts));
        auto cands = filter_affordable({0, 1, 2, 3}, p.catalog.costs(), p.catalog.budget);
        gre = greedy_select_cost_ratio(obj.ref(), cands, {1, 1, 1}, p.catalog.budget);
        opt = brute_force_select(obj.ref(), {0, 1, 2, 3}, p.catalog.costs(), p.catalog.budget);
    }
    double wall = elapsed_s(t0);
    std::string id = format_r4(r4);
    rows.push_back({id, "greedy", gre.value, opt.value, gre.value / opt.value, wall, ""});
    rows.push_back({id, "brute", opt.value, opt.value, 1.0, 0.0, ""});
    return rows;
}

inline std::vector<RunRow> run_prop_gap(const ExperimentConfig& cfg, bool actuators) {
    auto per = parallel_map(static_cast<int>(cfg.r4_values.size()), cfg.jobs, [&](int i) {
        return run_prop_gap_point(cfg, cfg.r4_values[i], actuators);
    });
    std::vector<RunRow> rows;
    for (auto& block : per) rows.insert(rows.end(), block.begin(), block.end());
    return rows;
}

/// All SetCover instances with n <= n_max elements and m <= m_max sets, one
/// representative per multiset of subsets (the generated fMDP value is
/// invariant under reordering or so duplicated enumeration adds nothing).
inline std::vector<SetCoverInstance> enumerate_setcovers(int n_max, int m_max) {
    std::vector<SetCoverInstance> out;
    for (int n = 1; n <= n_max; ++n) {
        int n_subsets = 1 << n;
        for (int m = 1; m <= m_max; ++m) {
            std::vector<int> masks(m, 0);
            std::function<void(int, int)> rec = [&](int pos, int min_mask) {
                if (pos == m) {
                    SetCoverInstance sc;
                    sc.universe_size = n;
                    for (int mask : masks) {
                        std::vector<int> set;
                        for (int e = 0; e < n; ++e)
                            if (mask & (1 << e)) set.push_back(e);
                        sc.sets.push_back(std::move(set));
                    }
                    out.push_back(std::move(sc));
                    return;
                }
                // nondecreasing masks => one representative per multiset
                for (int mask = min_mask; mask < n_subsets; ++mask) {
                    masks[pos] = mask;
                    rec(pos + 1, mask);
                }
            };
            rec(0, 0);
        }
    }
    return out;
}

struct AuditOutcome {
    bool cover_exists = false;
    double best_value = 0.0;
    double threshold = 0.0;
    double gap_bound = 0.0;
    bool consistent = false;
};

inline std::vector<RunRow> run_reduction_audit(const ExperimentConfig& cfg) {
    auto covers = enumerate_setcovers(cfg.audit_n_max, cfg.audit_m_max);
    EvalOptions opts;
    opts.eta = cfg.eta;
    auto memo = std::make_shared<MemoSensorEvaluator>(opts);

    struct Task {
        SetCoverInstance sc;
        int k;
        int index;
    };
    std::vector<Task> tasks;
    int idx = 0;
    for (const auto& sc : covers) {
        for (int k = 1; k <= std::min<int>(cfg.audit_k_max, sc.sets.size()); ++k) {
            SetCoverInstance with_k = sc;
            with_k.bound = k;
            tasks.push_back({std::move(with_k), k, idx++});
        }
    }

    auto audit_one = [&](int ti) -> std::vector<RunRow> {
        const auto& task = tasks[ti];
        auto witness = setcover_brute_force(task.sc);
        std::ostringstream id;
        id << "sc-n" << task.sc.universe_size << "-m" << task.sc.sets.size() << "-k" << task.k
           << "-i" << std::setw(4) << std::setfill('0') << task.index;
        std::vector<RunRow> rows;

        auto t0 = std::chrono::steady_clock::now();
        auto ss = setcover_to_fmdp_ss(task.sc, cfg.audit_c_exp, cfg.audit_R, cfg.audit_gamma);
        SubsetObjective ss_obj = [&](const std::vector<int>& y) { return (*memo)(ss.problem, y); };
        std::vector<int> cands(ss.problem.catalog.sensors.size());
        std::iota(cands.begin(), cands.end(), 0);
        CachingObjective ss_cache(ss_obj);
        auto ss_best = brute_force_select(ss_cache.ref(), cands, ss.problem.catalog.costs(),
                                          ss.problem.catalog.budget);
        bool ss_ok = witness.covered ? ss_best.value >= ss.threshold - 1e-4
                                     : ss_best.value <= ss.gap_bound + 1e-4;
        rows.push_back({id.str() + "-ss", "brute", ss_best.value, ss.threshold,
                        ss_best.value / ss.threshold, elapsed_s(t0),
                        std::string(witness.covered ? "cover" : "nocover") +
                            (ss_ok ? "" : ";VIOLATION")});

        t0 = std::chrono::steady_clock::now();
        auto as = setcover_to_fmdp_as(task.sc, cfg.audit_c_exp, cfg.audit_R, cfg.audit_gamma);
        SubsetObjective as_obj = actuator_objective(as.problem, opts);
        CachingObjective as_cache(as_obj);
        auto as_best = brute_force_select(as_cache.ref(), cands, as.problem.catalog.costs(),
                                          as.problem.catalog.budget);
        bool as_ok = witness.covered ? as_best.value >= as.threshold - 1e-4
                                     : as_best.value <= as.gap_bound + 1e-4;
        rows.push_back({id.str() + "-as", "brute", as_best.value, as.threshold,
                        as_best.value / as.threshold, elapsed_s(t0),
                        std::string(witness.covered ? "cover" : "nocover") +
                            (as_ok ? "" : ";VIOLATION")});
        return rows;
    };

    auto per = parallel_map(static_cast<int>(tasks.size()), cfg.jobs, audit_one);
    std::vector<RunRow> rows;
    for (auto& block : per) rows.insert(rows.end(), block.begin(), block.end());
    return rows;
}

inline std::vector<RunRow> run_random_study(const ExperimentConfig& cfg, bool actuators) {
    auto one = [&](int i) -> std::vector<RunRow> {
        std::uint64_t seed = cfg.seeds[i];
        EvalOptions opts;
        opts.eta = cfg.eta;
        std::ostringstream id;
        id << (actuators ? "as-seed" : "ss-seed") << seed;
        auto t0 = std::chrono::steady_clock::now();
        SelectionReport gre, opt;
        std::vector<int> random_pick;
        double random_value = 0.0;
        if (actuators) {
            auto p = random_fmdp_as_instance(seed);
            CachingObjective obj(actuator_objective(p, opts));
            std::vector<int> cands(p.catalog.actuators.size());
            std::iota(cands.begin(), cands.end(), 0);
            int budget = static_cast<int>(p.catalog.budget);
            gre = greedy_select(obj.ref(), cands, budget);
            opt = brute_force_select(obj.ref(), cands, p.catalog.costs(), p.catalog.budget);
            random_pick = random_select_baseline(cands, budget, derive_seed(seed, 555));
            random_value = obj(random_pick);
        } else {
            auto p = random_fmdp_ss_instance(seed);
            CachingObjective obj(sensor_objective(p, opts));
            std::vector<int> cands(p.catalog.sensors.size());
            std::iota(cands.begin(), cands.end(), 0);
            int budget = static_cast<int>(p.catalog.budget);
            gre = greedy_select(obj.ref(), cands, budget);
            opt = brute_force_select(obj.ref(), cands, p.catalog.costs(), p.catalog.budget);
            random_pick = random_select_baseline(cands, budget, derive_seed(seed, 555));
            random_value = obj(random_pick);
        }
        double wall = elapsed_s(t0);
        std::vector<RunRow> rows;
        rows.push_back({id.str(), "greedy", gre.value, opt.value, gre.value / opt.value, wall, ""});
        rows.push_back({id.str(), "brute", opt.value, opt.value, 1.0, 0.0, ""});
        rows.push_back(
            {id.str(), "random", random_value, opt.value, random_value / opt.value, 0.0, ""});
        return rows;
    };
    auto per = parallel_map(static_cast<int>(cfg.seeds.size()), cfg.jobs, one);
    std::vector<RunRow> rows;
    for (auto& block : per) rows.insert(rows.end(), block.begin(), block.end());
    return rows;
}

inline std::vector<RunRow> run_asen_sweep(const ExperimentConfig& cfg) {
    struct Point {
        std::string graph;
        int n;
        int K;
        std::uint64_t seed;
    };
    std::vector<Point> points;
    for (const auto& g : cfg.asen_graphs)
        for (int n : cfg.asen_sizes)
            for (int K : cfg.asen_budgets)
                for (auto s : cfg.seeds) points.push_back({g, n, K, s});

    auto one = [&](int i) -> std::vector<RunRow> {
        const Point& pt = points[i];
        auto t0 = std::chrono::steady_clock::now();
        CascadeNetwork net;
        if (pt.graph == "er")
            net = gen_er(pt.n, cfg.asen_edge_prob, pt.seed);
        else if (pt.graph == "ba")
            net = gen_ba(pt.n, pt.seed);
        else
            throw input_error("asen-sweep: unknown graph type '" + pt.graph + "'");
        net.influence_prob = cfg.asen_edge_prob;

        AsenProblem prob;
        prob.network = net;
        prob.faulty_seeds = influence_max_greedy(net, std::min(cfg.asen_n_faulty, pt.n),
                                                 cfg.asen_im_rollouts, pt.seed);
        prob.budget = std::min(pt.K, pt.n);
        prob.discount = cfg.asen_gamma;
        prob.n_rollouts = cfg.asen_rollouts;
        prob.noise_seed = derive_seed(pt.seed, 31);

        CachingObjective obj(asen_objective(prob));
        auto cands = asen_candidates(prob);
        auto gre = greedy_select(obj.ref(), cands, prob.budget);

        // Restricted brute force: pool the strongest singleton candidates,
        // together with greedy's own picks, then enumerate.
        std::vector<std::pair<double, int>> singles;
        for (int v : cands) singles.push_back({obj({v}), v});
        std::sort(singles.begin(), singles.end(), [](const auto& a, const auto& b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        });
        std::vector<int> pool = gre.selected;
        for (const auto& [val, v] : singles) {
            if (static_cast<int>(pool.size()) >= std::max(cfg.asen_pool_size, prob.budget)) break;
            if (std::find(pool.begin(), pool.end(), v) == pool.end()) pool.push_back(v);
        }
        std::sort(pool.begin(), pool.end());
        auto opt = brute_force_select(obj.ref(), pool, std::vector<double>(pool.size(), 1.0),
                                      prob.budget);

        auto rnd = random_select_baseline(cands, prob.budget, derive_seed(pt.seed, 77));
        double rnd_value = obj(rnd);
        double wall = elapsed_s(t0);

        std::ostringstream id;
        id << pt.graph << "-n" << pt.n << "-K" << pt.K << "-s" << pt.seed;
        std::vector<RunRow> rows;
        rows.push_back({id.str(), "greedy", gre.value, opt.value, gre.value / opt.value, wall, ""});
        rows.push_back({id.str(), "brute", opt.value, opt.value, 1.0, 0.0, ""});
        rows.push_back({id.str(), "random", rnd_value, opt.value, rnd_value / opt.value, 0.0, ""});
        return rows;
    };
    auto per = parallel_map(static_cast<int>(points.size()), cfg.jobs, one);
    std::vector<RunRow> rows;
    for (auto& block : per) rows.insert(rows.end(), block.begin(), block.end());
    return rows;
}

}  // namespace detail

inline RunReport run(const ExperimentConfig& cfg) {
    cfg.validate();
    RunReport report;
    if (cfg.kind == "lemma-check")
        report.rows = detail::run_lemma_check(cfg);
    else if (cfg.kind == "prop-gap")
        report.rows = detail::run_prop_gap(cfg, /*actuators=*/false);
    else if (cfg.kind == "prop-gap-as")
        report.rows = detail::run_prop_gap(cfg, /*actuators=*/true);
    else if (cfg.kind == "reduction-audit")
        report.rows = detail::run_reduction_audit(cfg);
    else if (cfg.kind == "random-ss")
        report.rows = detail::run_random_study(cfg, /*actuators=*/false);
    else if (cfg.kind == "random-as")
        report.rows = detail::run_random_study(cfg, /*actuators=*/true);
    else if (cfg.kind == "asen-sweep")
        report.rows = detail::run_asen_sweep(cfg);
    report.finalize();
    if (!cfg.out_path.empty()) write_report_csv(report, cfg.out_path);
    return report;
}

}  // namespace fmdpsel
