#include <cstdint>
#include <iostream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "fmdpsel/experiments.hpp"
#include "fmdpsel/io.hpp"

namespace {

using namespace fmdpsel;

std::vector<int> parse_subset(const std::string& csv) {
    std::vector<int> out;
    std::istringstream in(csv);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw input_error("bad subset entry '" + tok + "'");
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

double evaluate_any(const InstanceVariant& inst, const std::vector<int>& subset,
                    const EvalOptions& opts) {
    return std::visit(
        [&](const auto& p) -> double {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SsReduction> || std::is_same_v<T, AsReduction>)
                return evaluate_any(InstanceVariant{p.problem}, subset, opts);
            else if constexpr (std::is_same_v<T, FactoredSensorProblem> ||
                               std::is_same_v<T, ExplicitSensorProblem>)
                return evaluate_sensor_set(p, subset, opts);
            else
                return evaluate_actuator_set(p, subset, opts);
        },
        inst);
}

struct CatalogView {
    std::vector<double> costs;
    double budget = 0.0;
};

CatalogView catalog_of(const InstanceVariant& inst) {
    return std::visit(
        [](const auto& p) -> CatalogView {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, SsReduction> || std::is_same_v<T, AsReduction>)
                return catalog_of(InstanceVariant{p.problem});
            else
                return {p.catalog.costs(), p.catalog.budget};
        },
        inst);
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Design-time sensor and actuator selection for factored MDPs"};
    app.require_subcommand(1);

    std::string config_path, out_path, instance_path, subset_csv = "", method = "greedy";
    std::uint64_t seed = 1;
    int jobs = 1;
    double tol = 1e-9, eta = 1e-6;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "root RNG seed");
        sub->add_option("--out", out_path, "output path");
        sub->add_option("--jobs", jobs, "worker thread count");
        sub->add_option("--tol", tol, "MDP solver tolerance");
        sub->add_option("--eta", eta, "POMDP value tolerance");
    };

    auto* solve = app.add_subcommand("solve", "evaluate one selection on one instance");
    solve->add_option("--instance", instance_path, "instance file")->required();
    solve->add_option("--subset", subset_csv, "comma-separated catalog indices (default empty)");
    add_common(solve);

    auto* select = app.add_subcommand("select", "run a selection method on one instance");
    select->add_option("--instance", instance_path, "instance file")->required();
    select->add_option("--method", method, "greedy | cost-ratio | brute | random");
    add_common(select);

    std::string setcover_path, variant = "ss";
    double c_exp = 2.0, R = 1.0, gamma = 0.5;
    auto* reduce = app.add_subcommand("reduce", "emit a reduction instance from a SetCover file");
    reduce->add_option("--setcover", setcover_path, "SetCover JSON file")->required();
    reduce->add_option("--variant", variant, "ss | as");
    reduce->add_option("--c-exp", c_exp, "layer-3 exponent");
    reduce->add_option("--R", R, "reward scale");
    reduce->add_option("--gamma", gamma, "discount factor");
    add_common(reduce);

    auto* cascade = app.add_subcommand("cascade", "run the networked-islanding sweeps");
    cascade->add_option("--config", config_path, "experiment config (kind asen-sweep)");
    add_common(cascade);

    auto* sweep = app.add_subcommand("sweep", "run a configured experiment");
    sweep->add_option("--config", config_path, "experiment config file")->required();
    add_common(sweep);

    CLI11_PARSE(app, argc, argv);

    EvalOptions opts;
    opts.eta = eta;
    opts.mdp_tol = tol;

    if (solve->parsed()) {
        auto inst = load_instance(instance_path);
        double v = evaluate_any(inst, parse_subset(subset_csv), opts);
        std::cout << "value " << csv_double(v) << '\n';
        return 0;
    }

    if (select->parsed()) {
        auto inst = load_instance(instance_path);
        auto cat = catalog_of(inst);
        std::vector<int> cands(cat.costs.size());
        std::iota(cands.begin(), cands.end(), 0);
        CachingObjective obj(
            [&](const std::vector<int>& y) { return evaluate_any(inst, y, opts); });
        SelectionReport rep;
        if (method == "greedy")
            rep = greedy_select_cost_ratio(obj.ref(), cands, cat.costs, cat.budget);
        else if (method == "cost-ratio")
            rep = greedy_select_cost_ratio(obj.ref(), cands, cat.costs, cat.budget);
        else if (method == "brute")
            rep = brute_force_select(obj.ref(), cands, cat.costs, cat.budget);
        else if (method == "random") {
            auto afford = filter_affordable(cands, cat.costs, cat.budget);
            double spent = 0.0;
            auto pick = random_select_baseline(afford, static_cast<int>(afford.size()), seed);
            rep.selected.clear();
            for (int i : pick) {
                if (spent + cat.costs[i] > cat.budget) continue;
                rep.selected.push_back(i);
                spent += cat.costs[i];
            }
            std::sort(rep.selected.begin(), rep.selected.end());
            rep.value = obj(rep.selected);
        } else
            throw input_error("unknown method '" + method + "'");
        std::cout << "selected";
        for (int i : rep.selected) std::cout << ' ' << i;
        std::cout << "\nvalue " << csv_double(rep.value) << '\n';
        if (!out_path.empty()) write_trace_csv(rep, out_path);
        return 0;
    }

    if (reduce->parsed()) {
        auto sc = load_setcover(setcover_path);
        if (out_path.empty()) throw input_error("reduce: --out is required");
        if (variant == "ss")
            save_instance(setcover_to_fmdp_ss(sc, c_exp, R, gamma), out_path);
        else if (variant == "as")
            save_instance(setcover_to_fmdp_as(sc, c_exp, R, gamma), out_path);
        else
            throw input_error("reduce: variant must be ss or as");
        std::cout << "wrote " << out_path << '\n';
        return 0;
    }

    if (cascade->parsed() || sweep->parsed()) {
        ExperimentConfig cfg;
        if (!config_path.empty())
            cfg = load_config(config_path);
        else
            cfg.kind = "asen-sweep";
        if (cascade->parsed() && cfg.kind != "asen-sweep")
            throw input_error("cascade: config kind must be asen-sweep");
        for (auto* sub : {cascade, sweep}) {
            if (!sub->parsed()) continue;
            if (sub->count("--seed")) cfg.seeds = {seed};
            if (sub->count("--jobs")) cfg.jobs = jobs;
            if (sub->count("--eta")) cfg.eta = eta;
            if (sub->count("--tol")) cfg.tol = tol;
            if (sub->count("--out")) cfg.out_path = out_path;
        }
        auto report = ::fmdpsel::run(cfg);
        auto stats = summarize(report);
        std::cout << "rows " << stats.count << "\nmean_ratio " << csv_double(stats.mean_ratio)
                  << "\nmin_ratio " << csv_double(stats.min_ratio) << "\nmax_ratio "
                  << csv_double(stats.max_ratio) << '\n';
        return 0;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const fmdpsel::capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << '\n';
        return 3;
    } catch (const fmdpsel::input_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
