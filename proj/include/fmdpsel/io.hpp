#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "fmdpsel/cascade.hpp"
#include "fmdpsel/errors.hpp"
#include "fmdpsel/fmdp.hpp"
#include "fmdpsel/instances.hpp"
#include "fmdpsel/pomdp.hpp"
#include "fmdpsel/problems.hpp"
#include "fmdpsel/selection.hpp"

namespace fmdpsel {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// JSON bindings

inline void to_json(json& j, const RewardComponent& r) {
    static const char* names[] = {"table", "tilde_or", "tilde_and_all"};
    j = json{{"kind", names[static_cast<int>(r.kind)]},
             {"state_scope", r.state_scope},
             {"action_scope", r.action_scope},
             {"table", r.table},
             {"fire_reward", r.fire_reward},
             {"groups", r.groups}};
}

inline void from_json(const json& j, RewardComponent& r) {
    std::string kind = j.at("kind");
    if (kind == "table")
        r.kind = RewardComponent::Kind::Table;
    else if (kind == "tilde_or")
        r.kind = RewardComponent::Kind::TildeOr;
    else if (kind == "tilde_and_all")
        r.kind = RewardComponent::Kind::TildeAndAll;
    else
        throw input_error("reward component: unknown kind '" + kind + "'");
    j.at("state_scope").get_to(r.state_scope);
    j.at("action_scope").get_to(r.action_scope);
    j.at("table").get_to(r.table);
    j.at("fire_reward").get_to(r.fire_reward);
    j.at("groups").get_to(r.groups);
}

inline void to_json(json& j, const TransitionKernel& k) {
    j = json{{"action_factor", k.action_factor}, {"parents", k.parents}, {"probs", k.probs}};
}

inline void from_json(const json& j, TransitionKernel& k) {
    j.at("action_factor").get_to(k.action_factor);
    j.at("parents").get_to(k.parents);
    j.at("probs").get_to(k.probs);
}

inline void to_json(json& j, const FactoredMdp& m) {
    j = json{{"state_domains", m.state_domains},
             {"action_domains", m.action_domains},
             {"kernels", m.kernels},
             {"rewards", m.rewards},
             {"discount", m.discount},
             {"initial_belief_factors", m.initial_belief_factors}};
}

inline void from_json(const json& j, FactoredMdp& m) {
    j.at("state_domains").get_to(m.state_domains);
    j.at("action_domains").get_to(m.action_domains);
    j.at("kernels").get_to(m.kernels);
    j.at("rewards").get_to(m.rewards);
    j.at("discount").get_to(m.discount);
    j.at("initial_belief_factors").get_to(m.initial_belief_factors);
}

inline void to_json(json& j, const ExplicitMdp& m) {
    j = json{{"n_states", m.n_states},
             {"n_actions", m.n_actions},
             {"transitions", m.transitions},
             {"rewards", m.rewards},
             {"discount", m.discount},
             {"state_factor_sizes", m.state_factor_sizes}};
}

inline void from_json(const json& j, ExplicitMdp& m) {
    j.at("n_states").get_to(m.n_states);
    j.at("n_actions").get_to(m.n_actions);
    j.at("transitions").get_to(m.transitions);
    j.at("rewards").get_to(m.rewards);
    j.at("discount").get_to(m.discount);
    j.at("state_factor_sizes").get_to(m.state_factor_sizes);
}

inline void to_json(json& j, const Sensor& s) {
    j = json{{"variable", s.variable},
             {"likelihood", s.likelihood},
             {"n_symbols", s.n_symbols},
             {"cost", s.cost}};
}

inline void from_json(const json& j, Sensor& s) {
    j.at("variable").get_to(s.variable);
    j.at("likelihood").get_to(s.likelihood);
    j.at("n_symbols").get_to(s.n_symbols);
    j.at("cost").get_to(s.cost);
}

inline void to_json(json& j, const SensorCatalog& c) {
    j = json{{"sensors", c.sensors}, {"budget", c.budget}};
}

inline void from_json(const json& j, SensorCatalog& c) {
    j.at("sensors").get_to(c.sensors);
    j.at("budget").get_to(c.budget);
}

inline void to_json(json& j, const Actuator& a) {
    j = json{{"variable", a.variable},
             {"explicit_actions", a.explicit_actions},
             {"cost", a.cost}};
}

inline void from_json(const json& j, Actuator& a) {
    j.at("variable").get_to(a.variable);
    j.at("explicit_actions").get_to(a.explicit_actions);
    j.at("cost").get_to(a.cost);
}

inline void to_json(json& j, const ActuatorCatalog& c) {
    j = json{{"actuators", c.actuators}, {"budget", c.budget}};
}

inline void from_json(const json& j, ActuatorCatalog& c) {
    j.at("actuators").get_to(c.actuators);
    j.at("budget").get_to(c.budget);
}

inline void to_json(json& j, const FactoredSensorProblem& p) {
    j = json{{"fmdp", p.fmdp}, {"catalog", p.catalog}};
}

inline void from_json(const json& j, FactoredSensorProblem& p) {
    j.at("fmdp").get_to(p.fmdp);
    j.at("catalog").get_to(p.catalog);
}

inline void to_json(json& j, const FactoredActuatorProblem& p) {
    j = json{{"fmdp", p.fmdp}, {"catalog", p.catalog}};
}

inline void from_json(const json& j, FactoredActuatorProblem& p) {
    j.at("fmdp").get_to(p.fmdp);
    j.at("catalog").get_to(p.catalog);
}

inline void to_json(json& j, const ExplicitSensorProblem& p) {
    j = json{{"model", p.model}, {"initial_belief", p.initial_belief}, {"catalog", p.catalog}};
}

inline void from_json(const json& j, ExplicitSensorProblem& p) {
    j.at("model").get_to(p.model);
    j.at("initial_belief").get_to(p.initial_belief);
    j.at("catalog").get_to(p.catalog);
}

inline void to_json(json& j, const ExplicitActuatorProblem& p) {
    j = json{{"model", p.model},
             {"base_actions", p.base_actions},
             {"catalog", p.catalog},
             {"initial_distribution", p.initial_distribution}};
}

inline void from_json(const json& j, ExplicitActuatorProblem& p) {
    j.at("model").get_to(p.model);
    j.at("base_actions").get_to(p.base_actions);
    j.at("catalog").get_to(p.catalog);
    j.at("initial_distribution").get_to(p.initial_distribution);
}

inline void to_json(json& j, const SetCoverInstance& s) {
    j = json{{"universe_size", s.universe_size}, {"sets", s.sets}, {"bound", s.bound}};
}

inline void from_json(const json& j, SetCoverInstance& s) {
    j.at("universe_size").get_to(s.universe_size);
    j.at("sets").get_to(s.sets);
    j.at("bound").get_to(s.bound);
}

template <typename Problem>
inline void to_json(json& j, const ReductionInstance<Problem>& r) {
    j = json{{"problem", r.problem},   {"source", r.source},
             {"threshold", r.threshold}, {"gap_bound", r.gap_bound},
             {"layer3_count", r.layer3_count}, {"R", r.R},
             {"gamma", r.gamma},       {"delta", r.delta},
             {"c_exp", r.c_exp}};
}

template <typename Problem>
inline void from_json(const json& j, ReductionInstance<Problem>& r) {
    j.at("problem").get_to(r.problem);
    j.at("source").get_to(r.source);
    j.at("threshold").get_to(r.threshold);
    j.at("gap_bound").get_to(r.gap_bound);
    j.at("layer3_count").get_to(r.layer3_count);
    j.at("R").get_to(r.R);
    j.at("gamma").get_to(r.gamma);
    j.at("delta").get_to(r.delta);
    j.at("c_exp").get_to(r.c_exp);
}

// ---------------------------------------------------------------------------
// Instance files

using InstanceVariant = std::variant<FactoredSensorProblem, FactoredActuatorProblem,
                                     ExplicitSensorProblem, ExplicitActuatorProblem, SsReduction,
                                     AsReduction>;

namespace detail {

inline const char* instance_tag(const FactoredSensorProblem&) { return "factored_sensor"; }
inline const char* instance_tag(const FactoredActuatorProblem&) { return "factored_actuator"; }
inline const char* instance_tag(const ExplicitSensorProblem&) { return "explicit_sensor"; }
inline const char* instance_tag(const ExplicitActuatorProblem&) { return "explicit_actuator"; }
inline const char* instance_tag(const SsReduction&) { return "reduction_ss"; }
inline const char* instance_tag(const AsReduction&) { return "reduction_as"; }

inline json parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw input_error("parse error in " + path + ": " + e.what());
    }
}

}  // namespace detail

template <typename Problem>
inline void save_instance(const Problem& p, const std::string& path) {
    json j;
    j["format"] = detail::instance_tag(p);
    j["data"] = p;
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path);
    out << j.dump(1) << '\n';
}

inline InstanceVariant load_instance(const std::string& path) {
    json j = detail::parse_file(path);
    std::string tag;
    try {
        tag = j.at("format").get<std::string>();
        const json& d = j.at("data");
        if (tag == "factored_sensor") return d.get<FactoredSensorProblem>();
        if (tag == "factored_actuator") return d.get<FactoredActuatorProblem>();
        if (tag == "explicit_sensor") return d.get<ExplicitSensorProblem>();
        if (tag == "explicit_actuator") return d.get<ExplicitActuatorProblem>();
        if (tag == "reduction_ss") return d.get<SsReduction>();
        if (tag == "reduction_as") return d.get<AsReduction>();
    } catch (const json::exception& e) {
        throw input_error("malformed instance file " + path + ": " + e.what());
    }
    throw input_error("unknown instance format '" + tag + "' in " + path);
}

// ---------------------------------------------------------------------------
// SetCover files (plain JSON, same reader conventions)

inline void save_setcover(const SetCoverInstance& sc, const std::string& path) {
    json j = sc;
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path);
    out << j.dump(1) << '\n';
}

inline SetCoverInstance load_setcover(const std::string& path) {
    json j = detail::parse_file(path);
    try {
        auto sc = j.get<SetCoverInstance>();
        sc.validate();
        return sc;
    } catch (const json::exception& e) {
        throw input_error("malformed SetCover file " + path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Graph edge lists: "u v" per line, 0-based, plus a "# nodes N" header

inline void save_graph(const CascadeNetwork& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path);
    out << "# nodes " << g.n_nodes << '\n';
    for (auto [u, v] : g.edges) out << u << ' ' << v << '\n';
}

inline CascadeNetwork load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    CascadeNetwork g;
    std::string line;
    int lineno = 0;
    bool have_nodes = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '#') {
            std::string hash, word;
            ls >> hash >> word >> g.n_nodes;
            if (word != "nodes" || g.n_nodes < 0)
                throw input_error(path + ":" + std::to_string(lineno) + ": bad header");
            g.adjacency.assign(g.n_nodes, {});
            have_nodes = true;
            continue;
        }
        int u, v;
        if (!(ls >> u >> v))
            throw input_error(path + ":" + std::to_string(lineno) + ": expected 'u v'");
        if (!have_nodes) {
            g.n_nodes = std::max({g.n_nodes, u + 1, v + 1});
            g.adjacency.resize(g.n_nodes);
        }
        if (u >= g.n_nodes || v >= g.n_nodes || u < 0 || v < 0)
            throw input_error(path + ":" + std::to_string(lineno) + ": node out of range");
        g.add_edge(u, v);
    }
    g.finalize();
    g.validate();
    return g;
}

// ---------------------------------------------------------------------------
// CSV writers. Doubles are printed with shortest round-trip formatting and
// a '.' decimal separator regardless of locale.

inline std::string csv_double(double v) {
    json j = v;
    return j.dump();
}

inline void write_trace_csv(const SelectionReport& report, std::ostream& out) {
    out << "iteration,candidate,gain,chosen\n";
    for (const auto& row : report.trace)
        out << row.iteration << ',' << row.candidate << ',' << csv_double(row.gain) << ','
            << (row.chosen ? 1 : 0) << '\n';
}

inline void write_trace_csv(const SelectionReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path);
    write_trace_csv(report, out);
}

inline void save_alpha_set(const std::vector<AlphaVector>& vs, const std::string& path) {
    json j = json::array();
    for (const auto& a : vs) j.push_back({{"action", a.action}, {"values", a.values}});
    std::ofstream out(path);
    if (!out) throw input_error("cannot write file: " + path);
    out << j.dump(1) << '\n';
}

inline std::vector<AlphaVector> load_alpha_set(const std::string& path) {
    json j = detail::parse_file(path);
    std::vector<AlphaVector> vs;
    try {
        for (const auto& e : j) {
            AlphaVector a;
            e.at("action").get_to(a.action);
            e.at("values").get_to(a.values);
            vs.push_back(std::move(a));
        }
    } catch (const json::exception& e) {
        throw input_error("malformed alpha set " + path + ": " + e.what());
    }
    return vs;
}

}  // namespace fmdpsel
