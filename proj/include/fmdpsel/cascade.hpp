#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "fmdpsel/errors.hpp"
#include "fmdpsel/rng.hpp"
#include "fmdpsel/selection.hpp"

namespace fmdpsel {

/// Undirected graph with a uniform edge activation probability. Edges are
/// kept both as adjacency lists and as a canonical (u < v) edge list.
struct CascadeNetwork {
    int n_nodes = 0;
    std::vector<std::vector<int>> adjacency;
    std::vector<std::pair<int, int>> edges;
    double influence_prob = 0.3;

    void add_edge(int u, int v) {
        if (u == v) throw input_error("cascade: self loops not allowed");
        if (u > v) std::swap(u, v);
        edges.emplace_back(u, v);
        adjacency[u].push_back(v);
        adjacency[v].push_back(u);
    }

    void finalize() {
        std::sort(edges.begin(), edges.end());
        edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
        for (auto& nbrs : adjacency) {
            std::sort(nbrs.begin(), nbrs.end());
            nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
        }
    }

    void validate() const {
        if (n_nodes < 0) throw input_error("cascade: negative node count");
        if (static_cast<int>(adjacency.size()) != n_nodes)
            throw input_error("cascade: adjacency size mismatch");
        if (influence_prob < 0 || influence_prob > 1)
            throw input_error("cascade: influence probability outside [0,1]");
        for (auto [u, v] : edges)
            if (u < 0 || v < 0 || u >= n_nodes || v >= n_nodes || u >= v)
                throw input_error("cascade: malformed edge");
    }
};

/// Erdos-Renyi G(n, p_edge); each unordered pair independently present.
inline CascadeNetwork gen_er(int n, double p_edge, std::uint64_t seed) {
    if (n < 1) throw input_error("gen_er: need at least one node");
    if (p_edge < 0 || p_edge > 1) throw input_error("gen_er: probability outside [0,1]");
    CascadeNetwork g;
    g.n_nodes = n;
    g.adjacency.resize(n);
    Rng rng = make_rng(seed, 7001);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (uniform01(rng) < p_edge) g.add_edge(u, v);
    g.finalize();
    return g;
}

/// Barabasi-Albert preferential attachment, seeded from an (m_attach+1)
/// clique; every later node attaches m_attach edges, with targets drawn
/// degree-proportionally from the endpoint multiset.
inline CascadeNetwork gen_ba(int n, std::uint64_t seed, int m_attach = 2) {
    if (m_attach < 1) throw input_error("gen_ba: attachment count must be positive");
    if (n < m_attach + 1) throw input_error("gen_ba: need more nodes than the seed clique");
    CascadeNetwork g;
    g.n_nodes = n;
    g.adjacency.resize(n);
    Rng rng = make_rng(seed, 7002);
    std::vector<int> endpoint_pool;
    for (int u = 0; u <= m_attach; ++u)
        for (int v = u + 1; v <= m_attach; ++v) {
            g.add_edge(u, v);
            endpoint_pool.push_back(u);
            endpoint_pool.push_back(v);
        }
    for (int u = m_attach + 1; u < n; ++u) {
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < m_attach) {
            std::size_t pick = static_cast<std::size_t>(uniform01(rng) * endpoint_pool.size());
            if (pick >= endpoint_pool.size()) pick = endpoint_pool.size() - 1;
            targets.insert(endpoint_pool[pick]);
        }
        for (int v : targets) {
            g.add_edge(u, v);
            endpoint_pool.push_back(u);
            endpoint_pool.push_back(v);
        }
    }
    g.finalize();
    return g;
}

/// One independent-cascade rollout. Islanded nodes are cut out before
/// anything spreads: they neither fail nor relay failures.
struct CascadeTrajectory {
    std::vector<int> failure_time;          // -1 = never failed
    std::vector<int> healthy_counts;        // per step 0..termination_step
    std::vector<std::vector<int>> newly_faulty;  // per step, step 0 = seeds
    int termination_step = 0;               // first step with no new failures
    int healthy_final = 0;
};

inline CascadeTrajectory simulate_cascade(const CascadeNetwork& g, const std::vector<int>& faulty0,
                                          const std::vector<int>& islanded_nodes, Rng& rng) {
    std::vector<char> islanded(g.n_nodes, 0);
    for (int v : islanded_nodes) {
        if (v < 0 || v >= g.n_nodes)
            throw input_error("simulate_cascade: islanded node out of range");
        islanded[v] = 1;
    }
    // Live-edge form of the independent cascade: each directed attempt is
    // sampled once, in canonical edge order, before anything spreads. The
    // failed set is then BFS reachability over live edges. This matches the
    // sequential process in distribution while consuming the stream
    // identically for every seed/islanding placement, so paired rollouts
    // couple exactly (more seeds never save a node, islanding never costs
    // one).
    std::vector<std::vector<int>> live(g.n_nodes);
    for (auto [u, v] : g.edges) {
        if (uniform01(rng) < g.influence_prob) live[u].push_back(v);
        if (uniform01(rng) < g.influence_prob) live[v].push_back(u);
    }
    CascadeTrajectory tr;
    tr.failure_time.assign(g.n_nodes, -1);
    std::vector<int> frontier;
    tr.newly_faulty.emplace_back();
    for (int s : faulty0) {
        if (s < 0 || s >= g.n_nodes) throw input_error("simulate_cascade: seed node out of range");
        if (islanded[s] || tr.failure_time[s] == 0) continue;
        tr.failure_time[s] = 0;
        frontier.push_back(s);
    }
    std::sort(frontier.begin(), frontier.end());
    tr.newly_faulty.back() = frontier;
    int faulty_count = static_cast<int>(frontier.size());
    tr.healthy_counts.push_back(g.n_nodes - faulty_count);
    int t = 0;
    while (!frontier.empty()) {
        ++t;
        std::vector<int> next;
        for (int u : frontier)
            for (int v : live[u])
                if (!islanded[v] && tr.failure_time[v] < 0) {
                    tr.failure_time[v] = t;
                    next.push_back(v);
                }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        faulty_count += static_cast<int>(next.size());
        tr.newly_faulty.push_back(next);
        tr.healthy_counts.push_back(g.n_nodes - faulty_count);
        frontier = std::move(next);
    }
    tr.termination_step = static_cast<int>(tr.healthy_counts.size()) - 1;
    tr.healthy_final = g.n_nodes - faulty_count;
    return tr;
}

/// Greedy influence maximization: repeatedly add the node with the largest
/// Monte Carlo marginal spread, lowest index on ties.
inline std::vector<int> influence_max_greedy(const CascadeNetwork& g, int seed_count, int rollouts,
                                             std::uint64_t seed) {
    g.validate();
    if (seed_count < 0 || seed_count > g.n_nodes)
        throw input_error("influence_max_greedy: seed count out of range");
    auto spread = [&](const std::vector<int>& seeds) {
        double sum = 0.0;
        for (int i = 0; i < rollouts; ++i) {
            Rng rng = make_rng(seed, 8000 + static_cast<std::uint64_t>(i));
            auto tr = simulate_cascade(g, seeds, {}, rng);
            sum += g.n_nodes - tr.healthy_final;
        }
        return sum / std::max(rollouts, 1);
    };
    std::vector<int> chosen;
    for (int round = 0; round < seed_count; ++round) {
        int best = -1;
        double best_v = 0.0;
        for (int v = 0; v < g.n_nodes; ++v) {
            if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
            auto trial = chosen;
            trial.push_back(v);
            double val = spread(trial);
            if (best < 0 || val > best_v) {
                best_v = val;
                best = v;
            }
        }
        chosen.push_back(best);
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

/// Budgeted islanding against a fixed seed set, +1 per healthy node per
/// step, discounted.
struct AsenProblem {
    CascadeNetwork network;
    std::vector<int> faulty_seeds;
    int budget = 5;
    double discount = 0.95;
    int n_rollouts = 2000;
    std::uint64_t noise_seed = 0;

    void validate() const {
        network.validate();
        if (discount <= 0 || discount >= 1) throw input_error("asen: gamma must be in (0,1)");
        if (budget < 0 || budget > network.n_nodes)
            throw input_error("asen: budget out of range");
        for (int s : faulty_seeds)
            if (s < 0 || s >= network.n_nodes) throw input_error("asen: seed node out of range");
        if (n_rollouts < 1) throw input_error("asen: need at least one rollout");
    }
};

namespace detail {

/// Discounted return of one rollout. Once the cascade settles the healthy
/// count is constant, so the tail sums in closed form.
inline double trajectory_return(const CascadeTrajectory& tr, double gamma) {
    double total = 0.0;
    for (int t = 0; t < tr.termination_step; ++t)
        total += tr.healthy_counts[t] * std::pow(gamma, t);
    total += tr.healthy_final * std::pow(gamma, tr.termination_step) / (1.0 - gamma);
    return total;
}

}  // namespace detail

/// Monte Carlo estimate of the discounted healthy-node return under a
/// given islanding placement. Rollout i always draws from the stream
/// derived from (noise_seed, i), whatever the placement, so evaluations of
/// different placements share common random numbers.
inline double asen_discounted_return(const AsenProblem& prob, const std::vector<int>& islanded) {
    prob.validate();
    double sum = 0.0;
    for (int i = 0; i < prob.n_rollouts; ++i) {
        Rng rng = make_rng(prob.noise_seed, 9000 + static_cast<std::uint64_t>(i));
        auto tr = simulate_cascade(prob.network, prob.faulty_seeds, islanded, rng);
        sum += detail::trajectory_return(tr, prob.discount);
    }
    return sum / prob.n_rollouts;
}

inline SubsetObjective asen_objective(const AsenProblem& prob) {
    return [prob](const std::vector<int>& subset) { return asen_discounted_return(prob, subset); };
}

inline std::vector<int> asen_candidates(const AsenProblem& prob) {
    std::vector<int> c(prob.network.n_nodes);
    for (int v = 0; v < prob.network.n_nodes; ++v) c[v] = v;
    return c;
}

/// Uniform random budget-size subset, seeded.
inline std::vector<int> random_select_baseline(std::vector<int> candidates, int budget,
                                               std::uint64_t seed) {
    if (budget < 0 || budget > static_cast<int>(candidates.size()))
        throw input_error("random_select_baseline: budget out of range");
    Rng rng = make_rng(seed, 9999);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    candidates.resize(budget);
    std::sort(candidates.begin(), candidates.end());
    return candidates;
}

}  // namespace fmdpsel
