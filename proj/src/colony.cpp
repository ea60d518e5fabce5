#include "antnet/colony.hpp"

#include <cmath>
#include <stdexcept>

namespace antnet {

void SolverParams::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("params: alpha must be >= 0");
    if (!(beta >= 0.0) || !std::isfinite(beta))
        throw std::invalid_argument("params: beta must be >= 0");
    if (!(rho > 0.0) || !(rho < 1.0)) throw std::invalid_argument("params: rho must lie in (0,1)");
    if (!(q0 >= 0.0) || !(q0 <= 1.0)) throw std::invalid_argument("params: q0 must lie in [0,1]");
    if (!(e_weight >= 0.0) || !std::isfinite(e_weight))
        throw std::invalid_argument("params: e_weight must be >= 0");
    if (n_ants < 1) throw std::invalid_argument("params: n_ants must be >= 1");
    if (n_iterations < 1) throw std::invalid_argument("params: n_iterations must be >= 1");
    if (rule.kind == DepositionKind::Exponential && !(rule.time_constant > 0.0))
        throw std::invalid_argument("params: exponential rule needs a positive time constant");
}

double visibility(const Roadmap& map, int i, int k, int dest) {
    const std::size_t e = map.edge_index(i, k);
    if (e == Roadmap::npos)
        throw std::invalid_argument("visibility: cities are not joined by an edge");
    if (!map.valid_city(dest)) throw std::invalid_argument("visibility: invalid destination");
    return 1.0 / (map.edge_length(e) + map.distance(k, dest));
}

namespace {

struct FeasibleMoves {
    std::vector<int> neighbors;         // ascending id (adjacency order)
    std::vector<std::size_t> edges;
    std::vector<double> weight;         // tau^alpha * eta^beta, max-normalized inputs
};

// Weights for the unvisited neighbors of `current`. tau and eta are
// divided by their maxima before exponentiation; the choice rule only
// ever sees ratios, and this keeps weights in a safe range for large
// exponents.
FeasibleMoves feasible_moves(const TrailState& state, const Roadmap& map, int current,
                             const std::vector<char>& visited, int dest,
                             const SolverParams& params) {
    FeasibleMoves moves;
    double max_tau = 0.0;
    double max_eta = 0.0;
    for (const Roadmap::Adjacent& a : map.neighbors(current)) {
        if (visited[static_cast<std::size_t>(a.neighbor)]) continue;
        moves.neighbors.push_back(a.neighbor);
        moves.edges.push_back(a.edge_index);
        max_tau = std::max(max_tau, state.tau(a.edge_index));
        max_eta = std::max(max_eta, 1.0 / (map.edge_length(a.edge_index) +
                                           map.distance(a.neighbor, dest)));
    }
    if (moves.neighbors.empty()) return moves;

    moves.weight.resize(moves.neighbors.size());
    for (std::size_t i = 0; i < moves.neighbors.size(); ++i) {
        const double tau = state.tau(moves.edges[i]);
        const double eta = 1.0 / (map.edge_length(moves.edges[i]) +
                                  map.distance(moves.neighbors[i], dest));
        const double tau_norm = max_tau > 0.0 ? tau / max_tau : 0.0;  // pow(0,0) == 1
        moves.weight[i] = std::pow(tau_norm, params.alpha) * std::pow(eta / max_eta, params.beta);
    }
    return moves;
}

}  // namespace

TransitionProbabilities transition_probabilities(const TrailState& state,
                                                 const Roadmap& map, int current,
                                                 const std::vector<char>& visited,
                                                 int dest, const SolverParams& params) {
    if (!map.valid_city(current) || !map.valid_city(dest))
        throw std::invalid_argument("transition_probabilities: invalid city id");
    if (visited.size() != map.city_count())
        throw std::invalid_argument("transition_probabilities: visited set size mismatch");

    FeasibleMoves moves = feasible_moves(state, map, current, visited, dest, params);
    TransitionProbabilities result;
    if (moves.neighbors.empty()) return result;  // dead end

    double total = 0.0;
    for (double w : moves.weight) total += w;
    result.neighbors = std::move(moves.neighbors);
    result.probability.resize(result.neighbors.size());
    if (total > 0.0) {
        for (std::size_t i = 0; i < result.probability.size(); ++i)
            result.probability[i] = moves.weight[i] / total;
    } else {
        // All weights vanished (e.g. tau0 = 0 with alpha > 0): fall back
        // to a uniform draw rather than dividing by zero.
        const double u = 1.0 / static_cast<double>(result.probability.size());
        for (double& p : result.probability) p = u;
    }
    return result;
}

std::optional<int> step(const TrailState& state, const Roadmap& map, int current,
                        const std::vector<char>& visited, int dest,
                        const SolverParams& params, Rng& rng) {
    FeasibleMoves moves = feasible_moves(state, map, current, visited, dest, params);
    if (moves.neighbors.empty()) return std::nullopt;

    const double q = rng.uniform01();
    if (q < params.q0) {
        // Probabilistic branch: roulette wheel over the normalized weights.
        double total = 0.0;
        for (double w : moves.weight) total += w;
        const double u = rng.uniform01();
        if (total > 0.0) {
            double acc = 0.0;
            for (std::size_t i = 0; i < moves.neighbors.size(); ++i) {
                acc += moves.weight[i] / total;
                if (u < acc) return moves.neighbors[i];
            }
        } else {
            const std::size_t i = static_cast<std::size_t>(
                u * static_cast<double>(moves.neighbors.size()));
            return moves.neighbors[std::min(i, moves.neighbors.size() - 1)];
        }
        return moves.neighbors.back();  // u landed in rounding slack
    }

    // Greedy branch: argmax of tau^alpha * eta^beta, lowest id on ties.
    std::size_t best = 0;
    for (std::size_t i = 1; i < moves.neighbors.size(); ++i)
        if (moves.weight[i] > moves.weight[best]) best = i;
    return moves.neighbors[best];
}

PathResult construct_path(const TrailState& state, const Roadmap& map, int source,
                          int dest, const SolverParams& params, Rng& rng) {
    if (!map.valid_city(source) || !map.valid_city(dest))
        throw std::invalid_argument("construct_path: invalid city id");
    if (source == dest) throw std::invalid_argument("construct_path: source equals destination");

    PathResult path;
    path.nodes.push_back(source);
    std::vector<char> visited(map.city_count(), 0);
    visited[static_cast<std::size_t>(source)] = 1;

    int current = source;
    while (current != dest) {
        const std::optional<int> next = step(state, map, current, visited, dest, params, rng);
        if (!next) return path;  // dead end; complete stays false
        const std::size_t e = map.edge_index(current, *next);
        path.length += map.edge_length(e);
        path.nodes.push_back(*next);
        visited[static_cast<std::size_t>(*next)] = 1;
        current = *next;
    }
    path.complete = true;
    return path;
}

}  // namespace antnet
