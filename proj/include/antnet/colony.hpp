#ifndef ANTNET_COLONY_HPP
#define ANTNET_COLONY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "antnet/path.hpp"
#include "antnet/rng.hpp"
#include "antnet/roadmap.hpp"
#include "antnet/trail.hpp"

namespace antnet {

struct SolverParams {
    double alpha = 1.0;        // pheromone weight
    double beta = 2.0;         // visibility weight
    double rho = 0.5;          // evaporation rate, in (0,1)
    double q0 = 1.0;           // q < q0 -> probabilistic draw, q >= q0 -> greedy
    double e_weight = 15.0;    // elitist reinforcement weight
    int n_ants = 20;
    int n_iterations = 100;
    DepositionRule rule = DepositionRule::constant();
    std::uint64_t seed = 1;

    void validate() const;  // throws std::invalid_argument
};

/// Move desirability from i to a neighbor k when heading for g:
/// 1 / (d_ik + d_kg), d_ik the edge length and d_kg the straight-line
/// distance to the destination.
double visibility(const Roadmap& map, int i, int k, int dest);

/// Selection probabilities over the feasible (unvisited) neighbors of
/// `current`, proportional to tau^alpha * eta^beta. An empty neighbor
/// list signals a dead end; it is an outcome, not an error.
struct TransitionProbabilities {
    std::vector<int> neighbors;       // ascending city id
    std::vector<double> probability;  // same order, sums to 1

    bool dead_end() const { return neighbors.empty(); }
};

TransitionProbabilities transition_probabilities(const TrailState& state,
                                                 const Roadmap& map, int current,
                                                 const std::vector<char>& visited,
                                                 int dest, const SolverParams& params);

/// One move. Draws q; q < q0 samples the transition distribution,
/// otherwise takes the argmax of tau^alpha * eta^beta (ties to the
/// lowest city id). nullopt on dead end.
std::optional<int> step(const TrailState& state, const Roadmap& map, int current,
                        const std::vector<char>& visited, int dest,
                        const SolverParams& params, Rng& rng);

/// Repeated steps from source until the destination is reached or the
/// ant dead-ends. The visited set forbids revisits, so walks are simple
/// paths bounded by the city count.
PathResult construct_path(const TrailState& state, const Roadmap& map, int source,
                          int dest, const SolverParams& params, Rng& rng);

}  // namespace antnet

#endif
