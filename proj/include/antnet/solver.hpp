#ifndef ANTNET_SOLVER_HPP
#define ANTNET_SOLVER_HPP

#include <optional>
#include <span>

#include "antnet/colony.hpp"

namespace antnet {

/// Outcome of one elitist-ant-system run. best_length_series holds the
/// best-so-far length after each iteration (infinity until the first
/// complete path) and is always nonincreasing.
struct RunReport {
    std::vector<double> best_length_series;
    std::vector<double> iteration_best_series;  // best complete length per iteration
    PathResult best_path;
    int convergence_iteration = 0;  // 1-based first attainment of the final best
    int iterations_run = 0;
    bool found = false;
    std::optional<double> optimal_gap;  // (best - oracle) / oracle, when oracle given
    bool optimal_found = false;
};

/// Main loop: per iteration all ants construct paths, the best-so-far
/// tour is updated, the trail evaporates once, every complete ant
/// deposits, and the best-so-far tour receives the elitist bonus.
/// Deterministic for a fixed seed regardless of `jobs`.
RunReport run(const Roadmap& map, int source, int dest, const SolverParams& params,
              double tau0 = 0.1, std::optional<double> oracle_length = std::nullopt,
              int jobs = 1);

/// Smallest 1-based index whose value equals the final value of a
/// nonincreasing best-so-far series.
int convergence_time(std::span<const double> best_series);

}  // namespace antnet

#endif
