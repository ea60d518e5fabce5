#include "antnet/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "antnet/parallel.hpp"

namespace antnet {

RunReport run(const Roadmap& map, int source, int dest, const SolverParams& params,
              double tau0, std::optional<double> oracle_length, int jobs) {
    params.validate();
    if (!map.valid_city(source) || !map.valid_city(dest))
        throw std::invalid_argument("run: invalid city id");
    if (source == dest) throw std::invalid_argument("run: source equals destination");

    constexpr double kInf = std::numeric_limits<double>::infinity();
    TrailState state(map.edge_count(), tau0);
    RunReport report;
    report.best_length_series.reserve(static_cast<std::size_t>(params.n_iterations));
    report.iteration_best_series.reserve(static_cast<std::size_t>(params.n_iterations));

    std::vector<PathResult> paths(static_cast<std::size_t>(params.n_ants));
    for (int iter = 0; iter < params.n_iterations; ++iter) {
        // Construction phase: trail is read-only, ants draw from streams
        // derived from (seed, iteration, ant), so any schedule agrees.
        parallel_for(paths.size(), jobs, [&](std::size_t ant) {
            Rng rng(derive_stream_seed(params.seed, static_cast<std::uint64_t>(iter),
                                       static_cast<std::uint64_t>(ant)));
            paths[ant] = construct_path(state, map, source, dest, params, rng);
        });

        double iteration_best = kInf;
        for (const PathResult& p : paths) {
            if (!p.complete) continue;
            iteration_best = std::min(iteration_best, p.length);
            if (!report.found || p.length < report.best_path.length) {
                report.best_path = p;
                report.found = true;
            }
        }

        // Update phase (single-owner mutation).
        evaporate(state, params.rho);
        for (const PathResult& p : paths)
            deposit_path(state, map, p, params.rule);
        if (report.found)
            elitist_reinforce(state, map, report.best_path, params.e_weight, params.rule);

        report.iteration_best_series.push_back(iteration_best);
        report.best_length_series.push_back(report.found ? report.best_path.length : kInf);
    }

    report.iterations_run = params.n_iterations;
    report.convergence_iteration = convergence_time(report.best_length_series);
    if (report.found && oracle_length) {
        report.optimal_gap = (report.best_path.length - *oracle_length) / *oracle_length;
        report.optimal_found =
            std::abs(report.best_path.length - *oracle_length) <=
            1e-9 * std::max(1.0, std::abs(*oracle_length));
    }
    return report;
}

int convergence_time(std::span<const double> best_series) {
    if (best_series.empty()) throw std::invalid_argument("convergence_time: empty series");
    for (std::size_t i = 0; i + 1 < best_series.size(); ++i)
        if (best_series[i] < best_series[i + 1])
            throw std::invalid_argument("convergence_time: series must be nonincreasing");
    const double final_value = best_series.back();
    for (std::size_t i = 0; i < best_series.size(); ++i)
        if (best_series[i] == final_value) return static_cast<int>(i) + 1;
    return static_cast<int>(best_series.size());  // unreachable; back() always matches
}

}  // namespace antnet
