#ifndef ANTNET_IO_HPP
#define ANTNET_IO_HPP

#include <string>

#include "json.hpp"

#include "antnet/roadmap.hpp"
#include "antnet/solver.hpp"
#include "antnet/trail.hpp"
#include "antnet/tuner.hpp"

namespace antnet {

/// Shortest round-trip decimal representation (via std::to_chars).
/// Infinities print as "inf"/"-inf", NaN as "nan".
std::string format_double(double v);

// Roadmap file format:
//   {"cities":[{"id":0,"x":1.5,"y":2.0},...],"edges":[[0,1],[1,2],...]}
// Loading validates every Roadmap invariant and reports the offending
// field (e.g. "cities[3].x") on rejection.
nlohmann::json roadmap_to_json(const Roadmap& map);
Roadmap roadmap_from_json(const nlohmann::json& j);
void save_roadmap(const Roadmap& map, const std::string& path);
Roadmap load_roadmap(const std::string& path);

nlohmann::json run_report_to_json(const RunReport& report, int source, int dest,
                                  const SolverParams& params, double tau0);

/// Two-column CSV of the best-so-far series: iteration,length.
std::string best_series_csv(const RunReport& report);

/// One row per cell: alpha,beta,T,mean_len,mean_conv,n_complete.
std::string sweep_csv(const SweepResult& result);
std::string sweep_csv(const TSweepResult& result);

/// Per-iteration paired series: seed,iteration,rule,iteration_best,best_so_far,oracle.
std::string compare_csv(const CompareResult& result, std::span<const std::uint64_t> seeds);
nlohmann::json compare_summary_json(const CompareResult& result);

/// Columns t,closed_form,rk4,abs_error sampled every `stride` RK4 steps.
std::string stability_csv(const ClosedFormTrail& cf, const TrailTrajectory& trajectory,
                          std::size_t stride);

nlohmann::json features_to_json(const EnvFeatures& features);
nlohmann::json prediction_to_json(const ParamPrediction& prediction);

nlohmann::json fitted_series_to_json(const FittedSeries& fit);
FittedSeries fitted_series_from_json(const nlohmann::json& j);
FittedSeries load_fitted_series(const std::string& path);

std::string level2_csv(const std::vector<Level2Observation>& observations);

/// Reads a whole file; throws std::runtime_error if it cannot be opened.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace antnet

#endif
