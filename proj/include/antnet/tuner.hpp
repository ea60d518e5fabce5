#ifndef ANTNET_TUNER_HPP
#define ANTNET_TUNER_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "antnet/solver.hpp"

namespace antnet {

/// Axes of a level-I parameter sweep. Defaults follow the published
/// experiment layout: alpha and beta from 0.5 to 5.0 in steps of 0.5,
/// T from 7.0 to 13.0 in steps of 0.5.
struct SweepGrid {
    std::vector<double> alphas;
    std::vector<double> betas;
    std::vector<double> t_values;
    std::vector<std::uint64_t> seeds;  // run seeds per cell

    static SweepGrid defaults();
    void validate() const;
};

/// Aggregated result of one grid cell. Means are over the seeds whose
/// run found a complete path; a cell where no seed completed is kept
/// with n_complete == 0 and NaN means rather than dropped.
struct SweepCell {
    double alpha = 0.0;
    double beta = 0.0;
    double t_const = 0.0;
    double mean_length = 0.0;
    double mean_convergence = 0.0;
    int n_complete = 0;
    int n_seeds = 0;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // row-major: alpha rows, beta columns
};

/// One cell per (alpha, beta), averaged over the grid's seeds. All other
/// solver parameters come from `fixed`.
SweepResult sweep_alpha_beta(const Roadmap& map, int source, int dest,
                             const SweepGrid& grid, const SolverParams& fixed,
                             double tau0, int jobs = 1);

struct TSweepResult {
    std::vector<SweepCell> rows;  // one per T, in input order
    double best_t = 0.0;          // argmin of mean convergence (first on ties)
};

/// One row per T with alpha/beta and everything else fixed. Requires the
/// exponential rule.
TSweepResult sweep_t(const Roadmap& map, int source, int dest,
                     std::span<const double> t_values, const SolverParams& fixed,
                     std::span<const std::uint64_t> seeds, double tau0, int jobs = 1);

/// Table-style convergence matrix (beta columns, alpha rows).
std::string format_convergence_matrix(const SweepResult& result);

/// Paired runs of the two deposition rules on the same map with the same
/// per-pair seeds, so differences are attributable to the rule alone.
struct CompareArm {
    std::vector<RunReport> runs;        // one per seed
    double median_convergence = 0.0;    // over completed runs
    double median_final_gap = 0.0;      // (best - oracle) / oracle
    int n_complete = 0;
};

struct CompareResult {
    CompareArm constant_arm;
    CompareArm exponential_arm;
    double oracle_length = 0.0;
    int wins_exponential = 0;  // pairs where exponential converged earlier
    int wins_constant = 0;
    int ties = 0;
    double sign_test_p = 1.0;  // one-sided, H1: exponential converges earlier
};

CompareResult compare_rules(const Roadmap& map, int source, int dest,
                            const SolverParams& constant_params,
                            const SolverParams& exponential_params,
                            std::span<const std::uint64_t> seeds, double tau0,
                            int jobs = 1);

enum class SeriesKind { CosineBivariate, SigmoidBivariate };

/// Order-4 bivariate series fitted to (node density, smallest-arc
/// stddev) -> parameter. 15 coefficients a..o plus the affine input
/// scaling bounds. The published coefficient sets are bundled as
/// paper_alpha() / paper_beta(); the scaling bounds default to the
/// ranges observed on generated 120-240 city maps in a 200x200 area
/// (see README) and should be overridden when the environment differs.
struct FittedSeries {
    SeriesKind kind = SeriesKind::CosineBivariate;
    std::array<double, 15> coefficients{};
    double x_min = 0.0;
    double x_max = 1.0;
    double y_min = 0.0;
    double y_max = 1.0;

    void validate() const;
    static FittedSeries paper_alpha();
    static FittedSeries paper_beta();
};

struct SeriesEval {
    double value = 0.0;
    bool input_clamped = false;  // an input fell outside the scaling bounds
};

/// Double cosine expansion, inputs scaled affinely to [0, pi].
SeriesEval eval_cosine_series(const FittedSeries& fit, double x, double y);

/// Sigmoid-basis expansion, inputs scaled affinely to [-1, 1]. Basis:
/// S_1(u) = u, S_i(u) = -1 + 2/(1 + exp(-(u + 1 - (i-1)/2) / 0.12)).
SeriesEval eval_sigmoid_series(const FittedSeries& fit, double x, double y);

/// Recommended parameter band observed across environments.
inline constexpr double kAlphaBandLo = 0.5;
inline constexpr double kAlphaBandHi = 1.5;
inline constexpr double kBetaBandLo = 3.5;
inline constexpr double kBetaBandHi = 4.0;

struct ParamPrediction {
    double alpha = 0.0;  // clamped to [0.5, 1.5]
    double beta = 0.0;   // clamped to [3.5, 4.0]
    double raw_alpha = 0.0;
    double raw_beta = 0.0;
    EnvFeatures features;
    bool alpha_out_of_band = false;
    bool beta_out_of_band = false;
    bool extrapolated = false;  // features fell outside the fits' scaling bounds
};

ParamPrediction predict_params(const Roadmap& map, const FittedSeries& alpha_fit,
                               const FittedSeries& beta_fit);

/// Level-II data collection: for each (city count, distribution seed),
/// generate a map, run the fine sweep, and record the best (alpha, beta)
/// together with the environment features. Produces the observations a
/// curve fit would consume; the fitting itself is external.
struct Level2Observation {
    int n_cities = 0;
    std::uint64_t map_seed = 0;
    EnvFeatures features;
    double best_alpha = 0.0;
    double best_beta = 0.0;
    double best_mean_length = 0.0;
    double best_mean_convergence = 0.0;
};

struct Level2Config {
    std::vector<int> city_counts;
    int maps_per_count = 1;
    double area_width = 200.0;
    double area_height = 200.0;
    int connectivity_degree = 4;
    std::vector<double> alphas;         // default 0.5..1.5 step 0.1
    std::vector<double> betas;          // default 3.5..4.0 step 0.1
    std::vector<std::uint64_t> seeds;   // run seeds per cell
    std::uint64_t map_seed_base = 1;
    SolverParams fixed;                 // exponential rule expected
    double tau0 = 0.1;

    static Level2Config defaults();
};

std::vector<Level2Observation> collect_level2(const Level2Config& config, int jobs = 1);

/// Inclusive numeric range [lo, lo+step, ...] up to hi (half-step slack).
std::vector<double> make_range(double lo, double hi, double step);

}  // namespace antnet

#endif
