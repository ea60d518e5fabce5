#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"

#include "antnet/io.hpp"
#include "antnet/solver.hpp"
#include "antnet/trail.hpp"
#include "antnet/tuner.hpp"

namespace {

double parse_double(const std::string& text) {
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid number: \"" + text + "\"");
    }
    if (pos != text.size()) throw std::invalid_argument("invalid number: \"" + text + "\"");
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == sep) {
            parts.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

/// Axis syntax: "lo:hi:step" (inclusive range) or "v1,v2,v3".
std::vector<double> parse_axis(const std::string& text) {
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw std::invalid_argument("axis \"" + text + "\": expected lo:hi:step");
        return antnet::make_range(parse_double(parts[0]), parse_double(parts[1]),
                                  parse_double(parts[2]));
    }
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) values.push_back(parse_double(part));
    return values;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> values;
    for (double v : parse_axis(text)) values.push_back(static_cast<int>(v));
    return values;
}

std::vector<std::uint64_t> seed_list(std::uint64_t base, int count) {
    if (count < 1) throw std::invalid_argument("--seeds must be >= 1");
    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) seeds[static_cast<std::size_t>(i)] = base + i;
    return seeds;
}

int effective_jobs(int jobs) {
    if (jobs < 0) throw std::invalid_argument("--jobs must be >= 0");
    if (jobs != 0) return jobs;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty())
        std::cout << payload;
    else
        antnet::write_file(out_path, payload);
}

void emit_json(const std::string& out_path, const nlohmann::json& j) {
    emit(out_path, j.dump(2) + "\n");
}

antnet::DepositionRule make_rule(const std::string& name, double t_const) {
    if (name == "constant") return antnet::DepositionRule::constant();
    if (name == "exponential") return antnet::DepositionRule::exponential(t_const);
    throw std::invalid_argument("--rule must be \"constant\" or \"exponential\"");
}

/// Shared solver-parameter flags; each subcommand attaches the subset it
/// exposes and revalidates through SolverParams::validate on dispatch.
struct ParamFlags {
    double alpha = 1.0;
    double beta = 2.0;
    double rho = 0.5;
    double q0 = 1.0;
    double e_weight = 15.0;
    int ants = 20;
    int iters = 100;
    std::string rule = "constant";
    double t_const = 10.0;
    double tau0 = 0.1;
    std::uint64_t seed = 1;
    int jobs = 1;

    antnet::SolverParams to_params() const {
        antnet::SolverParams params;
        params.alpha = alpha;
        params.beta = beta;
        params.rho = rho;
        params.q0 = q0;
        params.e_weight = e_weight;
        params.n_ants = ants;
        params.n_iterations = iters;
        params.rule = make_rule(rule, t_const);
        params.seed = seed;
        return params;
    }
};

void add_common_flags(CLI::App* cmd, ParamFlags& flags, bool with_alpha_beta = true) {
    if (with_alpha_beta) {
        cmd->add_option("--alpha", flags.alpha, "Pheromone weight")->capture_default_str();
        cmd->add_option("--beta", flags.beta, "Visibility weight")->capture_default_str();
    }
    cmd->add_option("--rho", flags.rho, "Evaporation rate in (0,1)")->capture_default_str();
    cmd->add_option("--q0", flags.q0, "Exploration threshold: q < q0 draws, else greedy")
        ->capture_default_str();
    cmd->add_option("--e-weight", flags.e_weight, "Elitist reinforcement weight")
        ->capture_default_str();
    cmd->add_option("--ants", flags.ants, "Ants per iteration")->capture_default_str();
    cmd->add_option("--iters", flags.iters, "Iterations per run")->capture_default_str();
    cmd->add_option("--tau0", flags.tau0, "Initial pheromone per edge")->capture_default_str();
    cmd->add_option("--seed", flags.seed, "Base RNG seed")
        ->envname("ANTNET_SEED")
        ->capture_default_str();
    cmd->add_option("--jobs", flags.jobs, "Worker threads (0 = hardware)")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"antnet: elitist ant-system shortest paths on city roadmaps"};
    app.require_subcommand(1);

    // ---- generate ----
    struct {
        int cities = 0;
        double width = 200.0, height = 200.0;
        int degree = 4;
        std::uint64_t seed = 1;
        std::string out;
    } gen;
    auto* cmd_gen = app.add_subcommand("generate", "Generate a random connected roadmap");
    cmd_gen->add_option("--cities", gen.cities, "Number of cities (>= 2)")->required();
    cmd_gen->add_option("--width", gen.width, "Area width")->capture_default_str();
    cmd_gen->add_option("--height", gen.height, "Area height")->capture_default_str();
    cmd_gen->add_option("--degree", gen.degree, "Nearest neighbors joined per city")
        ->capture_default_str();
    cmd_gen->add_option("--seed", gen.seed, "RNG seed")
        ->envname("ANTNET_SEED")
        ->capture_default_str();
    cmd_gen->add_option("--out", gen.out, "Output roadmap JSON path (default stdout)");
    cmd_gen->callback([&] {
        const antnet::Roadmap map =
            antnet::generate_roadmap(gen.cities, gen.width, gen.height, gen.degree, gen.seed);
        std::cerr << "generate: " << map.city_count() << " cities, " << map.edge_count()
                  << " edges\n";
        emit_json(gen.out, antnet::roadmap_to_json(map));
    });

    // ---- solve ----
    struct {
        std::string map;
        int source = 0, dest = 0;
        ParamFlags flags;
        std::string out, series_csv;
        bool no_oracle = false;
    } solve;
    auto* cmd_solve = app.add_subcommand("solve", "Run the elitist ant system once");
    cmd_solve->add_option("--map", solve.map, "Roadmap JSON path")->required();
    cmd_solve->add_option("--source", solve.source, "Source city id")->required();
    cmd_solve->add_option("--dest", solve.dest, "Destination city id")->required();
    cmd_solve->add_option("--rule", solve.flags.rule, "Deposition rule: constant|exponential")
        ->capture_default_str();
    cmd_solve->add_option("--t-const", solve.flags.t_const, "Exponential rule time constant")
        ->capture_default_str();
    add_common_flags(cmd_solve, solve.flags);
    cmd_solve->add_flag("--no-oracle", solve.no_oracle,
                        "Skip the Dijkstra reference computation");
    cmd_solve->add_option("--out", solve.out, "Report JSON path (default stdout)");
    cmd_solve->add_option("--series-csv", solve.series_csv,
                          "Also write the best-so-far series as CSV");
    cmd_solve->callback([&] {
        const antnet::Roadmap map = antnet::load_roadmap(solve.map);
        const antnet::SolverParams params = solve.flags.to_params();
        std::optional<double> oracle;
        if (!solve.no_oracle)
            oracle = antnet::dijkstra(map, solve.source, solve.dest).length;
        const antnet::RunReport report =
            antnet::run(map, solve.source, solve.dest, params, solve.flags.tau0, oracle,
                        effective_jobs(solve.flags.jobs));
        if (report.found)
            std::cerr << "solve: best " << antnet::format_double(report.best_path.length)
                      << " at iteration " << report.convergence_iteration << "\n";
        else
            std::cerr << "solve: no complete path found\n";
        emit_json(solve.out, antnet::run_report_to_json(report, solve.source, solve.dest,
                                                        params, solve.flags.tau0));
        if (!solve.series_csv.empty())
            antnet::write_file(solve.series_csv, antnet::best_series_csv(report));
    });

    // ---- sweep-ab ----
    struct {
        std::string map;
        int source = 0, dest = 0;
        std::string alphas = "0.5:5.0:0.5", betas = "0.5:5.0:0.5";
        int seeds = 3;
        ParamFlags flags;
        std::string out, matrix_out;
    } ab;
    ab.flags.rule = "exponential";
    auto* cmd_ab = app.add_subcommand("sweep-ab", "Sweep alpha and beta over a grid");
    cmd_ab->add_option("--map", ab.map, "Roadmap JSON path")->required();
    cmd_ab->add_option("--source", ab.source, "Source city id")->required();
    cmd_ab->add_option("--dest", ab.dest, "Destination city id")->required();
    cmd_ab->add_option("--alphas", ab.alphas, "Alpha axis (lo:hi:step or list)")
        ->capture_default_str();
    cmd_ab->add_option("--betas", ab.betas, "Beta axis (lo:hi:step or list)")
        ->capture_default_str();
    cmd_ab->add_option("--seeds", ab.seeds, "Runs per cell (seeds seed..seed+n-1)")
        ->capture_default_str();
    cmd_ab->add_option("--rule", ab.flags.rule, "Deposition rule: constant|exponential")
        ->capture_default_str();
    cmd_ab->add_option("--t-const", ab.flags.t_const, "Exponential rule time constant")
        ->capture_default_str();
    add_common_flags(cmd_ab, ab.flags, /*with_alpha_beta=*/false);
    cmd_ab->add_option("--out", ab.out, "Cell CSV path (default stdout)");
    cmd_ab->add_option("--matrix-out", ab.matrix_out,
                       "Convergence matrix path (default stderr)");
    cmd_ab->callback([&] {
        const antnet::Roadmap map = antnet::load_roadmap(ab.map);
        antnet::SweepGrid grid;
        grid.alphas = parse_axis(ab.alphas);
        grid.betas = parse_axis(ab.betas);
        grid.t_values = {ab.flags.t_const};
        grid.seeds = seed_list(ab.flags.seed, ab.seeds);
        std::cerr << "sweep-ab: " << grid.alphas.size() << "x" << grid.betas.size()
                  << " cells, " << grid.seeds.size() << " seeds each\n";
        const antnet::SweepResult result =
            antnet::sweep_alpha_beta(map, ab.source, ab.dest, grid, ab.flags.to_params(),
                                     ab.flags.tau0, effective_jobs(ab.flags.jobs));
        emit(ab.out, antnet::sweep_csv(result));
        const std::string matrix = antnet::format_convergence_matrix(result);
        if (ab.matrix_out.empty())
            std::cerr << matrix;
        else
            antnet::write_file(ab.matrix_out, matrix);
    });

    // ---- sweep-t ----
    struct {
        std::string map;
        int source = 0, dest = 0;
        std::string t_values = "7.0:13.0:0.5";
        int seeds = 3;
        ParamFlags flags;
        std::string out;
    } st;
    st.flags.rule = "exponential";
    st.flags.alpha = 1.5;
    st.flags.beta = 4.0;
    auto* cmd_st = app.add_subcommand("sweep-t", "Sweep the exponential time constant");
    cmd_st->add_option("--map", st.map, "Roadmap JSON path")->required();
    cmd_st->add_option("--source", st.source, "Source city id")->required();
    cmd_st->add_option("--dest", st.dest, "Destination city id")->required();
    cmd_st->add_option("--t-values", st.t_values, "T axis (lo:hi:step or list)")
        ->capture_default_str();
    cmd_st->add_option("--seeds", st.seeds, "Runs per row (seeds seed..seed+n-1)")
        ->capture_default_str();
    add_common_flags(cmd_st, st.flags);
    cmd_st->add_option("--out", st.out, "Row CSV path (default stdout)");
    cmd_st->callback([&] {
        const antnet::Roadmap map = antnet::load_roadmap(st.map);
        const std::vector<double> t_values = parse_axis(st.t_values);
        const std::vector<std::uint64_t> seeds = seed_list(st.flags.seed, st.seeds);
        std::cerr << "sweep-t: " << t_values.size() << " rows, " << seeds.size()
                  << " seeds each\n";
        const antnet::TSweepResult result =
            antnet::sweep_t(map, st.source, st.dest, t_values, st.flags.to_params(), seeds,
                            st.flags.tau0, effective_jobs(st.flags.jobs));
        emit(st.out, antnet::sweep_csv(result));
        std::cerr << "sweep-t: best T = " << antnet::format_double(result.best_t) << "\n";
    });

    // ---- compare ----
    struct {
        std::string map;
        int source = 0, dest = 0;
        double const_alpha = 1.0, const_beta = 2.0;
        double exp_alpha = 1.5, exp_beta = 4.0;
        int seeds = 30;
        ParamFlags flags;
        std::string out, csv_out;
    } cmp;
    cmp.flags.t_const = 10.0;
    auto* cmd_cmp =
        app.add_subcommand("compare", "Paired constant-vs-exponential rule comparison");
    cmd_cmp->add_option("--map", cmp.map, "Roadmap JSON path")->required();
    cmd_cmp->add_option("--source", cmp.source, "Source city id")->required();
    cmd_cmp->add_option("--dest", cmp.dest, "Destination city id")->required();
    cmd_cmp->add_option("--const-alpha", cmp.const_alpha, "Constant arm alpha")
        ->capture_default_str();
    cmd_cmp->add_option("--const-beta", cmp.const_beta, "Constant arm beta")
        ->capture_default_str();
    cmd_cmp->add_option("--exp-alpha", cmp.exp_alpha, "Exponential arm alpha")
        ->capture_default_str();
    cmd_cmp->add_option("--exp-beta", cmp.exp_beta, "Exponential arm beta")
        ->capture_default_str();
    cmd_cmp->add_option("--t-const", cmp.flags.t_const, "Exponential arm time constant")
        ->capture_default_str();
    cmd_cmp->add_option("--seeds", cmp.seeds, "Paired runs (seeds seed..seed+n-1)")
        ->capture_default_str();
    add_common_flags(cmd_cmp, cmp.flags, /*with_alpha_beta=*/false);
    cmd_cmp->add_option("--out", cmp.out, "Summary JSON path (default stdout)");
    cmd_cmp->add_option("--csv-out", cmp.csv_out, "Per-iteration paired series CSV path");
    cmd_cmp->callback([&] {
        const antnet::Roadmap map = antnet::load_roadmap(cmp.map);
        antnet::SolverParams constant_params = cmp.flags.to_params();
        constant_params.alpha = cmp.const_alpha;
        constant_params.beta = cmp.const_beta;
        constant_params.rule = antnet::DepositionRule::constant();
        antnet::SolverParams exponential_params = cmp.flags.to_params();
        exponential_params.alpha = cmp.exp_alpha;
        exponential_params.beta = cmp.exp_beta;
        exponential_params.rule = antnet::DepositionRule::exponential(cmp.flags.t_const);
        const std::vector<std::uint64_t> seeds = seed_list(cmp.flags.seed, cmp.seeds);
        std::cerr << "compare: " << seeds.size() << " paired runs\n";
        const antnet::CompareResult result =
            antnet::compare_rules(map, cmp.source, cmp.dest, constant_params,
                                  exponential_params, seeds, cmp.flags.tau0,
                                  effective_jobs(cmp.flags.jobs));
        emit_json(cmp.out, antnet::compare_summary_json(result));
        if (!cmp.csv_out.empty())
            antnet::write_file(cmp.csv_out, antnet::compare_csv(result, seeds));
    });

    // ---- stability ----
    struct {
        double rho = 0.5;
        std::string rule = "constant";
        double tau0 = 0.1;
        double deposit = 1.0;
        double t_const = 10.0;
        double t_end = 50.0;
        double dt = 0.001;
        std::size_t stride = 100;
        std::string out;
    } stab;
    auto* cmd_stab = app.add_subcommand(
        "stability", "Closed-form trail dynamics vs numerical integration");
    cmd_stab->add_option("--rho", stab.rho, "Evaporation rate in (0,1)")->capture_default_str();
    cmd_stab->add_option("--rule", stab.rule, "Deposition rule: constant|exponential")
        ->capture_default_str();
    cmd_stab->add_option("--tau0", stab.tau0, "Initial pheromone")->capture_default_str();
    cmd_stab->add_option("--deposit", stab.deposit, "Total per-step deposit (sum of C_k)")
        ->capture_default_str();
    cmd_stab->add_option("--t-const", stab.t_const, "Exponential signal time constant")
        ->capture_default_str();
    cmd_stab->add_option("--t-end", stab.t_end, "Integration horizon")->capture_default_str();
    cmd_stab->add_option("--dt", stab.dt, "RK4 step size")->capture_default_str();
    cmd_stab->add_option("--stride", stab.stride, "Emit every n-th sample")
        ->capture_default_str();
    cmd_stab->add_option("--out", stab.out, "CSV path (default stdout)");
    cmd_stab->callback([&] {
        antnet::ClosedFormTrail cf;
        std::function<double(double)> signal;
        if (stab.rule == "constant") {
            cf = antnet::ClosedFormTrail::constant(stab.tau0, stab.rho, stab.deposit);
            signal = antnet::constant_signal(stab.deposit);
        } else if (stab.rule == "exponential") {
            cf = antnet::ClosedFormTrail::exponential(stab.tau0, stab.rho, stab.deposit,
                                                      stab.t_const);
            signal = antnet::exponential_signal(stab.deposit, stab.t_const);
        } else {
            throw std::invalid_argument("--rule must be \"constant\" or \"exponential\"");
        }
        const antnet::TrailTrajectory trajectory =
            antnet::integrate_trail_ode(stab.tau0, stab.rho, signal, stab.t_end, stab.dt);
        emit(stab.out, antnet::stability_csv(cf, trajectory, stab.stride));
    });

    // ---- predict ----
    struct {
        std::string map, alpha_fit, beta_fit, out;
    } pred;
    auto* cmd_pred =
        app.add_subcommand("predict", "Predict (alpha, beta) from roadmap features");
    cmd_pred->add_option("--map", pred.map, "Roadmap JSON path")->required();
    cmd_pred->add_option("--alpha-fit", pred.alpha_fit,
                         "Alpha series JSON (default: bundled cosine fit)");
    cmd_pred->add_option("--beta-fit", pred.beta_fit,
                         "Beta series JSON (default: bundled sigmoid fit)");
    cmd_pred->add_option("--out", pred.out, "Prediction JSON path (default stdout)");
    cmd_pred->callback([&] {
        const antnet::Roadmap map = antnet::load_roadmap(pred.map);
        const antnet::FittedSeries alpha_fit = pred.alpha_fit.empty()
                                                   ? antnet::FittedSeries::paper_alpha()
                                                   : antnet::load_fitted_series(pred.alpha_fit);
        const antnet::FittedSeries beta_fit = pred.beta_fit.empty()
                                                  ? antnet::FittedSeries::paper_beta()
                                                  : antnet::load_fitted_series(pred.beta_fit);
        const antnet::ParamPrediction prediction =
            antnet::predict_params(map, alpha_fit, beta_fit);
        if (prediction.extrapolated)
            std::cerr << "warning: features outside the fitted input range; "
                         "inputs clamped, prediction extrapolated\n";
        if (prediction.alpha_out_of_band)
            std::cerr << "warning: raw alpha " << antnet::format_double(prediction.raw_alpha)
                      << " outside [" << antnet::kAlphaBandLo << ", " << antnet::kAlphaBandHi
                      << "]; clamped\n";
        if (prediction.beta_out_of_band)
            std::cerr << "warning: raw beta " << antnet::format_double(prediction.raw_beta)
                      << " outside [" << antnet::kBetaBandLo << ", " << antnet::kBetaBandHi
                      << "]; clamped\n";
        emit_json(pred.out, antnet::prediction_to_json(prediction));
    });

    // ---- features ----
    struct {
        std::string map, out;
    } feat;
    auto* cmd_feat = app.add_subcommand("features", "Extract roadmap environment features");
    cmd_feat->add_option("--map", feat.map, "Roadmap JSON path")->required();
    cmd_feat->add_option("--out", feat.out, "Features JSON path (default stdout)");
    cmd_feat->callback([&] {
        const antnet::Roadmap map = antnet::load_roadmap(feat.map);
        emit_json(feat.out, antnet::features_to_json(antnet::extract_features(map)));
    });

    // ---- level2 ----
    struct {
        std::string counts = "120,140,160,180,200,220,240";
        int maps_per_count = 7;
        double width = 200.0, height = 200.0;
        int degree = 4;
        std::string alphas = "0.5:1.5:0.1", betas = "3.5:4.0:0.1";
        int seeds = 3;
        std::uint64_t map_seed_base = 1;
        ParamFlags flags;
        std::string out;
    } l2;
    l2.flags.rule = "exponential";
    auto* cmd_l2 = app.add_subcommand(
        "level2", "Collect best (alpha, beta) observations across generated maps");
    cmd_l2->add_option("--counts", l2.counts, "City counts (comma list)")
        ->capture_default_str();
    cmd_l2->add_option("--maps-per-count", l2.maps_per_count, "Distributions per count")
        ->capture_default_str();
    cmd_l2->add_option("--width", l2.width, "Area width")->capture_default_str();
    cmd_l2->add_option("--height", l2.height, "Area height")->capture_default_str();
    cmd_l2->add_option("--degree", l2.degree, "Nearest neighbors joined per city")
        ->capture_default_str();
    cmd_l2->add_option("--alphas", l2.alphas, "Alpha axis (lo:hi:step or list)")
        ->capture_default_str();
    cmd_l2->add_option("--betas", l2.betas, "Beta axis (lo:hi:step or list)")
        ->capture_default_str();
    cmd_l2->add_option("--seeds", l2.seeds, "Runs per cell (seeds seed..seed+n-1)")
        ->capture_default_str();
    cmd_l2->add_option("--map-seed-base", l2.map_seed_base, "Seed base for map generation")
        ->capture_default_str();
    cmd_l2->add_option("--t-const", l2.flags.t_const, "Exponential rule time constant")
        ->capture_default_str();
    add_common_flags(cmd_l2, l2.flags, /*with_alpha_beta=*/false);
    cmd_l2->add_option("--out", l2.out, "Observation CSV path (default stdout)");
    cmd_l2->callback([&] {
        antnet::Level2Config config;
        config.city_counts = parse_int_list(l2.counts);
        config.maps_per_count = l2.maps_per_count;
        config.area_width = l2.width;
        config.area_height = l2.height;
        config.connectivity_degree = l2.degree;
        config.alphas = parse_axis(l2.alphas);
        config.betas = parse_axis(l2.betas);
        config.seeds = seed_list(l2.flags.seed, l2.seeds);
        config.map_seed_base = l2.map_seed_base;
        config.fixed = l2.flags.to_params();
        config.fixed.rule = antnet::DepositionRule::exponential(l2.flags.t_const);
        config.tau0 = l2.flags.tau0;
        std::cerr << "level2: " << config.city_counts.size() << " counts x "
                  << config.maps_per_count << " maps, "
                  << config.alphas.size() * config.betas.size() << " cells each\n";
        const std::vector<antnet::Level2Observation> observations =
            antnet::collect_level2(config, effective_jobs(l2.flags.jobs));
        emit(l2.out, antnet::level2_csv(observations));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
