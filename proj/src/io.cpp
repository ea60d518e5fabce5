#include "antnet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace antnet {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key))
        throw std::invalid_argument(where + ": missing field \"" + key + "\"");
    return j.at(key);
}

double require_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw std::invalid_argument(where + ": expected a number");
    return j.get<double>();
}

int require_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw std::invalid_argument(where + ": expected an integer");
    return j.get<int>();
}

std::string rule_name(DepositionKind kind) {
    return kind == DepositionKind::Constant ? "constant" : "exponential";
}

json series_to_json(std::span<const double> series) {
    // Infinity is not representable in JSON; nlohmann would emit null,
    // which round-trips poorly. Encode each sample as its shortest
    // decimal string only when non-finite.
    json arr = json::array();
    for (double v : series) {
        if (std::isfinite(v))
            arr.push_back(v);
        else
            arr.push_back(format_double(v));
    }
    return arr;
}

}  // namespace

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

json roadmap_to_json(const Roadmap& map) {
    json cities = json::array();
    for (const City& c : map.cities()) cities.push_back({{"id", c.id}, {"x", c.x}, {"y", c.y}});
    json edges = json::array();
    for (const Roadmap::Edge& e : map.edges()) edges.push_back({e.u, e.v});
    return {{"cities", cities}, {"edges", edges}};
}

Roadmap roadmap_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("roadmap: expected a JSON object");
    const json& jcities = require_field(j, "cities", "roadmap");
    const json& jedges = require_field(j, "edges", "roadmap");
    if (!jcities.is_array()) throw std::invalid_argument("roadmap.cities: expected an array");
    if (!jedges.is_array()) throw std::invalid_argument("roadmap.edges: expected an array");

    std::vector<City> cities;
    cities.reserve(jcities.size());
    for (std::size_t i = 0; i < jcities.size(); ++i) {
        const std::string where = "cities[" + std::to_string(i) + "]";
        const json& jc = jcities[i];
        if (!jc.is_object()) throw std::invalid_argument(where + ": expected an object");
        City c;
        c.id = require_int(require_field(jc, "id", where), where + ".id");
        c.x = require_number(require_field(jc, "x", where), where + ".x");
        c.y = require_number(require_field(jc, "y", where), where + ".y");
        cities.push_back(c);
    }

    std::vector<std::pair<int, int>> edges;
    edges.reserve(jedges.size());
    for (std::size_t i = 0; i < jedges.size(); ++i) {
        const std::string where = "edges[" + std::to_string(i) + "]";
        const json& je = jedges[i];
        if (!je.is_array() || je.size() != 2)
            throw std::invalid_argument(where + ": expected a [u,v] pair");
        edges.emplace_back(require_int(je[0], where + "[0]"), require_int(je[1], where + "[1]"));
    }
    return Roadmap(cities, edges);
}

void save_roadmap(const Roadmap& map, const std::string& path) {
    write_file(path, roadmap_to_json(map).dump(2) + "\n");
}

Roadmap load_roadmap(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": invalid JSON: " + e.what());
    }
    return roadmap_from_json(j);
}

json run_report_to_json(const RunReport& report, int source, int dest,
                        const SolverParams& params, double tau0) {
    json j;
    j["source"] = source;
    j["dest"] = dest;
    j["params"] = {{"alpha", params.alpha},
                   {"beta", params.beta},
                   {"rho", params.rho},
                   {"q0", params.q0},
                   {"e_weight", params.e_weight},
                   {"n_ants", params.n_ants},
                   {"n_iterations", params.n_iterations},
                   {"rule", rule_name(params.rule.kind)},
                   {"t_const", params.rule.time_constant},
                   {"seed", params.seed}};
    j["tau0"] = tau0;
    j["found"] = report.found;
    j["best_path"] = {{"nodes", report.best_path.nodes},
                      {"length", report.found ? json(report.best_path.length) : json()}};
    j["convergence_iteration"] = report.convergence_iteration;
    j["iterations_run"] = report.iterations_run;
    j["best_length_series"] = series_to_json(report.best_length_series);
    j["iteration_best_series"] = series_to_json(report.iteration_best_series);
    j["optimal_gap"] = report.optimal_gap ? json(*report.optimal_gap) : json();
    j["optimal_found"] = report.optimal_found;
    return j;
}

std::string best_series_csv(const RunReport& report) {
    std::string out = "iteration,length\n";
    for (std::size_t i = 0; i < report.best_length_series.size(); ++i) {
        out += std::to_string(i + 1);
        out += ',';
        out += format_double(report.best_length_series[i]);
        out += '\n';
    }
    return out;
}

namespace {

std::string sweep_cells_csv(std::span<const SweepCell> cells) {
    std::string out = "alpha,beta,T,mean_len,mean_conv,n_complete\n";
    for (const SweepCell& cell : cells) {
        out += format_double(cell.alpha);
        out += ',';
        out += format_double(cell.beta);
        out += ',';
        out += format_double(cell.t_const);
        out += ',';
        out += format_double(cell.mean_length);
        out += ',';
        out += format_double(cell.mean_convergence);
        out += ',';
        out += std::to_string(cell.n_complete);
        out += '\n';
    }
    return out;
}

}  // namespace

std::string sweep_csv(const SweepResult& result) { return sweep_cells_csv(result.cells); }

std::string sweep_csv(const TSweepResult& result) { return sweep_cells_csv(result.rows); }

std::string compare_csv(const CompareResult& result, std::span<const std::uint64_t> seeds) {
    std::string out = "seed,iteration,rule,iteration_best,best_so_far,oracle\n";
    const std::string oracle = format_double(result.oracle_length);
    auto emit_arm = [&](const CompareArm& arm, const char* rule) {
        for (std::size_t s = 0; s < arm.runs.size(); ++s) {
            const RunReport& report = arm.runs[s];
            const std::string seed = std::to_string(seeds[s]);
            for (std::size_t i = 0; i < report.best_length_series.size(); ++i) {
                out += seed;
                out += ',';
                out += std::to_string(i + 1);
                out += ',';
                out += rule;
                out += ',';
                out += format_double(report.iteration_best_series[i]);
                out += ',';
                out += format_double(report.best_length_series[i]);
                out += ',';
                out += oracle;
                out += '\n';
            }
        }
    };
    emit_arm(result.constant_arm, "constant");
    emit_arm(result.exponential_arm, "exponential");
    return out;
}

json compare_summary_json(const CompareResult& result) {
    auto arm_json = [](const CompareArm& arm) {
        return json{{"n_runs", arm.runs.size()},
                    {"n_complete", arm.n_complete},
                    {"median_convergence",
                     std::isfinite(arm.median_convergence) ? json(arm.median_convergence) : json()},
                    {"median_final_gap",
                     std::isfinite(arm.median_final_gap) ? json(arm.median_final_gap) : json()}};
    };
    return {{"oracle_length", result.oracle_length},
            {"constant", arm_json(result.constant_arm)},
            {"exponential", arm_json(result.exponential_arm)},
            {"wins_exponential", result.wins_exponential},
            {"wins_constant", result.wins_constant},
            {"ties", result.ties},
            {"sign_test_p", result.sign_test_p}};
}

std::string stability_csv(const ClosedFormTrail& cf, const TrailTrajectory& trajectory,
                          std::size_t stride) {
    if (stride == 0) throw std::invalid_argument("stability_csv: stride must be >= 1");
    if (trajectory.tau.empty())
        throw std::invalid_argument("stability_csv: empty trajectory");
    std::string out = "t,closed_form,rk4,abs_error\n";
    const std::size_t last = trajectory.tau.size() - 1;
    for (std::size_t i = 0; i <= last; i = (i == last ? last + 1 : std::min(i + stride, last))) {
        const double t = static_cast<double>(i) * trajectory.dt;
        const double exact = cf.kind == DepositionKind::Constant
                                 ? closed_form_constant(cf, t)
                                 : closed_form_exponential(cf, t);
        const double rk4 = trajectory.tau[i];
        out += format_double(t);
        out += ',';
        out += format_double(exact);
        out += ',';
        out += format_double(rk4);
        out += ',';
        out += format_double(std::abs(exact - rk4));
        out += '\n';
    }
    return out;
}

json features_to_json(const EnvFeatures& features) {
    return {{"node_density", features.node_density},
            {"smallest_arc_stddev", features.smallest_arc_stddev}};
}

json prediction_to_json(const ParamPrediction& prediction) {
    return {{"alpha", prediction.alpha},
            {"beta", prediction.beta},
            {"raw_alpha", prediction.raw_alpha},
            {"raw_beta", prediction.raw_beta},
            {"features", features_to_json(prediction.features)},
            {"alpha_out_of_band", prediction.alpha_out_of_band},
            {"beta_out_of_band", prediction.beta_out_of_band},
            {"extrapolated", prediction.extrapolated}};
}

json fitted_series_to_json(const FittedSeries& fit) {
    return {{"kind", fit.kind == SeriesKind::CosineBivariate ? "cosine" : "sigmoid"},
            {"coefficients", fit.coefficients},
            {"x_min", fit.x_min},
            {"x_max", fit.x_max},
            {"y_min", fit.y_min},
            {"y_max", fit.y_max}};
}

FittedSeries fitted_series_from_json(const json& j) {
    FittedSeries fit;
    const json& jkind = require_field(j, "kind", "series");
    if (!jkind.is_string())
        throw std::invalid_argument("series.kind: expected \"cosine\" or \"sigmoid\"");
    const std::string kind = jkind.get<std::string>();
    if (kind == "cosine")
        fit.kind = SeriesKind::CosineBivariate;
    else if (kind == "sigmoid")
        fit.kind = SeriesKind::SigmoidBivariate;
    else
        throw std::invalid_argument("series.kind: expected \"cosine\" or \"sigmoid\"");

    const json& jcoef = require_field(j, "coefficients", "series");
    if (!jcoef.is_array() || jcoef.size() != fit.coefficients.size())
        throw std::invalid_argument("series.coefficients: expected exactly 15 numbers");
    for (std::size_t i = 0; i < fit.coefficients.size(); ++i)
        fit.coefficients[i] =
            require_number(jcoef[i], "series.coefficients[" + std::to_string(i) + "]");

    fit.x_min = require_number(require_field(j, "x_min", "series"), "series.x_min");
    fit.x_max = require_number(require_field(j, "x_max", "series"), "series.x_max");
    fit.y_min = require_number(require_field(j, "y_min", "series"), "series.y_min");
    fit.y_max = require_number(require_field(j, "y_max", "series"), "series.y_max");
    fit.validate();
    return fit;
}

FittedSeries load_fitted_series(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": invalid JSON: " + e.what());
    }
    return fitted_series_from_json(j);
}

std::string level2_csv(const std::vector<Level2Observation>& observations) {
    std::string out =
        "n_cities,map_seed,node_density,smallest_arc_stddev,best_alpha,best_beta,"
        "best_mean_length,best_mean_convergence\n";
    for (const Level2Observation& obs : observations) {
        out += std::to_string(obs.n_cities);
        out += ',';
        out += std::to_string(obs.map_seed);
        out += ',';
        out += format_double(obs.features.node_density);
        out += ',';
        out += format_double(obs.features.smallest_arc_stddev);
        out += ',';
        out += format_double(obs.best_alpha);
        out += ',';
        out += format_double(obs.best_beta);
        out += ',';
        out += format_double(obs.best_mean_length);
        out += ',';
        out += format_double(obs.best_mean_convergence);
        out += '\n';
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file for reading: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open file for writing: " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace antnet
