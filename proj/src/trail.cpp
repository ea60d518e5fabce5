#include "antnet/trail.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace antnet {

DepositionRule DepositionRule::constant() { return {DepositionKind::Constant, 0.0}; }

DepositionRule DepositionRule::exponential(double time_constant) {
    if (!(time_constant > 0.0))
        throw std::invalid_argument("deposition rule: time constant must be positive");
    return {DepositionKind::Exponential, time_constant};
}

TrailState::TrailState(std::size_t edge_count, double tau0) : tau0_(tau0) {
    if (!(tau0 >= 0.0) || !std::isfinite(tau0))
        throw std::invalid_argument("trail: tau0 must be a nonnegative finite value");
    if (edge_count == 0) throw std::invalid_argument("trail: no edges");
    tau_.assign(edge_count, tau0);
}

void TrailState::add(std::size_t edge_index, double amount) {
    if (!(amount >= 0.0))
        throw std::invalid_argument("trail: deposit amount must be nonnegative");
    tau_[edge_index] += amount;
}

void TrailState::scale_all(double factor) {
    if (!(factor > 0.0) || factor > 1.0)
        throw std::invalid_argument("trail: scale factor must be in (0,1]");
    for (double& t : tau_) t *= factor;
}

void evaporate(TrailState& state, double rho) {
    if (!(rho > 0.0) || !(rho < 1.0))
        throw std::invalid_argument("evaporate: rho must lie in (0,1)");
    state.scale_all(1.0 - rho);
}

double deposit_shaping_remainder(const DepositionRule& rule, int hop_index) {
    if (hop_index < 1) throw std::invalid_argument("deposit_shaping: hop_index must be >= 1");
    if (rule.kind == DepositionKind::Constant) return 0.0;
    if (!(rule.time_constant > 0.0))
        throw std::invalid_argument("deposit_shaping: time constant must be positive");
    return std::exp(-static_cast<double>(hop_index) / rule.time_constant);
}

double deposit_shaping(const DepositionRule& rule, int hop_index) {
    return 1.0 - deposit_shaping_remainder(rule, hop_index);
}

namespace {

// Shared arc walk for plain and elitist deposits. weight is 1/C_k for
// ants, e/C_bs for the best-so-far bonus.
void deposit_along(TrailState& state, const Roadmap& map, const PathResult& path,
                   const DepositionRule& rule, double weight) {
    int hop = 1;
    for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i, ++hop) {
        const std::size_t e = map.edge_index(path.nodes[i], path.nodes[i + 1]);
        if (e == Roadmap::npos)
            throw std::invalid_argument("deposit: path nodes " +
                                        std::to_string(path.nodes[i]) + "," +
                                        std::to_string(path.nodes[i + 1]) +
                                        " are not adjacent");
        state.add(e, weight * deposit_shaping(rule, hop));
    }
}

}  // namespace

void deposit_path(TrailState& state, const Roadmap& map, const PathResult& path,
                  const DepositionRule& rule) {
    if (!path.complete) return;  // dead-ended ants deposit nothing
    if (!(path.length > 0.0))
        throw std::invalid_argument("deposit_path: complete path must have positive length");
    deposit_along(state, map, path, rule, 1.0 / path.length);
}

void elitist_reinforce(TrailState& state, const Roadmap& map, const PathResult& best,
                       double e_weight, const DepositionRule& rule) {
    if (!best.complete)
        throw std::invalid_argument("elitist_reinforce: best tour must be complete");
    if (!(best.length > 0.0))
        throw std::invalid_argument("elitist_reinforce: best tour must have positive length");
    if (!(e_weight >= 0.0))
        throw std::invalid_argument("elitist_reinforce: e_weight must be nonnegative");
    if (e_weight == 0.0) return;
    deposit_along(state, map, best, rule, e_weight / best.length);
}

ClosedFormTrail ClosedFormTrail::constant(double tau0, double rho, double deposit_total) {
    if (!(rho > 0.0))
        throw std::invalid_argument("closed form: rho must be positive (unstable otherwise)");
    if (!(tau0 >= 0.0)) throw std::invalid_argument("closed form: tau0 must be nonnegative");
    if (!(deposit_total >= 0.0))
        throw std::invalid_argument("closed form: deposit_total must be nonnegative");
    ClosedFormTrail cf;
    cf.kind = DepositionKind::Constant;
    cf.tau0 = tau0;
    cf.rho = rho;
    cf.deposit_total = deposit_total;
    cf.integration_constant = tau0 - deposit_total / rho;
    return cf;
}

ClosedFormTrail ClosedFormTrail::exponential(double tau0, double rho, double deposit_total,
                                             double time_constant) {
    if (!(rho > 0.0))
        throw std::invalid_argument("closed form: rho must be positive (unstable otherwise)");
    if (!(time_constant > 0.0))
        throw std::invalid_argument("closed form: time constant must be positive");
    if (!(tau0 >= 0.0)) throw std::invalid_argument("closed form: tau0 must be nonnegative");
    if (!(deposit_total >= 0.0))
        throw std::invalid_argument("closed form: deposit_total must be nonnegative");
    if (std::abs(rho - 1.0 / time_constant) < kResonanceTolerance)
        throw std::invalid_argument(
            "closed form: rho is within 1e-9 of 1/T; the expression divides by rho - 1/T."
            " Use integrate_trail_ode for this regime.");
    ClosedFormTrail cf;
    cf.kind = DepositionKind::Exponential;
    cf.tau0 = tau0;
    cf.rho = rho;
    cf.deposit_total = deposit_total;
    cf.time_constant = time_constant;
    const double steady = deposit_total / rho;
    const double forced0 =
        deposit_total * std::exp(-1.0 / time_constant) / (rho - 1.0 / time_constant);
    cf.integration_constant = tau0 - steady + forced0;
    return cf;
}

double closed_form_constant(const ClosedFormTrail& cf, double t) {
    if (cf.kind != DepositionKind::Constant)
        throw std::invalid_argument("closed_form_constant: wrong rule kind");
    if (!(t >= 0.0)) throw std::invalid_argument("closed form: t must be nonnegative");
    // tau0*E + S*(1-E) rather than (tau0-S)*E + S: identical algebra,
    // but exact at t = 0 and free of cancellation for small t.
    const double decay = std::exp(-cf.rho * t);
    const double steady = cf.deposit_total / cf.rho;
    return cf.tau0 * decay + steady * (1.0 - decay);
}

double closed_form_exponential(const ClosedFormTrail& cf, double t) {
    if (cf.kind != DepositionKind::Exponential)
        throw std::invalid_argument("closed_form_exponential: wrong rule kind");
    if (!(t >= 0.0)) throw std::invalid_argument("closed form: t must be nonnegative");
    const double decay = std::exp(-cf.rho * t);
    const double steady = cf.deposit_total / cf.rho;
    const double scale = cf.deposit_total / (cf.rho - 1.0 / cf.time_constant);
    const double forced0 = scale * std::exp(-1.0 / cf.time_constant);
    const double forced = scale * std::exp(-(t + 1.0) / cf.time_constant);
    // The forced pair is grouped so it cancels exactly at t = 0, keeping the
    // documented tau(0) == tau0 contract bit-exact.
    return cf.tau0 * decay + steady * (1.0 - decay) + (forced0 * decay - forced);
}

double TrailTrajectory::at_time(double t) const {
    const auto i = static_cast<std::size_t>(std::llround(t / dt));
    if (i >= tau.size()) throw std::out_of_range("trajectory: time beyond t_end");
    return tau[i];
}

TrailTrajectory integrate_trail_ode(double tau0, double rho,
                                    const std::function<double(double)>& signal,
                                    double t_end, double dt) {
    if (!(rho > 0.0)) throw std::invalid_argument("integrate_trail_ode: rho must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_trail_ode: dt must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("integrate_trail_ode: t_end must be positive");

    auto deriv = [&](double t, double y) {
        const double s = signal(t + 1.0);
        if (!std::isfinite(s))
            throw std::runtime_error("integrate_trail_ode: signal non-finite at t=" +
                                     std::to_string(t + 1.0));
        return -rho * y + s;
    };

    const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    TrailTrajectory traj;
    traj.dt = dt;
    traj.tau.reserve(steps + 1);
    traj.tau.push_back(tau0);
    double y = tau0;
    for (std::size_t i = 0; i < steps; ++i) {
        const double t = static_cast<double>(i) * dt;
        const double k1 = deriv(t, y);
        const double k2 = deriv(t + 0.5 * dt, y + 0.5 * dt * k1);
        const double k3 = deriv(t + 0.5 * dt, y + 0.5 * dt * k2);
        const double k4 = deriv(t + dt, y + dt * k3);
        y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        traj.tau.push_back(y);
    }
    return traj;
}

std::function<double(double)> constant_signal(double deposit_total) {
    return [deposit_total](double) { return deposit_total; };
}

std::function<double(double)> exponential_signal(double deposit_total, double time_constant) {
    return [deposit_total, time_constant](double t) {
        return deposit_total * (1.0 - std::exp(-t / time_constant));
    };
}

}  // namespace antnet
