#ifndef ANTNET_TRAIL_HPP
#define ANTNET_TRAIL_HPP

#include <functional>
#include <vector>

#include "antnet/path.hpp"
#include "antnet/roadmap.hpp"

namespace antnet {

enum class DepositionKind { Constant, Exponential };

/// How a deposit is spread along a completed path: uniform, or growing
/// toward the destination as 1 - exp(-s/T) with s the hop index.
struct DepositionRule {
    DepositionKind kind = DepositionKind::Constant;
    double time_constant = 10.0;  // only meaningful for Exponential

    static DepositionRule constant();
    static DepositionRule exponential(double time_constant);  // requires T > 0
};

/// Per-edge pheromone concentrations, indexed by Roadmap edge index.
/// Undirected symmetry holds by construction (one slot per edge).
/// Concentrations never go negative: the only mutations are scaling by
/// a factor in (0,1) and adding nonnegative deposits.
class TrailState {
public:
    TrailState(std::size_t edge_count, double tau0);

    double tau(std::size_t edge_index) const { return tau_[edge_index]; }
    double tau0() const { return tau0_; }
    std::size_t size() const { return tau_.size(); }
    const std::vector<double>& values() const { return tau_; }

    void add(std::size_t edge_index, double amount);  // amount >= 0
    void scale_all(double factor);                    // factor in (0,1]

private:
    std::vector<double> tau_;
    double tau0_;
};

/// Scales every concentration by (1 - rho). Requires 0 < rho < 1.
void evaporate(TrailState& state, double rho);

/// Deposit multiplier for the s-th hop from the source (1-based).
/// Constant -> 1; Exponential -> 1 - exp(-s/T), strictly increasing.
double deposit_shaping(const DepositionRule& rule, int hop_index);

/// Exact complement 1 - deposit_shaping (i.e. exp(-s/T) for the
/// exponential rule, 0 for the constant rule). deposit_shaping is
/// defined as 1.0 minus this value; at large hop counts the multiplier
/// saturates to 1.0 in double precision while the complement is still
/// exactly representable, so strict-monotonicity checks compare this.
double deposit_shaping_remainder(const DepositionRule& rule, int hop_index);

/// Adds (1/C_k) * shaping(s) to the s-th edge of a completed path.
/// Dead-ended paths deposit nothing.
void deposit_path(TrailState& state, const Roadmap& map, const PathResult& path,
                  const DepositionRule& rule);

/// Extra best-so-far reinforcement: each arc of `best` gains
/// e_weight * (1/C_bs) * shaping(s).
void elitist_reinforce(TrailState& state, const Roadmap& map, const PathResult& best,
                       double e_weight, const DepositionRule& rule);

/// Closed-form solution of the trail dynamics
///   dtau/dt = -rho * tau + signal(t + 1)
/// for a single edge under a constant or exponentially saturating total
/// deposition signal. Build through the factories; they fix the
/// integration constant so the expression equals tau0 at t = 0.
struct ClosedFormTrail {
    DepositionKind kind = DepositionKind::Constant;
    double tau0 = 0.0;
    double rho = 0.0;
    double deposit_total = 0.0;   // sum of per-step deposits over all ants
    double time_constant = 0.0;   // exponential case only
    double integration_constant = 0.0;  // transient amplitude A

    static ClosedFormTrail constant(double tau0, double rho, double deposit_total);
    /// Rejects |rho - 1/T| < 1e-9 (the particular integral divides by
    /// rho - 1/T); use integrate_trail_ode in that regime.
    static ClosedFormTrail exponential(double tau0, double rho, double deposit_total,
                                       double time_constant);
};

/// Resonance guard used by ClosedFormTrail::exponential.
inline constexpr double kResonanceTolerance = 1e-9;

double closed_form_constant(const ClosedFormTrail& cf, double t);
double closed_form_exponential(const ClosedFormTrail& cf, double t);

/// Fixed-step RK4 trajectory of dtau/dt = -rho*tau + signal(t+1),
/// sampled at multiples of dt. tau[i] is the value at t = i*dt.
struct TrailTrajectory {
    double dt = 0.0;
    std::vector<double> tau;

    double at_time(double t) const;  // nearest sample
};

TrailTrajectory integrate_trail_ode(double tau0, double rho,
                                    const std::function<double(double)>& signal,
                                    double t_end, double dt);

/// Deposition signals matching the two closed forms.
std::function<double(double)> constant_signal(double deposit_total);
std::function<double(double)> exponential_signal(double deposit_total, double time_constant);

}  // namespace antnet

#endif
