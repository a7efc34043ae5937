#pragma once

#include <cstddef>
#include <vector>

#include "nschsim/stepper.hpp"

namespace nschsim {

/// Per-step identity residuals, extrema and norms of a trajectory snapshot.
struct DiagnosticsRecord {
  long step = 0;
  double t = 0.0;
  double min_mu = 0.0, max_mu = 0.0;
  double min_rho = 0.0, max_rho = 0.0;
  double weighted_mu_energy = 0.0;  ///< integral of (eps/2) mu^2 + rho mu^2
  double cum_grad_mu = 0.0;
  double conservation_drift = 0.0;  ///< relative (absolute if the initial energy is 0)
  double lyapunov_lhs = 0.0, lyapunov_rhs = 0.0;
  double lyapunov_residual = 0.0;  ///< |lhs - rhs| / (1 + |rhs|)
  double dtrho_l2 = 0.0;           ///< L2 norm of the dt(rho) difference quotient
  double grad_mu_l2 = 0.0;
  double mu_oscillation = 0.0;  ///< max mu - min mu
};

/// integral of ((eps/2) + rho) mu^2 at one state.
double weighted_mu_energy(const State& s, const SolverConfig& cfg);

/// Conservation monitor: with E(t) = weighted_mu_energy(t) + cum_grad_mu(t),
/// returns max_t |E(t) - E(0)| / E(0) over the snapshots, or the absolute
/// drift when E(0) == 0 (the mu == 0 solution branch).
double first_estimate_drift(const Trajectory& traj, const SolverConfig& cfg);

/// Residual of the integrated energy identity
///   delta * int_0^t |dt rho|^2 + (1/2)|grad rho(t)|^2 + int f(rho(t))
///     = (1/2)|grad rho0|^2 + int f(rho0)
///       + eps int mu(t) - eps int mu0 + 2 int (rho mu)(t) - 2 int rho0 mu0,
/// normalized by (1 + |rhs|).
double lyapunov_identity_residual(const Trajectory& traj,
                                  const SolverConfig& cfg,
                                  std::size_t t_index);

/// Both sides of the pointwise identity
///   delta (dt rho)^2 - dt(rho) Lap(rho) + f'(rho) dt(rho)
///     = eps dt(mu) + 2 dt(rho mu) - Lap(mu)
/// discretized with difference quotients in time and Laplacians at the new
/// level; returns the L2 norm of lhs - rhs. O(dt + h^2) on smooth solutions.
double pointwise_identity_residual(const State& prev, const State& next,
                                   const SolverConfig& cfg);

/// Full record for one snapshot; `prev` supplies the difference quotient
/// (pass cur itself at step 0) and `initial` anchors the drift and identity
/// baselines.
DiagnosticsRecord make_diagnostics_record(const State& initial,
                                          const State& prev, const State& cur,
                                          long step, const SolverConfig& cfg);

/// Level-set data of the boundedness iteration: levels k_j = M (2 - 2^-j)
/// with M = m * sup|mu0|, level-set norms S_j = |chi_{k_j}| in L2(0,T;L4),
/// and the triple norms of (mu - k_j)^+ where
///   |||v|||^2 = sup_t |v(t)|_L2^2 + int_0^T |grad v|^2.
struct DeGiorgiReport {
  double m = 0.0;
  double M = 0.0;  ///< level base m * sup|mu0|
  double sup_mu_observed = 0.0;
  std::vector<double> k_levels;
  std::vector<double> S_levels;
  std::vector<double> S_levels_7_4;  ///< same data in the L^{7/4}(L^{7/2}) norm = S_j^{8/7}
  std::vector<double> triple_norms;
  int first_zero_j = -1;         ///< smallest j with S_j == 0, or -1
  bool sup_within_two_m = false; ///< sup mu <= 2M over the trajectory
};

/// Computes the report over snapshots (time integrals by the rectangle rule
/// on the snapshot grid). Throws ValidationError if sup|mu0| == 0.
DeGiorgiReport degiorgi_diagnostic(const Trajectory& traj, double m, int j_max);

/// Confinement levels from g = mu - f2'(rho): the largest r with
/// f1'(r) <= inf g and the smallest r with f1'(r) >= sup g, found by bisection
/// on the monotone derivative. Candidates degenerate to 0 / 1 when no level
/// exists. `respected` checks the observed rho range against
/// min(r_lower, min rho0) and max(r_upper, max rho0).
struct ConfinementReport {
  double inf_g = 0.0, sup_g = 0.0;
  double r_lower_candidate = 0.0;
  double r_upper_candidate = 1.0;
  double observed_min_rho = 0.0, observed_max_rho = 0.0;
  double lower_bound = 0.0, upper_bound = 1.0;
  bool respected = false;
};

ConfinementReport confinement_bounds(const Trajectory& traj,
                                     const PotentialSpec& spec);

}  // namespace nschsim
