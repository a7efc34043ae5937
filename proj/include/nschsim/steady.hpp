#pragma once

#include "nschsim/stepper.hpp"

namespace nschsim {

/// A time-independent solution: constant nonnegative mu_s and rho_s solving
/// -Lap(rho_s) + f'(rho_s) = mu_s with zero flux.
struct SteadyState {
  double mu_s = 0.0;
  Field rho_s;
  double residual_norm = 0.0;  ///< sup-norm of the discrete residual
};

/// Damped-Newton solve of the semilinear Neumann problem, with the same
/// interiority safeguard as the rho step. The problem may have several
/// solutions (f need not be convex); the one returned depends on rho_init.
SteadyState solve_steady(const PotentialSpec& spec, double mu_s,
                         const Field& rho_init, double tol = 1e-10,
                         int max_iter = 50);

struct OmegaThresholds {
  double dtrho = 1e-6;
  double grad_mu = 1e-6;
  double mu_oscillation = 1e-6;
  double steady_residual = 1e-6;
};

struct OmegaProbeReport {
  double window_begin = 0.0;
  double window_end = 0.0;
  int window_snapshots = 0;
  double sup_dtrho_l2 = 0.0;
  double sup_grad_mu_l2 = 0.0;
  double sup_mu_oscillation = 0.0;
  double mu_s = 0.0;            ///< spatial mean of the terminal mu
  double steady_residual = 0.0; ///< L2 norm of -Lap(rho) + f'(rho) - mu_s at the end
  bool converged = false;
};

/// Probes the trajectory tail [t_end - window, t_end] for convergence to a
/// steady state: sup-window norms of dt(rho) and grad(mu), the spatial
/// oscillation of mu, and the terminal steady residual against mu_s = mean of
/// the final mu. Throws ValidationError if the window exceeds the trajectory.
OmegaProbeReport omega_limit_probe(const Trajectory& traj, double window,
                                   const SolverConfig& cfg,
                                   const OmegaThresholds& thresholds = {});

}  // namespace nschsim
