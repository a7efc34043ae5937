#pragma once

#include <vector>

#include "nschsim/stepper.hpp"

namespace nschsim {

/// Reference solution for spatially homogeneous data, where the system
/// reduces to scalar ODEs with the conserved quantity (eps/2 + rho) mu^2.
struct HomogeneousTrajectory {
  std::vector<double> times;
  std::vector<double> mu_values;
  std::vector<double> rho_values;
  std::vector<double> invariant_values;  ///< (eps/2 + rho) mu^2 per sample
};

/// Integrates  delta rho' = mu0 sqrt((eps/2 + rho0)/(eps/2 + rho)) - f'(rho)
/// with an embedded Dormand-Prince 5(4) pair under PI step control, and
/// reconstructs mu from the conserved quantity. Samples at `sample_times`
/// (uniform 1001 points of [0, t_end] when empty). Throws SolverError on
/// step-size underflow.
HomogeneousTrajectory homogeneous_oracle(double rho0, double mu0,
                                         const SolverConfig& cfg, double t_end,
                                         double rtol = 1e-10,
                                         std::vector<double> sample_times = {});

/// Cross-check path: co-integrates the unreduced pair
///   (eps + 2 rho) mu' = -mu rho',   delta rho' = mu - f'(rho)
/// without using the invariant. Agreement with the reduced path bounds the
/// integrator error; here the invariant column actually drifts.
HomogeneousTrajectory homogeneous_oracle_unreduced(
    double rho0, double mu0, const SolverConfig& cfg, double t_end,
    double rtol = 1e-10, std::vector<double> sample_times = {});

}  // namespace nschsim
