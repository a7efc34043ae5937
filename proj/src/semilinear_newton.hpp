#pragma once

#include "nschsim/grid.hpp"
#include "nschsim/potential.hpp"

namespace nschsim::detail {

/// Damped-Newton solve of the semilinear Neumann problem
///   a * x - Lap(x) + f'_lambda(x) = rhs
/// from the strictly interior iterate x_init. The line search halves the step
/// (at most 60 times) until the candidate stays strictly inside the endpoint
/// guard band and the residual sup-norm decreases. Throws ConfinementLostError
/// when no interior candidate exists, NewtonDivergedError on stagnation or
/// when the iteration cap is hit.
Field semilinear_newton(double a, const Field& rhs, const Field& x_init,
                        const PotentialSpec& spec, double lambda, double tol,
                        int max_iter, double lin_tol, const char* context);

}  // namespace nschsim::detail
