#pragma once

#include "nschsim/grid.hpp"

namespace nschsim {

/// Solves (diag(d) - c * laplacian_neumann) x = b to sup-norm residual <= tol.
/// 1D systems use a direct tridiagonal factorization (plus one pass of
/// iterative refinement); higher dimensions use Jacobi-preconditioned
/// conjugate gradients in the trapezoidal inner product, where the operator
/// is self-adjoint. Throws LinearSolveFailedError if the tolerance cannot be
/// met or a nonpositive-curvature direction shows the system is indefinite.
Field solve_shifted_laplacian(const Field& d, double c, const Field& b,
                              const Field& x0, double tol,
                              const char* context = "linear solve");

}  // namespace nschsim
