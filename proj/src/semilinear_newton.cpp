#include "semilinear_newton.hpp"

#include <cmath>
#include <string>

#include "nschsim/linsolve.hpp"

namespace nschsim::detail {

namespace {

bool strictly_interior(const Field& x) {
  for (double v : x.values()) {
    if (!(v > kEndpointGuard && v < 1.0 - kEndpointGuard)) return false;
  }
  return true;
}

double sup_norm(const Field& r) {
  double m = 0.0;
  for (double v : r.values()) m = std::max(m, std::fabs(v));
  return m;
}

// F(x) = a x - Lap(x) + f'_lambda(x) - rhs. Caller guarantees x interior.
Field newton_residual(double a, const Field& rhs, const Field& x,
                      const PotentialSpec& spec, double lambda) {
  Field F = laplacian_neumann(x);
  for (std::size_t i = 0; i < F.size(); ++i) {
    F[i] = a * x[i] - F[i] + regularized_f_prime(spec, x[i], lambda) - rhs[i];
  }
  return F;
}

}  // namespace

Field semilinear_newton(double a, const Field& rhs, const Field& x_init,
                        const PotentialSpec& spec, double lambda, double tol,
                        int max_iter, double lin_tol, const char* context) {
  const std::string ctx(context);
  if (!strictly_interior(x_init)) {
    throw ValidationError(ctx + ": initial iterate not strictly inside (0,1)");
  }
  Field x = x_init;
  Field F = newton_residual(a, rhs, x, spec, lambda);
  double norm_f = sup_norm(F);

  for (int iter = 0; iter < max_iter; ++iter) {
    if (norm_f <= tol) return x;

    // Jacobian (a + f''(x)) I - Lap, solved for the Newton direction.
    Field jac_diag(x.grid(), 0.0);
    Field neg_f = F;
    for (std::size_t i = 0; i < x.size(); ++i) {
      jac_diag[i] = a + regularized_f_second(spec, x[i], lambda);
      neg_f[i] = -F[i];
    }
    Field dx = solve_shifted_laplacian(jac_diag, 1.0, neg_f,
                                       Field(x.grid(), 0.0), lin_tol, context);

    double alpha = 1.0;
    bool accepted = false;
    bool interior_seen = false;
    for (int halving = 0; halving <= 60; ++halving) {
      Field cand = x;
      for (std::size_t i = 0; i < cand.size(); ++i) cand[i] += alpha * dx[i];
      if (strictly_interior(cand)) {
        interior_seen = true;
        Field Fc = newton_residual(a, rhs, cand, spec, lambda);
        const double nc = sup_norm(Fc);
        if (nc < norm_f) {
          x = std::move(cand);
          F = std::move(Fc);
          norm_f = nc;
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      if (!interior_seen) {
        throw ConfinementLostError(
            ctx + ": damping cannot keep the iterate inside (0,1)");
      }
      throw NewtonDivergedError(ctx + ": line search stagnated at residual " +
                                std::to_string(norm_f));
    }
  }
  if (norm_f <= tol) return x;
  throw NewtonDivergedError(ctx + ": iteration cap hit at residual " +
                            std::to_string(norm_f));
}

}  // namespace nschsim::detail
