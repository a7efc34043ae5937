#pragma once

#include <functional>

#include "nschsim/errors.hpp"

namespace nschsim {

/// Evaluations closer than this to 0 or 1 are rejected with std::range_error
/// rather than clamped, so confinement violations surface as errors.
inline constexpr double kEndpointGuard = 1e-14;

/// Split double-well potential f = f1 + f2: a singular convex part f1 whose
/// derivative blows up at 0 and 1, plus a smooth perturbation f2 with bounded
/// curvature. The built-in family is
///   f1(r) = theta * (r ln r + (1-r) ln(1-r)),   f2(r) = theta_c * r (1-r),
/// a double well iff theta_c > 2 theta. Any of the six callables can be
/// overridden; unset entries fall back to the built-in family.
struct PotentialSpec {
  double theta = 1.0;    ///< strength of the singular convex part
  double theta_c = 0.0;  ///< strength of the smooth concave part

  std::function<double(double)> f1;
  std::function<double(double)> f1_prime;
  std::function<double(double)> f1_second;
  std::function<double(double)> f2;
  std::function<double(double)> f2_prime;
  std::function<double(double)> f2_second;
};

/// All derivative pieces at a single r in (0,1).
struct PotentialEval {
  double f;
  double f_prime;  ///< f1_prime + f2_prime, exactly
  double f1_prime;
  double f1_second;  ///< >= 0 by convexity
  double f2_prime;
  double f2_second;
};

/// Evaluates the potential and its derivatives at r.
/// Throws std::domain_error for r outside (0,1) and std::range_error inside
/// the endpoint guard band.
PotentialEval eval_potential(const PotentialSpec& spec, double r);

/// Resolvent J_lambda of the monotone graph f1': the unique y in (0,1) with
///   y + lambda * f1'(y) = r.
/// Defined for every real r; solved by bisection-safeguarded Newton to
/// absolute tolerance 1e-12 (tighter in practice).
double yosida_resolvent(const PotentialSpec& spec, double r, double lambda);

/// Yosida approximation (f1')_lambda(r) = (r - J_lambda(r)) / lambda.
/// Monotone nondecreasing and 1/lambda-Lipschitz in r.
double yosida_f1_prime(const PotentialSpec& spec, double r, double lambda);

/// f'(r) with the singular part replaced by its Yosida approximation when
/// lambda > 0; the exact f'(r) when lambda == 0.
double regularized_f_prime(const PotentialSpec& spec, double r, double lambda);

/// d/dr of regularized_f_prime. For lambda > 0 the singular part contributes
/// f1''(y) / (1 + lambda f1''(y)) with y = J_lambda(r).
double regularized_f_second(const PotentialSpec& spec, double r, double lambda);

/// Numeric spot checks of the structural assumptions: theta > 0, theta_c >= 0,
/// f1'' >= 0 on a sample grid, |f2''| bounded, f1' blowing up at both
/// endpoints. Throws ValidationError on failure.
void validate_potential(const PotentialSpec& spec);

}  // namespace nschsim
