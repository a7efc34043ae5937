#include "nschsim/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace nschsim {

namespace {

void check_domain(double r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw std::domain_error("potential: r = " + std::to_string(r) +
                            " outside (0,1)");
  }
  if (r < kEndpointGuard || r > 1.0 - kEndpointGuard) {
    throw std::range_error("potential: r = " + std::to_string(r) +
                           " inside the endpoint guard band");
  }
}

// Built-in logarithmic family. log1p keeps the 1-r branch accurate near 1.
double f1_default(const PotentialSpec& s, double r) {
  return s.theta * (r * std::log(r) + (1.0 - r) * std::log1p(-r));
}
double f1_prime_default(const PotentialSpec& s, double r) {
  return s.theta * (std::log(r) - std::log1p(-r));
}
double f1_second_default(const PotentialSpec& s, double r) {
  return s.theta * (1.0 / r + 1.0 / (1.0 - r));
}
double f2_default(const PotentialSpec& s, double r) {
  return s.theta_c * r * (1.0 - r);
}
double f2_prime_default(const PotentialSpec& s, double r) {
  return s.theta_c * (1.0 - 2.0 * r);
}
double f2_second_default(const PotentialSpec& s, double) {
  return -2.0 * s.theta_c;
}

// Raw accessors, no guard band: the resolvent probes the whole of (0,1).
double f1_prime_at(const PotentialSpec& s, double r) {
  return s.f1_prime ? s.f1_prime(r) : f1_prime_default(s, r);
}
double f1_second_at(const PotentialSpec& s, double r) {
  return s.f1_second ? s.f1_second(r) : f1_second_default(s, r);
}

}  // namespace

PotentialEval eval_potential(const PotentialSpec& spec, double r) {
  check_domain(r);
  PotentialEval e;
  const double f1 = spec.f1 ? spec.f1(r) : f1_default(spec, r);
  const double f2 = spec.f2 ? spec.f2(r) : f2_default(spec, r);
  e.f = f1 + f2;
  e.f1_prime = f1_prime_at(spec, r);
  e.f1_second = f1_second_at(spec, r);
  e.f2_prime = spec.f2_prime ? spec.f2_prime(r) : f2_prime_default(spec, r);
  e.f2_second = spec.f2_second ? spec.f2_second(r) : f2_second_default(spec, r);
  e.f_prime = e.f1_prime + e.f2_prime;
  if (!std::isfinite(e.f) || !std::isfinite(e.f_prime) ||
      !std::isfinite(e.f1_second) || !std::isfinite(e.f2_second)) {
    throw std::range_error("potential: non-finite evaluation at r = " +
                           std::to_string(r));
  }
  return e;
}

double yosida_resolvent(const PotentialSpec& spec, double r, double lambda) {
  if (!(lambda > 0.0)) {
    throw ValidationError("yosida_resolvent: lambda must be positive");
  }
  constexpr double eps_m = std::numeric_limits<double>::epsilon();
  double lo = eps_m;
  double hi = 1.0 - eps_m;
  auto phi = [&](double y) { return y + lambda * f1_prime_at(spec, y) - r; };

  // phi is strictly increasing. If the root sits in the unrepresentable
  // boundary layer (|r| huge against lambda), the nearest representable
  // endpoint already approximates it to machine accuracy.
  if (phi(lo) >= 0.0) return lo;
  if (phi(hi) <= 0.0) return hi;

  constexpr double tol = 1e-14;
  double y = std::clamp(r, lo, hi);
  for (int iter = 0; iter < 300; ++iter) {
    const double fy = phi(y);
    if (fy == 0.0) return y;
    if (fy > 0.0) {
      hi = y;
    } else {
      lo = y;
    }
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    const double dphi = 1.0 + lambda * f1_second_at(spec, y);  // >= 1, f1 convex
    double y_next = y - fy / dphi;
    if (!(y_next > lo && y_next < hi)) {
      y_next = 0.5 * (lo + hi);  // bisection safeguard
    }
    if (std::fabs(y_next - y) <= tol) return y_next;
    y = y_next;
  }
  throw SolverError(
      "yosida_resolvent: iteration limit; the supplied f1' is not a usable "
      "monotone derivative");
}

double yosida_f1_prime(const PotentialSpec& spec, double r, double lambda) {
  const double y = yosida_resolvent(spec, r, lambda);
  return (r - y) / lambda;
}

double regularized_f_prime(const PotentialSpec& spec, double r, double lambda) {
  if (lambda > 0.0) {
    const double f2p =
        spec.f2_prime ? spec.f2_prime(r) : f2_prime_default(spec, r);
    return yosida_f1_prime(spec, r, lambda) + f2p;
  }
  return eval_potential(spec, r).f_prime;
}

double regularized_f_second(const PotentialSpec& spec, double r,
                            double lambda) {
  if (lambda > 0.0) {
    const double y = yosida_resolvent(spec, r, lambda);
    const double f1pp = f1_second_at(spec, y);
    const double f2pp =
        spec.f2_second ? spec.f2_second(r) : f2_second_default(spec, r);
    return f1pp / (1.0 + lambda * f1pp) + f2pp;
  }
  const PotentialEval e = eval_potential(spec, r);
  return e.f1_second + e.f2_second;
}

void validate_potential(const PotentialSpec& spec) {
  if (!(spec.theta > 0.0) || !std::isfinite(spec.theta)) {
    throw ValidationError("potential: theta must be positive");
  }
  if (spec.theta_c < 0.0 || !std::isfinite(spec.theta_c)) {
    throw ValidationError("potential: theta_c must be nonnegative");
  }
  constexpr int samples = 257;
  double f2pp_bound = 0.0;
  for (int i = 1; i < samples; ++i) {
    const double r = static_cast<double>(i) / samples;
    const PotentialEval e = eval_potential(spec, r);
    if (e.f1_second < 0.0) {
      throw ValidationError("potential: f1'' < 0 at r = " + std::to_string(r) +
                            "; f1 must be convex");
    }
    f2pp_bound = std::max(f2pp_bound, std::fabs(e.f2_second));
  }
  if (!std::isfinite(f2pp_bound)) {
    throw ValidationError("potential: f2'' must be bounded on (0,1)");
  }
  // Scale-free blow-up check: approaching an endpoint must keep growing the
  // derivative magnitude well past its value at moderate distance.
  const double near0 = f1_prime_at(spec, 1e-2);
  const double far0 = f1_prime_at(spec, 1e-300);
  if (!(far0 < 0.0) || !(std::fabs(far0) >= 5.0 * std::fabs(near0)) ||
      !(far0 < near0)) {
    throw ValidationError("potential: f1' does not blow up to -inf at 0");
  }
  const double near1 = f1_prime_at(spec, 1.0 - 1e-2);
  const double far1 = f1_prime_at(spec, 1.0 - 1e-16);
  if (!(far1 > 0.0) || !(std::fabs(far1) >= 5.0 * std::fabs(near1)) ||
      !(far1 > near1)) {
    throw ValidationError("potential: f1' does not blow up to +inf at 1");
  }
}

}  // namespace nschsim
