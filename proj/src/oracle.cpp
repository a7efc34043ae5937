#include "nschsim/oracle.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace nschsim {

namespace {

constexpr double kInteriorFloor = 1e-13;

using Vec = std::array<double, 2>;
using Rhs = std::function<bool(double t, const Vec& y, Vec& dy)>;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;

struct Integrator {
  Rhs rhs;
  int n = 1;
  double rtol = 1e-10;

  double t = 0.0;
  Vec y{};
  double h = 0.0;
  double err_prev = 1.0;

  // One attempted step of size h; returns false when a stage left the
  // admissible region or the error test failed.
  bool try_step(double hstep, Vec& y_out, double& err_norm) {
    Vec k1, k2, k3, k4, k5, k6, k7, ytmp;
    if (!rhs(t, y, k1)) return false;
    auto stage = [&](double c, std::initializer_list<std::pair<double, const Vec*>> terms,
                     Vec& k) {
      for (int i = 0; i < n; ++i) {
        double acc = y[i];
        for (const auto& [w, kv] : terms) acc += hstep * w * (*kv)[i];
        ytmp[i] = acc;
      }
      return rhs(t + c * hstep, ytmp, k);
    };
    if (!stage(c2, {{a21, &k1}}, k2)) return false;
    if (!stage(c3, {{a31, &k1}, {a32, &k2}}, k3)) return false;
    if (!stage(c4, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, k4)) return false;
    if (!stage(c5, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, k5))
      return false;
    if (!stage(1.0, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}},
               k6))
      return false;
    for (int i = 0; i < n; ++i) {
      y_out[i] = y[i] + hstep * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                 b5 * k5[i] + b6 * k6[i]);
    }
    if (!rhs(t + hstep, y_out, k7)) return false;
    err_norm = 0.0;
    for (int i = 0; i < n; ++i) {
      const double y4 = y[i] + hstep * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                        e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double scale = rtol * (1.0 + std::fabs(y[i]));
      const double e = (y_out[i] - y4) / scale;
      err_norm += e * e;
    }
    err_norm = std::sqrt(err_norm / n);
    return true;
  }

  // Advances exactly to t_target.
  void integrate_to(double t_target) {
    while (t < t_target) {
      const double h_min = 1e-14 * std::max(1.0, std::fabs(t));
      if (h < h_min) {
        throw SolverError("oracle: step-size underflow at t = " +
                          std::to_string(t));
      }
      double hstep = std::min(h, t_target - t);
      Vec y_new;
      double err = 0.0;
      const bool ok = try_step(hstep, y_new, err);
      if (ok && err <= 1.0) {
        t += hstep;
        y = y_new;
        // PI controller (standard exponents for a 5th-order pair).
        const double fac = 0.9 * std::pow(std::max(err, 1e-12), -0.7 / 5.0) *
                           std::pow(std::max(err_prev, 1e-12), 0.4 / 5.0);
        h = hstep * std::min(5.0, std::max(0.2, fac));
        err_prev = std::max(err, 1e-12);
      } else if (ok) {
        h = hstep * std::min(0.9, std::max(0.2, 0.9 * std::pow(err, -0.2)));
      } else {
        h = 0.5 * hstep;  // a stage left (0,1); retry smaller
      }
    }
  }
};

std::vector<double> default_samples(double t_end) {
  if (t_end <= 0.0) return {0.0};
  std::vector<double> ts(1001);
  for (int i = 0; i <= 1000; ++i) ts[i] = t_end * i / 1000.0;
  ts.back() = t_end;
  return ts;
}

void check_inputs(double rho0, double mu0, double t_end, double rtol) {
  if (!(rho0 > 0.0 && rho0 < 1.0)) {
    throw ValidationError("oracle: rho0 must lie in (0,1)");
  }
  if (mu0 < 0.0) {
    throw ValidationError("oracle: mu0 violates the hypothesis mu0 >= 0");
  }
  if (t_end < 0.0) {
    throw ValidationError("oracle: t_end must be nonnegative");
  }
  if (!(rtol > 0.0 && rtol < 1.0)) {
    throw ValidationError("oracle: rtol must lie in (0,1)");
  }
}

}  // namespace

HomogeneousTrajectory homogeneous_oracle(double rho0, double mu0,
                                         const SolverConfig& cfg, double t_end,
                                         double rtol,
                                         std::vector<double> sample_times) {
  check_inputs(rho0, mu0, t_end, rtol);
  const PotentialSpec& spec = cfg.potential;
  const double half_eps = 0.5 * cfg.eps;
  const double invariant0 = (half_eps + rho0) * mu0 * mu0;
  auto mu_of_rho = [&](double rho) {
    return std::sqrt(invariant0 / (half_eps + rho));
  };

  Integrator it;
  it.n = 1;
  it.rtol = rtol;
  it.y[0] = rho0;
  it.h = std::max(t_end * 1e-3, 1e-8);
  it.rhs = [&](double, const Vec& y, Vec& dy) {
    const double rho = y[0];
    if (!(rho > kInteriorFloor && rho < 1.0 - kInteriorFloor)) return false;
    dy[0] = (mu_of_rho(rho) - eval_potential(spec, rho).f_prime) / cfg.delta;
    return true;
  };

  if (sample_times.empty()) sample_times = default_samples(t_end);
  HomogeneousTrajectory out;
  for (double ts : sample_times) {
    it.integrate_to(ts);
    const double rho = it.y[0];
    const double mu = mu_of_rho(rho);
    out.times.push_back(ts);
    out.rho_values.push_back(rho);
    out.mu_values.push_back(mu);
    out.invariant_values.push_back((half_eps + rho) * mu * mu);
  }
  return out;
}

HomogeneousTrajectory homogeneous_oracle_unreduced(
    double rho0, double mu0, const SolverConfig& cfg, double t_end, double rtol,
    std::vector<double> sample_times) {
  check_inputs(rho0, mu0, t_end, rtol);
  const PotentialSpec& spec = cfg.potential;
  const double half_eps = 0.5 * cfg.eps;

  Integrator it;
  it.n = 2;
  it.rtol = rtol;
  it.y[0] = mu0;
  it.y[1] = rho0;
  it.h = std::max(t_end * 1e-3, 1e-8);
  it.rhs = [&](double, const Vec& y, Vec& dy) {
    const double mu = y[0];
    const double rho = y[1];
    if (!(rho > kInteriorFloor && rho < 1.0 - kInteriorFloor)) return false;
    const double drho = (mu - eval_potential(spec, rho).f_prime) / cfg.delta;
    dy[1] = drho;
    dy[0] = -mu * drho / (cfg.eps + 2.0 * rho);
    return true;
  };

  if (sample_times.empty()) sample_times = default_samples(t_end);
  HomogeneousTrajectory out;
  for (double ts : sample_times) {
    it.integrate_to(ts);
    const double mu = it.y[0];
    const double rho = it.y[1];
    out.times.push_back(ts);
    out.mu_values.push_back(mu);
    out.rho_values.push_back(rho);
    out.invariant_values.push_back((half_eps + rho) * mu * mu);
  }
  return out;
}

}  // namespace nschsim
