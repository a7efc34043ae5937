#include "nschsim/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nschsim {

namespace {

double sup_norm(const Field& r) {
  double m = 0.0;
  for (double v : r.values()) m = std::max(m, std::fabs(v));
  return m;
}

// Integral terms of the energy identity at one state.
struct LyapunovTerms {
  double half_grad_rho_sq;
  double f_integral;
  double mu_integral;
  double rho_mu_integral;
};

LyapunovTerms lyapunov_terms(const State& s, const SolverConfig& cfg) {
  LyapunovTerms t;
  t.half_grad_rho_sq = 0.5 * grad_sq_integral(s.rho);
  Field f_rho(s.rho.grid(), 0.0);
  Field rho_mu(s.rho.grid(), 0.0);
  for (std::size_t i = 0; i < s.rho.size(); ++i) {
    f_rho[i] = eval_potential(cfg.potential, s.rho[i]).f;
    rho_mu[i] = s.rho[i] * s.mu[i];
  }
  t.f_integral = integrate(f_rho);
  t.mu_integral = integrate(s.mu);
  t.rho_mu_integral = integrate(rho_mu);
  return t;
}

// Left-rectangle weights over the snapshot times; the last snapshot gets
// weight 0 (indicator data is discontinuous, higher order buys nothing).
std::vector<double> rectangle_weights(const Trajectory& traj) {
  std::vector<double> w(traj.size(), 0.0);
  for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
    w[i] = traj[i + 1].t - traj[i].t;
  }
  return w;
}

double level_set_measure(const Field& mu, double k) {
  const Grid& g = mu.grid();
  double m = 0.0;
  for (std::size_t i = 0; i < g.total_nodes(); ++i) {
    if (mu[i] > k) m += g.quad_weight(i);
  }
  return m;
}

Field positive_part_above(const Field& mu, double k) {
  Field v(mu.grid(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = std::max(0.0, mu[i] - k);
  }
  return v;
}

}  // namespace

double weighted_mu_energy(const State& s, const SolverConfig& cfg) {
  Field e(s.mu.grid(), 0.0);
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = (0.5 * cfg.eps + s.rho[i]) * s.mu[i] * s.mu[i];
  }
  return integrate(e);
}

double first_estimate_drift(const Trajectory& traj, const SolverConfig& cfg) {
  if (traj.size() == 0) {
    throw ValidationError("first_estimate_drift: empty trajectory");
  }
  const double base =
      weighted_mu_energy(traj.front(), cfg) + traj.front().cum_grad_mu;
  double drift = 0.0;
  for (const State& s : traj.snapshots) {
    const double lhs = weighted_mu_energy(s, cfg) + s.cum_grad_mu;
    drift = std::max(drift, std::fabs(lhs - base));
  }
  return base == 0.0 ? drift : drift / base;
}

double lyapunov_identity_residual(const Trajectory& traj,
                                  const SolverConfig& cfg,
                                  std::size_t t_index) {
  const State& s0 = traj.front();
  const State& s = traj[t_index];
  const LyapunovTerms a = lyapunov_terms(s, cfg);
  const LyapunovTerms b = lyapunov_terms(s0, cfg);
  const double lhs = s.cum_dtrho_sq + a.half_grad_rho_sq + a.f_integral;
  const double rhs = b.half_grad_rho_sq + b.f_integral +
                     cfg.eps * (a.mu_integral - b.mu_integral) +
                     2.0 * (a.rho_mu_integral - b.rho_mu_integral);
  return std::fabs(lhs - rhs) / (1.0 + std::fabs(rhs));
}

double pointwise_identity_residual(const State& prev, const State& next,
                                   const SolverConfig& cfg) {
  const double dt = next.t - prev.t;
  if (!(dt > 0.0)) {
    throw ValidationError("pointwise_identity_residual: snapshots must be "
                          "consecutive in time");
  }
  const Field lap_rho = laplacian_neumann(next.rho);
  const Field lap_mu = laplacian_neumann(next.mu);
  Field diff(next.rho.grid(), 0.0);
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const double dtrho = (next.rho[i] - prev.rho[i]) / dt;
    const double dtmu = (next.mu[i] - prev.mu[i]) / dt;
    const double dtrhomu =
        (next.rho[i] * next.mu[i] - prev.rho[i] * prev.mu[i]) / dt;
    const double fp = eval_potential(cfg.potential, next.rho[i]).f_prime;
    const double lhs =
        cfg.delta * dtrho * dtrho - dtrho * lap_rho[i] + fp * dtrho;
    const double rhs = cfg.eps * dtmu + 2.0 * dtrhomu - lap_mu[i];
    diff[i] = lhs - rhs;
  }
  return l2_norm(diff);
}

DiagnosticsRecord make_diagnostics_record(const State& initial,
                                          const State& prev, const State& cur,
                                          long step, const SolverConfig& cfg) {
  DiagnosticsRecord r;
  r.step = step;
  r.t = cur.t;
  r.min_mu = cur.mu.min();
  r.max_mu = cur.mu.max();
  r.min_rho = cur.rho.min();
  r.max_rho = cur.rho.max();
  r.weighted_mu_energy = weighted_mu_energy(cur, cfg);
  r.cum_grad_mu = cur.cum_grad_mu;

  const double base = weighted_mu_energy(initial, cfg) + initial.cum_grad_mu;
  const double drift = std::fabs(r.weighted_mu_energy + r.cum_grad_mu - base);
  r.conservation_drift = base == 0.0 ? drift : drift / base;

  const LyapunovTerms a = lyapunov_terms(cur, cfg);
  const LyapunovTerms b = lyapunov_terms(initial, cfg);
  r.lyapunov_lhs = cur.cum_dtrho_sq + a.half_grad_rho_sq + a.f_integral;
  r.lyapunov_rhs = b.half_grad_rho_sq + b.f_integral +
                   cfg.eps * (a.mu_integral - b.mu_integral) +
                   2.0 * (a.rho_mu_integral - b.rho_mu_integral);
  r.lyapunov_residual =
      std::fabs(r.lyapunov_lhs - r.lyapunov_rhs) / (1.0 + std::fabs(r.lyapunov_rhs));

  const double dt = cur.t - prev.t;
  if (dt > 0.0) {
    Field dtrho(cur.rho.grid(), 0.0);
    for (std::size_t i = 0; i < dtrho.size(); ++i) {
      dtrho[i] = (cur.rho[i] - prev.rho[i]) / dt;
    }
    r.dtrho_l2 = l2_norm(dtrho);
  }
  r.grad_mu_l2 = std::sqrt(grad_sq_integral(cur.mu));
  r.mu_oscillation = r.max_mu - r.min_mu;
  return r;
}

DeGiorgiReport degiorgi_diagnostic(const Trajectory& traj, double m,
                                   int j_max) {
  if (traj.size() == 0) {
    throw ValidationError("degiorgi_diagnostic: empty trajectory");
  }
  if (!(m > 1.0)) {
    throw ValidationError("degiorgi_diagnostic: multiplier m must exceed 1");
  }
  const double mu0_star = lq_norm(traj.front().mu,
                                  std::numeric_limits<double>::infinity());
  if (mu0_star == 0.0) {
    throw ValidationError(
        "degiorgi_diagnostic: degenerate data, sup |mu0| == 0");
  }

  DeGiorgiReport rep;
  rep.m = m;
  rep.M = m * mu0_star;
  rep.sup_mu_observed = -std::numeric_limits<double>::infinity();
  for (const State& s : traj.snapshots) {
    rep.sup_mu_observed = std::max(rep.sup_mu_observed, s.mu.max());
  }
  rep.sup_within_two_m = rep.sup_mu_observed <= 2.0 * rep.M;

  const std::vector<double> w = rectangle_weights(traj);
  for (int j = 0; j <= j_max; ++j) {
    const double k = rep.M * (2.0 - std::pow(2.0, -j));
    rep.k_levels.push_back(k);

    // S_j^2 = sum_t w_t * meas{mu > k}^(1/2)  (L2 in time of the L4 norm of
    // the indicator; the L^{7/4}(L^{7/2}) norm is the same sum to the 4/7).
    double accum = 0.0;
    double sup_sq = 0.0;
    double grad_integral = 0.0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
      const double meas = level_set_measure(traj[i].mu, k);
      accum += w[i] * std::sqrt(meas);
      const Field trunc = positive_part_above(traj[i].mu, k);
      const double h_norm = l2_norm(trunc);
      sup_sq = std::max(sup_sq, h_norm * h_norm);
      grad_integral += w[i] * grad_sq_integral(trunc);
    }
    rep.S_levels.push_back(std::sqrt(accum));
    rep.S_levels_7_4.push_back(std::pow(accum, 4.0 / 7.0));
    rep.triple_norms.push_back(std::sqrt(sup_sq + grad_integral));
    if (rep.first_zero_j < 0 && accum == 0.0) rep.first_zero_j = j;
  }
  return rep;
}

ConfinementReport confinement_bounds(const Trajectory& traj,
                                     const PotentialSpec& spec) {
  if (traj.size() == 0) {
    throw ValidationError("confinement_bounds: empty trajectory");
  }
  ConfinementReport rep;
  rep.inf_g = std::numeric_limits<double>::infinity();
  rep.sup_g = -std::numeric_limits<double>::infinity();
  rep.observed_min_rho = std::numeric_limits<double>::infinity();
  rep.observed_max_rho = -std::numeric_limits<double>::infinity();
  for (const State& s : traj.snapshots) {
    for (std::size_t i = 0; i < s.rho.size(); ++i) {
      const double g = s.mu[i] - eval_potential(spec, s.rho[i]).f2_prime;
      rep.inf_g = std::min(rep.inf_g, g);
      rep.sup_g = std::max(rep.sup_g, g);
      rep.observed_min_rho = std::min(rep.observed_min_rho, s.rho[i]);
      rep.observed_max_rho = std::max(rep.observed_max_rho, s.rho[i]);
    }
  }

  // Level search on the monotone singular derivative: the largest r with
  // f1'(r) <= inf g, and symmetrically the smallest r with f1'(r) >= sup g.
  auto f1p = [&](double r) { return eval_potential(spec, r).f1_prime; };
  auto invert = [&](double target) {
    double lo = kEndpointGuard;
    double hi = 1.0 - kEndpointGuard;
    if (f1p(lo) > target) return 0.0;        // vacuous lower level
    if (f1p(hi) < target) return 1.0;        // vacuous upper level
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
      const double mid = 0.5 * (lo + hi);
      (f1p(mid) <= target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  rep.r_lower_candidate = invert(rep.inf_g);
  rep.r_upper_candidate = invert(rep.sup_g);

  const double min_rho0 = traj.front().rho.min();
  const double max_rho0 = traj.front().rho.max();
  rep.lower_bound = std::min(rep.r_lower_candidate, min_rho0);
  rep.upper_bound = std::max(rep.r_upper_candidate, max_rho0);
  rep.respected = rep.observed_min_rho >= rep.lower_bound - 1e-12 &&
                  rep.observed_max_rho <= rep.upper_bound + 1e-12;
  return rep;
}

}  // namespace nschsim
