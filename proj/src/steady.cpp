#include "nschsim/steady.hpp"

#include <algorithm>
#include <cmath>

#include "semilinear_newton.hpp"

namespace nschsim {

SteadyState solve_steady(const PotentialSpec& spec, double mu_s,
                         const Field& rho_init, double tol, int max_iter) {
  if (mu_s < 0.0 || !std::isfinite(mu_s)) {
    throw ValidationError("solve_steady: mu_s must be a nonnegative constant");
  }
  if (!(tol > 0.0)) {
    throw ValidationError("solve_steady: tol must be positive");
  }
  const Field rhs(rho_init.grid(), mu_s);
  const double inner_tol = std::max(1e-14, 1e-2 * tol);
  SteadyState out;
  out.mu_s = mu_s;
  out.rho_s = detail::semilinear_newton(0.0, rhs, rho_init, spec,
                                        /*lambda=*/0.0, tol, max_iter,
                                        inner_tol, "solve_steady");
  Field res = laplacian_neumann(out.rho_s);
  double sup = 0.0;
  for (std::size_t i = 0; i < res.size(); ++i) {
    const double v =
        -res[i] + eval_potential(spec, out.rho_s[i]).f_prime - mu_s;
    sup = std::max(sup, std::fabs(v));
  }
  out.residual_norm = sup;
  return out;
}

OmegaProbeReport omega_limit_probe(const Trajectory& traj, double window,
                                   const SolverConfig& cfg,
                                   const OmegaThresholds& thresholds) {
  if (traj.size() == 0) {
    throw ValidationError("omega_limit_probe: empty trajectory");
  }
  const double t_end = traj.back().t;
  const double t0 = traj.front().t;
  const double fuzz = 1e-9 * std::max(1.0, std::fabs(t_end));
  if (window < 0.0 || window > t_end - t0 + fuzz) {
    throw ValidationError("omega_limit_probe: window longer than trajectory");
  }
  const double w_begin = t_end - window;

  OmegaProbeReport rep;
  rep.window_begin = w_begin;
  rep.window_end = t_end;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const State& s = traj[i];
    if (s.t < w_begin - fuzz) continue;
    ++rep.window_snapshots;
    rep.sup_grad_mu_l2 =
        std::max(rep.sup_grad_mu_l2, std::sqrt(grad_sq_integral(s.mu)));
    rep.sup_mu_oscillation =
        std::max(rep.sup_mu_oscillation, s.mu.max() - s.mu.min());
    if (i > 0) {
      const State& p = traj[i - 1];
      const double dt = s.t - p.t;
      if (dt > 0.0) {
        Field dtrho(s.rho.grid(), 0.0);
        for (std::size_t k = 0; k < dtrho.size(); ++k) {
          dtrho[k] = (s.rho[k] - p.rho[k]) / dt;
        }
        rep.sup_dtrho_l2 = std::max(rep.sup_dtrho_l2, l2_norm(dtrho));
      }
    }
  }

  const State& fin = traj.back();
  rep.mu_s = integrate(fin.mu) / fin.mu.grid().measure();
  Field res = laplacian_neumann(fin.rho);
  for (std::size_t i = 0; i < res.size(); ++i) {
    res[i] = -res[i] + eval_potential(cfg.potential, fin.rho[i]).f_prime -
             rep.mu_s;
  }
  rep.steady_residual = l2_norm(res);
  rep.converged = rep.sup_dtrho_l2 <= thresholds.dtrho &&
                  rep.sup_grad_mu_l2 <= thresholds.grad_mu &&
                  rep.sup_mu_oscillation <= thresholds.mu_oscillation &&
                  rep.steady_residual <= thresholds.steady_residual;
  return rep;
}

}  // namespace nschsim
