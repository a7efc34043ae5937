#include "nschsim/stepper.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "nschsim/linsolve.hpp"
#include "semilinear_newton.hpp"

namespace nschsim {

void SolverConfig::validate() const {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw ValidationError("config: eps must be positive");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw ValidationError("config: delta must be positive");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw ValidationError("config: dt must be positive");
  }
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw ValidationError("config: tau must be nonnegative");
  }
  if (tau > 0.0) {
    const double ratio = tau / dt;
    if (std::fabs(ratio - std::round(ratio)) >
        1e-12 * std::max(1.0, ratio)) {
      throw ValidationError("config: tau must be an integer multiple of dt");
    }
  }
  if (lambda < 0.0 || !std::isfinite(lambda)) {
    throw ValidationError("config: lambda must be nonnegative");
  }
  if (!(newton_tol > 0.0) || !(lin_tol > 0.0)) {
    throw ValidationError("config: tolerances must be positive");
  }
  if (newton_max_iter < 1) {
    throw ValidationError("config: newton_max_iter must be >= 1");
  }
}

int SolverConfig::delay_steps() const {
  return tau > 0.0 ? static_cast<int>(std::llround(tau / dt)) : 0;
}

DelayBuffer::DelayBuffer(Field mu0, const SolverConfig& cfg)
    : mu0_(std::move(mu0)), capacity_(cfg.delay_steps() + 1) {
  ring_.emplace_front(0.0, mu0_);
}

void DelayBuffer::push(double t, Field mu) {
  ring_.emplace_front(t, std::move(mu));
  while (static_cast<int>(ring_.size()) > capacity_) ring_.pop_back();
}

double DelayBuffer::newest_time() const { return ring_.front().first; }

const Field& DelayBuffer::newest() const { return ring_.front().second; }

const Field& DelayBuffer::steps_back(int k) const {
  if (k < 0 || k >= static_cast<int>(ring_.size())) {
    throw BufferUnderrunError("delay buffer: history shorter than requested");
  }
  return ring_[static_cast<std::size_t>(k)].second;
}

double DelayBuffer::time_steps_back(int k) const {
  if (k < 0 || k >= static_cast<int>(ring_.size())) {
    throw BufferUnderrunError("delay buffer: history shorter than requested");
  }
  return ring_[static_cast<std::size_t>(k)].first;
}

Field delayed_mu(const DelayBuffer& buffer, double t, const SolverConfig& cfg) {
  if (cfg.delay_steps() == 0) {
    return buffer.newest();  // lagged previous-level mode
  }
  const double fuzz = 1e-9 * std::max(1.0, std::fabs(t));
  if (t <= cfg.tau + fuzz) {
    return buffer.initial_mu();
  }
  const double target = t - cfg.tau;
  for (int k = 0; k < buffer.size(); ++k) {
    if (std::fabs(buffer.time_steps_back(k) - target) <= fuzz) {
      return buffer.steps_back(k);
    }
  }
  throw BufferUnderrunError("delayed_mu: no stored level at t - tau = " +
                            std::to_string(target));
}

Field rho_step(const Field& rho_old, const Field& mu_delayed,
               const SolverConfig& cfg) {
  require_same_grid(rho_old, mu_delayed, "rho_step");
  const double a = cfg.delta / cfg.dt;
  Field rhs = mu_delayed;
  for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] += a * rho_old[i];
  try {
    return detail::semilinear_newton(a, rhs, rho_old, cfg.potential,
                                     cfg.lambda, cfg.newton_tol,
                                     cfg.newton_max_iter, cfg.lin_tol,
                                     "rho_step");
  } catch (const SolverError&) {
    if (cfg.lambda > 0.0) throw;
    // Fallback: one retry with a mild Yosida regularization.
    return detail::semilinear_newton(a, rhs, rho_old, cfg.potential, 1e-8,
                                     cfg.newton_tol, cfg.newton_max_iter,
                                     cfg.lin_tol, "rho_step(lambda=1e-8)");
  }
}

Field mu_step(const Field& mu_old, const Field& rho_old, const Field& rho_new,
              const SolverConfig& cfg) {
  require_same_grid(mu_old, rho_old, "mu_step");
  require_same_grid(mu_old, rho_new, "mu_step");
  // [diag(eps + rho_old + rho_new) - dt Lap] mu_new = (eps + 2 rho_old) mu_old;
  // positive diagonal plus M-matrix Laplacian keeps mu_new >= 0.
  Field d(mu_old.grid(), 0.0);
  Field b(mu_old.grid(), 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = cfg.eps + rho_old[i] + rho_new[i];
    b[i] = (cfg.eps + 2.0 * rho_old[i]) * mu_old[i];
  }
  return solve_shifted_laplacian(d, cfg.dt, b, mu_old, cfg.lin_tol, "mu_step");
}

void advance(State& state, DelayBuffer& buffer, const SolverConfig& cfg) {
  const double t_new = state.t + cfg.dt;
  Field g = delayed_mu(buffer, t_new, cfg);
  Field rho_new = rho_step(state.rho, g, cfg);
  Field mu_new = mu_step(state.mu, state.rho, rho_new, cfg);

  // Commit.
  Field dtrho = rho_new;
  for (std::size_t i = 0; i < dtrho.size(); ++i) {
    dtrho[i] = (rho_new[i] - state.rho[i]) / cfg.dt;
  }
  const double dtrho_sq = l2_norm(dtrho);
  state.cum_grad_mu += cfg.dt * grad_sq_integral(mu_new);
  state.cum_dtrho_sq += cfg.dt * cfg.delta * dtrho_sq * dtrho_sq;
  state.t = t_new;
  state.rho = std::move(rho_new);
  state.mu = mu_new;
  buffer.push(t_new, std::move(mu_new));
}

std::vector<double> Trajectory::times() const {
  std::vector<double> ts;
  ts.reserve(snapshots.size());
  for (const State& s : snapshots) ts.push_back(s.t);
  return ts;
}

void validate_initial_state(const State& init) {
  require_same_grid(init.mu, init.rho, "initial state");
  for (double v : init.mu.values()) {
    if (!std::isfinite(v)) {
      throw ValidationError("initial data: mu0 contains non-finite values");
    }
    if (v < 0.0) {
      throw ValidationError(
          "initial data: mu0 violates the hypothesis mu0 >= 0");
    }
  }
  for (double v : init.rho.values()) {
    if (!std::isfinite(v)) {
      throw ValidationError("initial data: rho0 contains non-finite values");
    }
    if (!(v > kEndpointGuard && v < 1.0 - kEndpointGuard)) {
      throw ValidationError(
          "initial data: rho0 violates the hypothesis 0 < rho0 < 1");
    }
  }
}

Trajectory simulate(const State& init, const SolverConfig& cfg, double t_end,
                    const SimulateOptions& options) {
  cfg.validate();
  validate_initial_state(init);
  if (t_end < 0.0 || !std::isfinite(t_end)) {
    throw ValidationError("simulate: t_end must be nonnegative");
  }
  const long snapshot_every = std::max<long>(1, options.snapshot_every);
  const long sink_every = std::max<long>(1, options.sink_every);

  State state = init;
  DelayBuffer buffer(init.mu, cfg);
  Trajectory traj;
  traj.snapshots.push_back(state);
  long step = 0;
  if (options.sink) options.sink(state, step);
  long last_sinked = 0;

  const double t_stop = t_end - 1e-12 * std::max(1.0, std::fabs(t_end));
  try {
    while (state.t < t_stop) {
      advance(state, buffer, cfg);
      ++step;
      if (step % snapshot_every == 0 && state.t < t_stop) {
        traj.snapshots.push_back(state);
      }
      if (options.sink && step % sink_every == 0 && state.t < t_stop) {
        options.sink(state, step);
        last_sinked = step;
      }
    }
  } catch (const SolverError&) {
    // Abort with the last valid state persisted for the caller.
    if (traj.back().t != state.t) traj.snapshots.push_back(state);
    if (options.sink && last_sinked != step) options.sink(state, step);
    throw;
  }
  if (traj.back().t != state.t) traj.snapshots.push_back(state);
  if (options.sink && last_sinked != step && step > 0) {
    options.sink(state, step);
  }
  return traj;
}

}  // namespace nschsim
