#pragma once

#include <deque>
#include <functional>
#include <vector>

#include "nschsim/grid.hpp"
#include "nschsim/potential.hpp"

namespace nschsim {

struct SolverConfig {
  double eps = 1.0;    ///< coefficient of dt(mu) in the mu equation
  double delta = 1.0;  ///< viscosity coefficient of dt(rho)
  double tau = 0.0;    ///< delay; 0 selects the lagged previous-level mode
  double dt = 1e-3;
  double lambda = 0.0;  ///< Yosida parameter; 0 = exact singular potential
  double newton_tol = 1e-10;  ///< residual sup-norm target of the rho solve
  int newton_max_iter = 50;
  double lin_tol = 1e-10;  ///< residual sup-norm target of linear solves
  PotentialSpec potential;

  /// Throws ValidationError on violated constraints (eps, delta, dt > 0;
  /// tau >= 0 and an integer multiple of dt to 1e-12 relative; lambda >= 0).
  void validate() const;

  /// tau / dt, rounded; 0 in the lagged mode.
  int delay_steps() const;
};

struct State {
  double t = 0.0;
  Field mu;
  Field rho;
  double cum_grad_mu = 0.0;   ///< running integral of |grad mu|^2 over time
  double cum_dtrho_sq = 0.0;  ///< running delta * integral of |dt rho|_L2^2
};

/// Ring of past mu fields at times t, t-dt, ..., t-tau, plus the initial
/// datum used while t < tau.
class DelayBuffer {
 public:
  DelayBuffer(Field mu0, const SolverConfig& cfg);

  void push(double t, Field mu);
  const Field& initial_mu() const { return mu0_; }
  /// Steady-state depth tau/dt + 1 (1 in the lagged mode).
  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(ring_.size()); }
  double newest_time() const;
  const Field& newest() const;
  /// Entry k steps behind the newest (k = 0 is the newest).
  const Field& steps_back(int k) const;
  double time_steps_back(int k) const;

 private:
  Field mu0_;
  std::deque<std::pair<double, Field>> ring_;  // newest at front
  int capacity_ = 1;
};

/// The translated chemical potential feeding the rho equation at time t:
/// mu(t - tau) for t > tau, the initial datum for t <= tau. With tau == 0
/// returns the newest buffered mu (the previous time level).
Field delayed_mu(const DelayBuffer& buffer, double t, const SolverConfig& cfg);

/// One backward-Euler step of  delta * dt(rho) - Lap(rho) + f'(rho) = g  with
/// g = mu_delayed: damped Newton with Jacobian (delta/dt) I - Lap + diag(f''),
/// step-halving until iterates stay strictly interior and the residual
/// decreases. With cfg.lambda > 0 the singular part uses its Yosida
/// approximation; with lambda == 0 a failed solve is retried once at
/// lambda = 1e-8 before giving up.
Field rho_step(const Field& rho_old, const Field& mu_delayed,
               const SolverConfig& cfg);

/// One backward-Euler step of the mu equation with the time-derivative
/// coefficient frozen at rho_old and the transport term implicit:
///   [diag(eps + rho_old + rho_new) - dt * Lap] mu_new
///       = diag(eps + 2 rho_old) mu_old.
/// The matrix is an M-matrix, so mu_new >= 0 whenever mu_old >= 0 (up to the
/// linear-solve tolerance).
Field mu_step(const Field& mu_old, const Field& rho_old, const Field& rho_new,
              const SolverConfig& cfg);

/// delayed_mu -> rho_step -> mu_step, then commits: t += dt, cumulants
/// accumulate by backward-Euler sums, and the new mu is pushed into the
/// buffer. State is untouched if a sub-step throws.
void advance(State& state, DelayBuffer& buffer, const SolverConfig& cfg);

struct Trajectory {
  std::vector<State> snapshots;

  std::size_t size() const { return snapshots.size(); }
  const State& operator[](std::size_t i) const { return snapshots[i]; }
  const State& front() const { return snapshots.front(); }
  const State& back() const { return snapshots.back(); }
  std::vector<double> times() const;
};

using StepSink = std::function<void(const State&, long step)>;

struct SimulateOptions {
  long snapshot_every = 1;  ///< trajectory storage cadence (steps)
  long sink_every = 1;      ///< sink invocation cadence (steps)
  StepSink sink;            ///< optional observer; sees step 0 and the final step
};

/// Validates the data hypotheses (mu0 >= 0 nodal-wise, rho0 strictly inside
/// (0,1), finite values); throws ValidationError otherwise.
void validate_initial_state(const State& init);

/// Runs advance until t >= t_end, storing snapshots at the configured cadence
/// (always including the initial and final states). Solver errors propagate
/// after the sink has seen the last valid state.
Trajectory simulate(const State& init, const SolverConfig& cfg, double t_end,
                    const SimulateOptions& options = {});

}  // namespace nschsim
