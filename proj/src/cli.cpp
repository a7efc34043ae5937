#include "nschsim/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "nschsim/config.hpp"
#include "nschsim/field_io.hpp"
#include "nschsim/invariants.hpp"
#include "nschsim/oracle.hpp"
#include "nschsim/steady.hpp"

namespace nschsim {

namespace {

namespace fs = std::filesystem;

constexpr const char* kDiagnosticsHeader =
    "step,t,min_mu,max_mu,min_rho,max_rho,weighted_mu_energy,cum_grad_mu,"
    "conservation_drift,lyapunov_residual,dtrho_l2,grad_mu_l2,mu_oscillation";
constexpr const char* kDeGiorgiHeader = "j,k_j,S_j,triple_norm_j";
constexpr const char* kOracleHeader = "t,mu,rho,invariant";
constexpr const char* kSweepHeader =
    "axis,value,status,terminal_t,min_mu,max_mu,min_rho,max_rho,"
    "weighted_mu_energy,conservation_drift,lyapunov_residual,dtrho_l2,"
    "grad_mu_l2,mu_oscillation,laplacian_eigen_err,diff_prev,ratio_prev";
constexpr const char* kOmegaProbeHeader =
    "window_begin,window_end,window_snapshots,sup_dtrho_l2,sup_grad_mu_l2,"
    "sup_mu_oscillation,mu_s,steady_residual,converged";

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot open output file: " + path.string());
  }
  return out;
}

void echo_config(const RunConfig& cfg, const fs::path& dir) {
  std::ofstream out = open_output(dir / "config.json");
  out << cfg.to_json().dump(2) << "\n";
}

void write_diagnostics_row(std::ostream& out, const DiagnosticsRecord& r) {
  out << r.step << ',' << format_double(r.t) << ','
      << format_double(r.min_mu) << ',' << format_double(r.max_mu) << ','
      << format_double(r.min_rho) << ',' << format_double(r.max_rho) << ','
      << format_double(r.weighted_mu_energy) << ','
      << format_double(r.cum_grad_mu) << ','
      << format_double(r.conservation_drift) << ','
      << format_double(r.lyapunov_residual) << ','
      << format_double(r.dtrho_l2) << ',' << format_double(r.grad_mu_l2) << ','
      << format_double(r.mu_oscillation) << "\n";
}

void write_degiorgi_csv(const fs::path& dir, const DeGiorgiReport* rep) {
  std::ofstream out = open_output(dir / "degiorgi.csv");
  out << kDeGiorgiHeader << "\n";
  if (!rep) return;
  for (std::size_t j = 0; j < rep->k_levels.size(); ++j) {
    out << j << ',' << format_double(rep->k_levels[j]) << ','
        << format_double(rep->S_levels[j]) << ','
        << format_double(rep->triple_norms[j]) << "\n";
  }
}

void write_omega_probe(const fs::path& dir, const OmegaProbeReport& rep) {
  std::ofstream out = open_output(dir / "omega_probe.csv");
  out << kOmegaProbeHeader << "\n";
  out << format_double(rep.window_begin) << ','
      << format_double(rep.window_end) << ',' << rep.window_snapshots << ','
      << format_double(rep.sup_dtrho_l2) << ','
      << format_double(rep.sup_grad_mu_l2) << ','
      << format_double(rep.sup_mu_oscillation) << ','
      << format_double(rep.mu_s) << ','
      << format_double(rep.steady_residual) << ','
      << (rep.converged ? 1 : 0) << "\n";
}

State make_state(Field mu, Field rho) {
  State s;
  s.mu = std::move(mu);
  s.rho = std::move(rho);
  return s;
}

void write_snapshot_pair(const fs::path& dir, const std::string& tag,
                         const State& s) {
  write_field((dir / ("mu_" + tag + ".field")).string(), s.mu, s.t, "mu");
  write_field((dir / ("rho_" + tag + ".field")).string(), s.rho, s.t, "rho");
}

std::string step_tag(long step) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%08ld", step);
  return buf;
}

// Streams per-step diagnostics rows; remembers the last state it saw so a
// failed run can still persist it.
struct DiagnosticsStream {
  std::ofstream out;
  const SolverConfig* cfg = nullptr;
  State initial;
  State prev;
  long last_step = -1;

  void open(const fs::path& dir, const State& init, const SolverConfig& c) {
    out = open_output(dir / "diagnostics.csv");
    out << kDiagnosticsHeader << "\n";
    cfg = &c;
    initial = init;
    prev = init;
  }
  void operator()(const State& s, long step) {
    if (step == last_step) return;
    const State& p = (step == 0) ? s : prev;
    write_diagnostics_row(out, make_diagnostics_record(initial, p, s, step, *cfg));
    prev = s;
    last_step = step;
  }
};

double parse_thread_cap() {
  const char* env = std::getenv("NSCHSIM_THREADS");
  if (!env || !*env) return 0;
  return std::strtod(env, nullptr);
}

unsigned sweep_parallelism(std::size_t runs) {
  const double cap = parse_thread_cap();
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned n = cap > 0 ? static_cast<unsigned>(cap) : hw;
  return std::max(1u, std::min<unsigned>(n, static_cast<unsigned>(runs)));
}

double laplacian_eigen_error(const Grid& grid) {
  Field u(grid, 0.0);
  double lambda_exact = 0.0;
  for (int a = 0; a < grid.dim(); ++a) {
    lambda_exact -= M_PI * M_PI / (grid.length(a) * grid.length(a));
  }
  for (std::size_t idx = 0; idx < grid.total_nodes(); ++idx) {
    double m = 1.0;
    for (int a = 0; a < grid.dim(); ++a) {
      m *= std::cos(M_PI * grid.node_coord(a, grid.axis_index(a, idx)) /
                    grid.length(a));
    }
    u[idx] = m;
  }
  Field lap = laplacian_neumann(u);
  double err = 0.0;
  for (std::size_t i = 0; i < lap.size(); ++i) {
    err = std::max(err, std::fabs(lap[i] - lambda_exact * u[i]));
  }
  return err;
}

struct CheckList {
  bool all_ok = true;
  void check(const std::string& name, bool ok, const std::string& detail) {
    std::cerr << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << detail
              << ")\n";
    all_ok = all_ok && ok;
  }
};

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const RunConfig& cfg, double probe_window) {
  const fs::path dir = cfg.output.dir;
  fs::create_directories(dir);
  echo_config(cfg, dir);

  auto [mu0, rho0] = cfg.make_initial_fields();
  const SolverConfig scfg = cfg.make_solver_config();
  const State init = make_state(std::move(mu0), std::move(rho0));
  validate_initial_state(init);

  DiagnosticsStream diag;
  diag.open(dir, init, scfg);

  SimulateOptions opt;
  opt.snapshot_every = cfg.output.snapshot_every;
  opt.sink_every = cfg.output.diagnostics_every;
  opt.sink = std::ref(diag);

  Trajectory traj;
  try {
    traj = simulate(init, scfg, cfg.time.t_end, opt);
  } catch (const SolverError& e) {
    write_snapshot_pair(dir, "final", diag.prev);
    std::cerr << "[nschsim] solver failure: " << e.what()
              << "; last valid state (t = " << diag.prev.t
              << ") persisted\n";
    return 2;
  }

  for (std::size_t i = 0; i < traj.size(); ++i) {
    const long approx_step =
        static_cast<long>(std::llround(traj[i].t / scfg.dt));
    write_snapshot_pair(dir, step_tag(approx_step), traj[i]);
  }
  write_snapshot_pair(dir, "final", traj.back());

  if (probe_window > 0.0) {
    const OmegaProbeReport rep = omega_limit_probe(traj, probe_window, scfg);
    write_omega_probe(dir, rep);
    std::cerr << "[nschsim] omega probe over [" << rep.window_begin << ", "
              << rep.window_end << "]: sup|dtrho| = " << rep.sup_dtrho_l2
              << ", sup|grad mu| = " << rep.sup_grad_mu_l2
              << ", mu oscillation = " << rep.sup_mu_oscillation
              << ", steady residual = " << rep.steady_residual
              << ", converged = " << (rep.converged ? "yes" : "no") << "\n";
  }
  std::cerr << "[nschsim] simulate finished at t = " << traj.back().t << " ("
            << traj.size() << " stored snapshots) -> " << dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// steady

int cmd_steady(const RunConfig& cfg, double mu_s, const std::string& init_mode,
               const std::string& init_file, double tol, int max_iter) {
  const fs::path dir = cfg.output.dir;
  fs::create_directories(dir);
  echo_config(cfg, dir);

  const Grid grid = cfg.make_grid();
  Field rho_init(grid, cfg.init.rho0);
  if (init_mode == "file") {
    if (init_file.empty()) {
      throw ValidationError("steady: --init file requires --init-file");
    }
    FieldSnapshot snap = read_field(init_file);
    if (!(snap.field.grid() == grid)) {
      throw ValidationError("steady: --init-file grid does not match domain");
    }
    rho_init = std::move(snap.field);
  } else if (init_mode != "const") {
    throw ValidationError("steady: --init must be 'const' or 'file'");
  }

  const SolverConfig scfg = cfg.make_solver_config();
  const SteadyState ss =
      solve_steady(scfg.potential, mu_s, rho_init, tol, max_iter);
  write_field((dir / "rho_s.field").string(), ss.rho_s, 0.0, "rho");
  std::cout << "mu_s=" << format_double(ss.mu_s)
            << " residual=" << format_double(ss.residual_norm)
            << " min_rho=" << format_double(ss.rho_s.min())
            << " max_rho=" << format_double(ss.rho_s.max()) << "\n";
  std::cerr << "[nschsim] steady state written to "
            << (dir / "rho_s.field").string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify_stationary(const RunConfig& cfg) {
  const fs::path dir = cfg.output.dir;
  const SolverConfig scfg = cfg.make_solver_config();
  const double mu_s = cfg.init.mu0;
  if (mu_s < 0.0) {
    throw ValidationError(
        "verify: stationary case needs init.mu0 >= 0 (it becomes mu_s)");
  }
  auto [mu_unused, rho_init] = cfg.make_initial_fields();
  (void)mu_unused;
  const SteadyState ss = solve_steady(scfg.potential, mu_s, rho_init,
                                      scfg.newton_tol, scfg.newton_max_iter);
  const State init = make_state(Field(rho_init.grid(), mu_s), ss.rho_s);

  DiagnosticsStream diag;
  diag.open(dir, init, scfg);
  SimulateOptions opt;
  opt.snapshot_every = cfg.output.snapshot_every;
  opt.sink_every = cfg.output.diagnostics_every;
  opt.sink = std::ref(diag);
  const Trajectory traj = simulate(init, scfg, cfg.time.t_end, opt);

  double state_change = 0.0;
  double max_drift = 0.0;
  double max_lyap = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const State& s = traj[i];
    for (std::size_t k = 0; k < s.mu.size(); ++k) {
      state_change = std::max(state_change, std::fabs(s.mu[k] - init.mu[k]));
      state_change = std::max(state_change, std::fabs(s.rho[k] - init.rho[k]));
    }
    max_lyap = std::max(max_lyap, lyapunov_identity_residual(traj, scfg, i));
  }
  max_drift = first_estimate_drift(traj, scfg);

  if (mu_s > 0.0) {
    const DeGiorgiReport rep = degiorgi_diagnostic(traj, 2.0, 60);
    write_degiorgi_csv(dir, &rep);
  } else {
    write_degiorgi_csv(dir, nullptr);
    std::cerr << "[nschsim] degiorgi diagnostic skipped: sup |mu0| == 0\n";
  }

  CheckList checks;
  checks.check("stationary: state fixed",
               state_change <= 1e-8,
               "sup change " + format_double(state_change) + " <= 1e-8");
  checks.check("stationary: conservation drift",
               max_drift <= 1e-8,
               "drift " + format_double(max_drift) + " <= 1e-8");
  checks.check("stationary: energy identity residual",
               max_lyap <= 1e-8,
               "residual " + format_double(max_lyap) + " <= 1e-8");
  return checks.all_ok ? 0 : 3;
}

int cmd_verify_homogeneous(const RunConfig& cfg, double tol) {
  const fs::path dir = cfg.output.dir;
  if (cfg.init.type != "constant") {
    throw ValidationError(
        "verify: homogeneous case requires init.type = constant");
  }
  const SolverConfig scfg = cfg.make_solver_config();
  auto [mu0, rho0] = cfg.make_initial_fields();
  const State init = make_state(std::move(mu0), std::move(rho0));

  DiagnosticsStream diag;
  diag.open(dir, init, scfg);
  SimulateOptions opt;
  opt.snapshot_every = cfg.output.snapshot_every;
  opt.sink_every = cfg.output.diagnostics_every;
  opt.sink = std::ref(diag);
  const Trajectory traj = simulate(init, scfg, cfg.time.t_end, opt);

  const HomogeneousTrajectory oracle = homogeneous_oracle(
      cfg.init.rho0, cfg.init.mu0, scfg, cfg.time.t_end, 1e-10, traj.times());

  double err_mu = 0.0, err_rho = 0.0, inv_drift = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    for (std::size_t k = 0; k < traj[i].mu.size(); ++k) {
      err_mu = std::max(err_mu,
                        std::fabs(traj[i].mu[k] - oracle.mu_values[i]));
      err_rho = std::max(err_rho,
                         std::fabs(traj[i].rho[k] - oracle.rho_values[i]));
    }
    inv_drift = std::max(inv_drift, std::fabs(oracle.invariant_values[i] -
                                              oracle.invariant_values[0]));
  }

  {
    std::ofstream out = open_output(dir / "oracle.csv");
    out << kOracleHeader << "\n";
    for (std::size_t i = 0; i < oracle.times.size(); ++i) {
      out << format_double(oracle.times[i]) << ','
          << format_double(oracle.mu_values[i]) << ','
          << format_double(oracle.rho_values[i]) << ','
          << format_double(oracle.invariant_values[i]) << "\n";
    }
  }
  if (cfg.init.mu0 > 0.0) {
    const DeGiorgiReport rep = degiorgi_diagnostic(traj, 2.0, 60);
    write_degiorgi_csv(dir, &rep);
  } else {
    write_degiorgi_csv(dir, nullptr);
  }

  CheckList checks;
  checks.check("homogeneous: mu matches oracle", err_mu <= tol,
               "sup error " + format_double(err_mu) + " <= " +
                   format_double(tol));
  checks.check("homogeneous: rho matches oracle", err_rho <= tol,
               "sup error " + format_double(err_rho) + " <= " +
                   format_double(tol));
  checks.check("homogeneous: oracle invariant constant", inv_drift <= 1e-8,
               "drift " + format_double(inv_drift) + " <= 1e-8");
  return checks.all_ok ? 0 : 3;
}

int cmd_verify(const RunConfig& cfg, const std::string& which, double tol) {
  const fs::path dir = cfg.output.dir;
  fs::create_directories(dir);
  echo_config(cfg, dir);
  if (which == "stationary") return cmd_verify_stationary(cfg);
  if (which == "homogeneous") return cmd_verify_homogeneous(cfg, tol);
  throw ValidationError("verify: unknown case '" + which +
                        "' (expected stationary or homogeneous)");
}

// ---------------------------------------------------------------------------
// sweep

struct SweepRow {
  double value = 0.0;
  std::string status = "ok";  // bare category, keeps the CSV comma-free
  std::string message;
  int error_code = 0;  // 1 validation, 2 solver
  Trajectory traj;
  DiagnosticsRecord terminal;
  double eigen_err = 0.0;
};

RunConfig apply_axis(RunConfig cfg, const std::string& axis, double value) {
  if (axis == "time.dt") {
    cfg.time.dt = value;
  } else if (axis == "time.tau") {
    cfg.time.tau = value;
  } else if (axis == "solver.lambda") {
    cfg.solver.lambda = value;
  } else if (axis == "domain.cells") {
    const int n = static_cast<int>(std::llround(value));
    for (int& c : cfg.domain.cells) c = n;
  } else {
    throw ValidationError("sweep: axis must be one of time.dt, time.tau, "
                          "solver.lambda, domain.cells");
  }
  return cfg;
}

SweepRow run_sweep_case(const RunConfig& base, const std::string& axis,
                        double value) {
  SweepRow row;
  row.value = value;
  try {
    const RunConfig cfg = apply_axis(base, axis, value);
    cfg.validate();
    const SolverConfig scfg = cfg.make_solver_config();
    auto [mu0, rho0] = cfg.make_initial_fields();
    const State init = make_state(std::move(mu0), std::move(rho0));
    SimulateOptions opt;
    opt.snapshot_every = cfg.output.snapshot_every;
    row.traj = simulate(init, scfg, cfg.time.t_end, opt);
    const State& last = row.traj.back();
    const State& prev =
        row.traj.size() > 1 ? row.traj[row.traj.size() - 2] : last;
    row.terminal = make_diagnostics_record(row.traj.front(), prev, last,
                                           std::llround(last.t / scfg.dt),
                                           scfg);
    row.eigen_err = laplacian_eigen_error(cfg.make_grid());
  } catch (const ValidationError& e) {
    row.status = std::string("validation_error: ") + e.what();
    row.error_code = 1;
  } catch (const SolverError& e) {
    row.status = std::string("solver_error: ") + e.what();
    row.error_code = 2;
  }
  return row;
}

int cmd_sweep(const RunConfig& cfg, const std::string& axis,
              const std::vector<double>& values) {
  if (values.empty()) {
    throw ValidationError("sweep: at least one --values entry required");
  }
  const fs::path dir = cfg.output.dir;
  fs::create_directories(dir);
  echo_config(cfg, dir);

  std::vector<SweepRow> rows(values.size());
  const unsigned workers = sweep_parallelism(values.size());
  std::size_t next = 0;
  while (next < values.size()) {
    const std::size_t batch = std::min<std::size_t>(workers,
                                                    values.size() - next);
    std::vector<std::future<SweepRow>> futs;
    for (std::size_t k = 0; k < batch; ++k) {
      futs.push_back(std::async(std::launch::async, run_sweep_case,
                                std::cref(cfg), axis, values[next + k]));
    }
    for (std::size_t k = 0; k < batch; ++k) {
      rows[next + k] = futs[k].get();
    }
    next += batch;
  }

  std::ofstream out = open_output(dir / "sweep.csv");
  out << kSweepHeader << "\n";
  std::cout << kSweepHeader << "\n";
  std::optional<double> prev_diff;
  int exit_code = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    exit_code = std::max(exit_code, r.error_code);
    std::string diff_prev, ratio_prev;
    if (r.error_code == 0 && i > 0 && rows[i - 1].error_code == 0) {
      const State& a = rows[i - 1].traj.back();
      const State& b = r.traj.back();
      if (a.mu.grid() == b.mu.grid()) {
        double d = 0.0;
        for (std::size_t k = 0; k < a.mu.size(); ++k) {
          d = std::max(d, std::fabs(a.mu[k] - b.mu[k]));
          d = std::max(d, std::fabs(a.rho[k] - b.rho[k]));
        }
        diff_prev = format_double(d);
        if (prev_diff && d > 0.0) {
          ratio_prev = format_double(*prev_diff / d);
        }
        prev_diff = d;
      } else {
        prev_diff.reset();
      }
    } else {
      prev_diff.reset();
    }
    const DiagnosticsRecord& t = r.terminal;
    std::string line =
        axis + ',' + format_double(r.value) + ',' +
        (r.error_code == 0 ? "ok" : r.status) + ',' + format_double(t.t) +
        ',' + format_double(t.min_mu) + ',' + format_double(t.max_mu) + ',' +
        format_double(t.min_rho) + ',' + format_double(t.max_rho) + ',' +
        format_double(t.weighted_mu_energy) + ',' +
        format_double(t.conservation_drift) + ',' +
        format_double(t.lyapunov_residual) + ',' +
        format_double(t.dtrho_l2) + ',' + format_double(t.grad_mu_l2) + ',' +
        format_double(t.mu_oscillation) + ',' + format_double(r.eigen_err) +
        ',' + diff_prev + ',' + ratio_prev;
    out << line << "\n";
    std::cout << line << "\n";
  }
  if (exit_code != 0) {
    std::cerr << "[nschsim] sweep finished with failed runs\n";
  }
  return exit_code;
}

// ---------------------------------------------------------------------------
// degiorgi

int cmd_degiorgi(const RunConfig& cfg, double m, int j_max) {
  const fs::path dir = cfg.output.dir;
  fs::create_directories(dir);
  echo_config(cfg, dir);

  const SolverConfig scfg = cfg.make_solver_config();
  auto [mu0, rho0] = cfg.make_initial_fields();
  const State init = make_state(std::move(mu0), std::move(rho0));
  SimulateOptions opt;
  opt.snapshot_every = cfg.output.snapshot_every;
  const Trajectory traj = simulate(init, scfg, cfg.time.t_end, opt);

  const DeGiorgiReport rep = degiorgi_diagnostic(traj, m, j_max);
  write_degiorgi_csv(dir, &rep);
  std::cerr << "[nschsim] degiorgi: M = " << rep.M
            << ", sup mu = " << rep.sup_mu_observed << " (2M = " << 2 * rep.M
            << ", within: " << (rep.sup_within_two_m ? "yes" : "no")
            << "), S_j reaches 0 at j = " << rep.first_zero_j << "\n";
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"nschsim: simulator and verification harness for a coupled "
               "chemical-potential / order-parameter system"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_override;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "JSON config file");
    sub->add_option("-o,--output", output_override,
                    "override output.dir from the config");
  };

  CLI::App* sim = app.add_subcommand("simulate", "run the time integrator");
  double probe_window = 0.0;
  add_common(sim);
  sim->add_option("--probe-window", probe_window,
                  "append an omega-limit probe over the trailing window");

  CLI::App* steady = app.add_subcommand("steady", "solve the steady problem");
  double mu_s = 0.0;
  std::string steady_init = "const";
  std::string steady_init_file;
  double steady_tol = 1e-10;
  int steady_max_iter = 50;
  add_common(steady);
  steady->add_option("--mu-s", mu_s, "constant chemical potential (>= 0)");
  steady->add_option("--init", steady_init, "initial guess: const|file");
  steady->add_option("--init-file", steady_init_file,
                     "field file for --init file");
  steady->add_option("--tol", steady_tol, "residual sup-norm tolerance");
  steady->add_option("--max-iter", steady_max_iter, "Newton iteration cap");

  CLI::App* verify = app.add_subcommand("verify", "run a verification case");
  std::string verify_case;
  double verify_tol = 1e-3;
  add_common(verify);
  verify->add_option("--case", verify_case, "stationary|homogeneous")
      ->required();
  verify->add_option("--tol", verify_tol,
                     "sup-error tolerance of the homogeneous comparison");

  CLI::App* sweep = app.add_subcommand("sweep", "run one simulation per value");
  std::string sweep_axis;
  std::vector<double> sweep_values;
  add_common(sweep);
  sweep->add_option("--axis", sweep_axis,
                    "time.dt|time.tau|solver.lambda|domain.cells")
      ->required();
  sweep->add_option("--values", sweep_values, "comma-separated values")
      ->required()
      ->delimiter(',');

  CLI::App* degiorgi =
      app.add_subcommand("degiorgi", "level-set boundedness diagnostic");
  double dg_m = 2.0;
  int dg_jmax = 60;
  add_common(degiorgi);
  degiorgi->add_option("--m", dg_m, "level multiplier (> 1)");
  degiorgi->add_option("--jmax", dg_jmax, "last level index");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = RunConfig::load(config_path);
    }
    if (!output_override.empty()) {
      cfg.output.dir = output_override;
    }
    cfg.validate();

    if (sim->parsed()) return cmd_simulate(cfg, probe_window);
    if (steady->parsed()) {
      return cmd_steady(cfg, mu_s, steady_init, steady_init_file, steady_tol,
                        steady_max_iter);
    }
    if (verify->parsed()) return cmd_verify(cfg, verify_case, verify_tol);
    if (sweep->parsed()) return cmd_sweep(cfg, sweep_axis, sweep_values);
    if (degiorgi->parsed()) return cmd_degiorgi(cfg, dg_m, dg_jmax);
    return 1;
  } catch (const ValidationError& e) {
    std::cerr << "[nschsim] validation error: " << e.what() << "\n";
    return 1;
  } catch (const SolverError& e) {
    std::cerr << "[nschsim] solver failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "[nschsim] error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace nschsim
