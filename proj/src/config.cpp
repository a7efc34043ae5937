#include "nschsim/config.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <string>

#include "nschsim/field_io.hpp"
#include "nschsim/potential.hpp"

namespace nschsim {

namespace {

using nlohmann::json;

void reject_unknown(const json& j, const std::string& section,
                    const std::set<std::string>& known) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      throw ValidationError("config: unknown key '" + section + it.key() +
                            "'");
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& value) {
  if (j.contains(key)) value = j.at(key).get<T>();
}

// Deterministic per-node uniform in [-1, 1): the raw generator output is
// mapped explicitly so results do not depend on the standard library's
// distribution implementation.
double unit_symmetric(std::mt19937_64& rng) {
  return 2.0 * ((rng() >> 11) * 0x1.0p-53) - 1.0;
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  reject_unknown(j, "",
                 {"domain", "model", "time", "solver", "init", "output"});
  if (j.contains("domain")) {
    const json& d = j.at("domain");
    reject_unknown(d, "domain.", {"dim", "cells", "lengths"});
    read(d, "dim", c.domain.dim);
    read(d, "cells", c.domain.cells);
    read(d, "lengths", c.domain.lengths);
  }
  if (j.contains("model")) {
    const json& m = j.at("model");
    reject_unknown(m, "model.", {"eps", "delta", "theta", "theta_c",
                                 "potential"});
    read(m, "eps", c.model.eps);
    read(m, "delta", c.model.delta);
    read(m, "theta", c.model.theta);
    read(m, "theta_c", c.model.theta_c);
    read(m, "potential", c.model.potential);
  }
  if (j.contains("time")) {
    const json& t = j.at("time");
    reject_unknown(t, "time.", {"dt", "tau", "t_end"});
    read(t, "dt", c.time.dt);
    read(t, "tau", c.time.tau);
    read(t, "t_end", c.time.t_end);
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    reject_unknown(s, "solver.",
                   {"lambda", "newton_tol", "newton_max_iter", "lin_tol"});
    read(s, "lambda", c.solver.lambda);
    read(s, "newton_tol", c.solver.newton_tol);
    read(s, "newton_max_iter", c.solver.newton_max_iter);
    read(s, "lin_tol", c.solver.lin_tol);
  }
  if (j.contains("init")) {
    const json& i = j.at("init");
    reject_unknown(i, "init.", {"type", "mu0", "rho0", "amplitude", "seed",
                                "mu_file", "rho_file"});
    read(i, "type", c.init.type);
    read(i, "mu0", c.init.mu0);
    read(i, "rho0", c.init.rho0);
    read(i, "amplitude", c.init.amplitude);
    read(i, "seed", c.init.seed);
    read(i, "mu_file", c.init.mu_file);
    read(i, "rho_file", c.init.rho_file);
  }
  if (j.contains("output")) {
    const json& o = j.at("output");
    reject_unknown(o, "output.",
                   {"dir", "snapshot_every", "diagnostics_every"});
    read(o, "dir", c.output.dir);
    read(o, "snapshot_every", c.output.snapshot_every);
    read(o, "diagnostics_every", c.output.diagnostics_every);
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("config: cannot open " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ValidationError("config: JSON parse error in " + path + ": " +
                          e.what());
  }
  return from_json(j);
}

json RunConfig::to_json() const {
  json j;
  j["domain"] = {{"dim", domain.dim},
                 {"cells", domain.cells},
                 {"lengths", domain.lengths}};
  j["model"] = {{"eps", model.eps},
                {"delta", model.delta},
                {"theta", model.theta},
                {"theta_c", model.theta_c},
                {"potential", model.potential}};
  j["time"] = {{"dt", time.dt}, {"tau", time.tau}, {"t_end", time.t_end}};
  j["solver"] = {{"lambda", solver.lambda},
                 {"newton_tol", solver.newton_tol},
                 {"newton_max_iter", solver.newton_max_iter},
                 {"lin_tol", solver.lin_tol}};
  j["init"] = {{"type", init.type},           {"mu0", init.mu0},
               {"rho0", init.rho0},           {"amplitude", init.amplitude},
               {"seed", init.seed},           {"mu_file", init.mu_file},
               {"rho_file", init.rho_file}};
  j["output"] = {{"dir", output.dir},
                 {"snapshot_every", output.snapshot_every},
                 {"diagnostics_every", output.diagnostics_every}};
  return j;
}

void RunConfig::validate() const {
  make_grid();  // grid constructor enforces the domain constraints
  if (domain.dim != static_cast<int>(domain.cells.size())) {
    throw ValidationError("config: domain.cells must list one entry per axis");
  }
  if (model.potential != "log") {
    throw ValidationError("config: model.potential must be \"log\" (only "
                          "built-in family)");
  }
  make_solver_config().validate();
  validate_potential(make_solver_config().potential);
  if (time.t_end < 0.0 || !std::isfinite(time.t_end)) {
    throw ValidationError("config: time.t_end must be nonnegative");
  }
  if (init.type != "constant" && init.type != "cosine" &&
      init.type != "random" && init.type != "file") {
    throw ValidationError("config: init.type must be one of constant, cosine, "
                          "random, file");
  }
  if (init.type == "file" && (init.mu_file.empty() || init.rho_file.empty())) {
    throw ValidationError(
        "config: init.type=file requires init.mu_file and init.rho_file");
  }
  if (output.snapshot_every < 1 || output.diagnostics_every < 1) {
    throw ValidationError("config: output cadences must be >= 1");
  }
  if (output.dir.empty()) {
    throw ValidationError("config: output.dir must be nonempty");
  }
}

Grid RunConfig::make_grid() const {
  return Grid(domain.cells, domain.lengths);
}

SolverConfig RunConfig::make_solver_config() const {
  SolverConfig cfg;
  cfg.eps = model.eps;
  cfg.delta = model.delta;
  cfg.tau = time.tau;
  cfg.dt = time.dt;
  cfg.lambda = solver.lambda;
  cfg.newton_tol = solver.newton_tol;
  cfg.newton_max_iter = solver.newton_max_iter;
  cfg.lin_tol = solver.lin_tol;
  cfg.potential.theta = model.theta;
  cfg.potential.theta_c = model.theta_c;
  return cfg;
}

std::pair<Field, Field> RunConfig::make_initial_fields() const {
  const Grid grid = make_grid();
  if (init.type == "constant") {
    return {Field(grid, init.mu0), Field(grid, init.rho0)};
  }
  if (init.type == "cosine") {
    Field mu(grid, 0.0), rho(grid, 0.0);
    for (std::size_t idx = 0; idx < grid.total_nodes(); ++idx) {
      double mode = 1.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const double x = grid.node_coord(a, grid.axis_index(a, idx));
        mode *= std::cos(M_PI * x / grid.length(a));
      }
      mu[idx] = init.mu0 + init.amplitude * mode;
      rho[idx] = init.rho0 + init.amplitude * mode;
    }
    return {mu, rho};
  }
  if (init.type == "random") {
    Field mu(grid, init.mu0);
    Field rho(grid, 0.0);
    std::mt19937_64 rng(init.seed);
    for (std::size_t idx = 0; idx < grid.total_nodes(); ++idx) {
      rho[idx] = init.rho0 + init.amplitude * unit_symmetric(rng);
    }
    return {mu, rho};
  }
  // file
  FieldSnapshot mu_snap = read_field(init.mu_file);
  FieldSnapshot rho_snap = read_field(init.rho_file);
  if (!(mu_snap.field.grid() == grid) || !(rho_snap.field.grid() == grid)) {
    throw ValidationError(
        "config: init files do not match the configured domain");
  }
  return {std::move(mu_snap.field), std::move(rho_snap.field)};
}

}  // namespace nschsim
