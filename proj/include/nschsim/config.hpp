#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nschsim/grid.hpp"
#include "nschsim/stepper.hpp"

namespace nschsim {

/// Full run configuration: the union of all module config keys with defaults.
/// Unknown keys are rejected at parse time.
struct RunConfig {
  struct Domain {
    int dim = 1;
    std::vector<int> cells = {128};
    std::vector<double> lengths = {1.0};
  } domain;

  struct Model {
    double eps = 1.0;
    double delta = 1.0;
    double theta = 1.0;
    double theta_c = 3.0;
    std::string potential = "log";  // only built-in family
  } model;

  struct Time {
    double dt = 1e-3;
    double tau = 0.0;
    double t_end = 1.0;
  } time;

  struct Solver {
    double lambda = 0.0;
    double newton_tol = 1e-10;
    int newton_max_iter = 50;
    double lin_tol = 1e-10;
  } solver;

  struct Init {
    std::string type = "constant";  // constant | cosine | random | file
    double mu0 = 1.0;
    double rho0 = 0.5;
    double amplitude = 0.1;
    std::uint64_t seed = 1;
    std::string mu_file;
    std::string rho_file;
  } init;

  struct Output {
    std::string dir = "out";
    int snapshot_every = 100;
    int diagnostics_every = 1;
  } output;

  static RunConfig from_json(const nlohmann::json& j);
  static RunConfig load(const std::string& path);
  nlohmann::json to_json() const;

  /// Revalidates every numeric constraint of the underlying modules.
  void validate() const;

  Grid make_grid() const;
  SolverConfig make_solver_config() const;
  /// Builds (mu0, rho0) per init.type. File-based fields must match the
  /// configured grid.
  std::pair<Field, Field> make_initial_fields() const;
};

}  // namespace nschsim
