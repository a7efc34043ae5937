#pragma once

#include <string>

#include "nschsim/grid.hpp"

namespace nschsim {

struct FieldSnapshot {
  Field field;
  double t = 0.0;
  std::string name;  // "mu" or "rho"
};

/// Snapshot format: one header line
///   # nschsim-field v1 dim=<d> cells=<...> lengths=<...> t=<t> name=<mu|rho>
/// followed by the nodal values in row-major order, one per line, printed
/// with 17 significant digits (lossless double round-trip).
void write_field(const std::string& path, const Field& field, double t,
                 const std::string& name);

FieldSnapshot read_field(const std::string& path);

/// %.17g rendering used by snapshots and CSV output.
std::string format_double(double v);

}  // namespace nschsim
