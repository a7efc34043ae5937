#include "nschsim/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace nschsim {

Grid::Grid(std::vector<int> cells, std::vector<double> lengths)
    : cells_(std::move(cells)), lengths_(std::move(lengths)) {
  const int d = static_cast<int>(cells_.size());
  if (d < 1 || d > 2) {
    throw ValidationError("grid: dim must be 1 or 2, got " +
                          std::to_string(d));
  }
  if (lengths_.size() != cells_.size()) {
    throw ValidationError("grid: cells and lengths must have matching sizes");
  }
  nodes_.resize(d);
  h_.resize(d);
  for (int a = 0; a < d; ++a) {
    if (cells_[a] < 1) {
      throw ValidationError("grid: cells per axis must be >= 1");
    }
    if (!(lengths_[a] > 0.0) || !std::isfinite(lengths_[a])) {
      throw ValidationError("grid: lengths must be positive and finite");
    }
    nodes_[a] = cells_[a] + 1;
    h_[a] = lengths_[a] / cells_[a];
  }
  stride_.assign(d, 1);
  for (int a = d - 2; a >= 0; --a) {
    stride_[a] = stride_[a + 1] * static_cast<std::size_t>(nodes_[a + 1]);
  }
  total_ = stride_[0] * static_cast<std::size_t>(nodes_[0]);
}

double Grid::measure() const {
  double m = 1.0;
  for (double L : lengths_) m *= L;
  return m;
}

double Grid::quad_weight(std::size_t flat) const {
  double w = 1.0;
  for (int a = 0; a < dim(); ++a) {
    w *= axis_weight(a, axis_index(a, flat));
  }
  return w;
}

Field::Field(Grid grid, double fill)
    : grid_(std::move(grid)), values_(grid_.total_nodes(), fill) {}

Field::Field(Grid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.total_nodes()) {
    throw ValidationError("field: value count does not match grid node count");
  }
}

double Field::min() const {
  return *std::min_element(values_.begin(), values_.end());
}

double Field::max() const {
  return *std::max_element(values_.begin(), values_.end());
}

void require_same_grid(const Field& a, const Field& b, const char* what) {
  if (!(a.grid() == b.grid())) {
    throw ValidationError(std::string(what) + ": fields live on different grids");
  }
}

Field laplacian_neumann(const Field& u) {
  const Grid& g = u.grid();
  Field out(g, 0.0);
  const std::size_t n = g.total_nodes();
  for (int a = 0; a < g.dim(); ++a) {
    const std::size_t s = g.stride(a);
    const int na = g.nodes(a);
    const double inv_h2 = 1.0 / (g.spacing(a) * g.spacing(a));
    for (std::size_t idx = 0; idx < n; ++idx) {
      const int ia = g.axis_index(a, idx);
      // Mirrored ghost: the out-of-range neighbor takes the value of the
      // first interior node on the opposite side.
      const double left = (ia == 0) ? u[idx + s] : u[idx - s];
      const double right = (ia == na - 1) ? u[idx - s] : u[idx + s];
      out[idx] += (left - 2.0 * u[idx] + right) * inv_h2;
    }
  }
  return out;
}

double integrate(const Field& u) {
  const Grid& g = u.grid();
  double sum = 0.0;
  for (std::size_t idx = 0; idx < g.total_nodes(); ++idx) {
    sum += g.quad_weight(idx) * u[idx];
  }
  return sum;
}

double gradient_form(const Field& u, const Field& v) {
  require_same_grid(u, v, "gradient_form");
  const Grid& g = u.grid();
  const std::size_t n = g.total_nodes();
  double sum = 0.0;
  for (int a = 0; a < g.dim(); ++a) {
    const std::size_t s = g.stride(a);
    const int na = g.nodes(a);
    const double h = g.spacing(a);
    for (std::size_t idx = 0; idx < n; ++idx) {
      const int ia = g.axis_index(a, idx);
      if (ia == na - 1) continue;
      // Transverse trapezoidal measure of the edge (idx, idx + s).
      const double tw = g.quad_weight(idx) / g.axis_weight(a, ia);
      sum += (u[idx + s] - u[idx]) * (v[idx + s] - v[idx]) * tw / h;
    }
  }
  return sum;
}

double grad_sq_integral(const Field& u) { return gradient_form(u, u); }

double lq_norm(const Field& u, double q) {
  if (q > 1e12 || std::isinf(q)) {
    double m = 0.0;
    for (double v : u.values()) m = std::max(m, std::fabs(v));
    return m;
  }
  if (!(q >= 1.0)) {
    throw ValidationError("lq_norm: q must be >= 1 or infinity");
  }
  const Grid& g = u.grid();
  double sum = 0.0;
  for (std::size_t idx = 0; idx < g.total_nodes(); ++idx) {
    sum += g.quad_weight(idx) * std::pow(std::fabs(u[idx]), q);
  }
  return std::pow(sum, 1.0 / q);
}

double l2_norm(const Field& u) {
  const Grid& g = u.grid();
  double sum = 0.0;
  for (std::size_t idx = 0; idx < g.total_nodes(); ++idx) {
    sum += g.quad_weight(idx) * u[idx] * u[idx];
  }
  return std::sqrt(sum);
}

}  // namespace nschsim
