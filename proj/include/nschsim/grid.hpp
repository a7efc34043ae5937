#pragma once

#include <cstddef>
#include <vector>

#include "nschsim/errors.hpp"

namespace nschsim {

/// Uniform tensor-product mesh on a rectangle, nodes at cell corners.
/// Axis 0 is the slowest-varying index of nodal data (row-major layout).
/// Only dim 1 and 2 are accepted, but nothing in the layout hard-codes that.
class Grid {
 public:
  Grid() = default;
  Grid(std::vector<int> cells, std::vector<double> lengths);

  int dim() const { return static_cast<int>(cells_.size()); }
  int cells(int axis) const { return cells_[axis]; }
  int nodes(int axis) const { return nodes_[axis]; }
  double length(int axis) const { return lengths_[axis]; }
  double spacing(int axis) const { return h_[axis]; }
  std::size_t stride(int axis) const { return stride_[axis]; }
  std::size_t total_nodes() const { return total_; }
  double measure() const;

  double node_coord(int axis, int i) const { return h_[axis] * i; }
  /// Trapezoidal weight along one axis: h, halved at the two end nodes.
  double axis_weight(int axis, int i) const {
    return (i == 0 || i == nodes_[axis] - 1) ? 0.5 * h_[axis] : h_[axis];
  }
  /// Product trapezoidal weight of a node (flat row-major index).
  double quad_weight(std::size_t flat) const;
  /// Index of the node along `axis` for a flat index.
  int axis_index(int axis, std::size_t flat) const {
    return static_cast<int>((flat / stride_[axis]) % nodes_[axis]);
  }

  bool operator==(const Grid& other) const {
    return cells_ == other.cells_ && lengths_ == other.lengths_;
  }

 private:
  std::vector<int> cells_;
  std::vector<double> lengths_;
  std::vector<int> nodes_;
  std::vector<double> h_;
  std::vector<std::size_t> stride_;
  std::size_t total_ = 0;
};

/// Nodal scalar field on a Grid. Plain value type.
class Field {
 public:
  Field() = default;
  explicit Field(Grid grid, double fill = 0.0);
  Field(Grid grid, std::vector<double> values);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double min() const;
  double max() const;

 private:
  Grid grid_;
  std::vector<double> values_;
};

/// Second-order centered Laplacian with mirrored ghost nodes (ghost value =
/// first interior value), so constants map to zero exactly and the operator
/// is self-adjoint in the trapezoidal inner product.
Field laplacian_neumann(const Field& u);

/// Trapezoidal quadrature of the nodal field over the domain.
double integrate(const Field& u);

/// Discrete Dirichlet form: sum over mesh edges of (du/h)(dv/h) x edge
/// measure. Satisfies integrate(u * laplacian_neumann(v)) == -gradient_form(u,v)
/// exactly, up to rounding.
double gradient_form(const Field& u, const Field& v);

/// gradient_form(u, u), i.e. the quadrature of |grad u|^2.
double grad_sq_integral(const Field& u);

/// Quadrature-weighted L^q norm; pass q = std::numeric_limits<double>::infinity()
/// (or any q > 1e12) for the max norm.
double lq_norm(const Field& u, double q);

/// lq_norm(u, 2).
double l2_norm(const Field& u);

/// Throws ValidationError unless the two fields share one grid shape.
void require_same_grid(const Field& a, const Field& b, const char* what);

}  // namespace nschsim
