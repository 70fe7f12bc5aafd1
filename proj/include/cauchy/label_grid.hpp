#pragma once

// Rectilinear discretization of a box in label space.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "cauchy/quadrature.hpp"
#include "cauchy/vec3.hpp"

namespace cauchy {

/// One axis of a LabelGrid: node coordinates and the quadrature weight
/// (cell width) attached to each node.
struct GridAxis {
  std::vector<double> coords;
  std::vector<double> widths;
  bool periodic = false;
  double period = 0.0;  // only meaningful when periodic

  /// Nodes at both ends with trapezoid widths.
  static GridAxis nodes(double lo, double hi, int n);
  /// Cell centers of n equal cells (midpoint rule).
  static GridAxis cell_centers(double lo, double hi, int n);
  /// Composite Gauss-Legendre nodes.
  static GridAxis gauss_legendre(double lo, double hi, int n, int panels = 1);
  /// n cell centers on a periodic interval of length `period` starting at lo.
  static GridAxis periodic_cells(double lo, double period, int n);

  int size() const { return static_cast<int>(coords.size()); }
  double lower() const;
  double upper() const;
};

class LabelGrid {
 public:
  LabelGrid() = default;
  /// Throws std::invalid_argument unless every axis is strictly increasing
  /// with positive widths.
  explicit LabelGrid(std::array<GridAxis, 3> axes);

  /// n^3 midpoint cells on [lo, hi]^3.
  static LabelGrid cube_cells(double lo, double hi, int n);
  /// n^3 nodes on [lo, hi]^3 including the faces.
  static LabelGrid cube_nodes(double lo, double hi, int n);
  /// Tensor Gauss-Legendre nodes on a box.
  static LabelGrid box_gauss(const Vec3d& lo, const Vec3d& hi, int n, int panels = 1);
  /// Fully periodic box [lo, lo + period)^3 with n cells per axis.
  static LabelGrid periodic_box(double lo, double period, int n);

  const GridAxis& axis(int d) const { return axes_[d]; }
  std::array<int, 3> shape() const { return {axes_[0].size(), axes_[1].size(), axes_[2].size()}; }
  std::size_t size() const;
  std::size_t flat(int i, int j, int k) const;
  std::array<int, 3> unflat(std::size_t idx) const;

  Vec3d label(std::size_t idx) const;
  /// Cell volume dV^(a) attached to node idx.
  double weight(std::size_t idx) const;
  double total_volume() const;

  std::string describe() const;

 private:
  std::array<GridAxis, 3> axes_;
};

}  // namespace cauchy
