#pragma once

// Material loops and label-space regions with boundary faces.

#include <functional>
#include <vector>

#include "cauchy/label_grid.hpp"

namespace cauchy {

/// Closed parametric curve a(s), s in [0, 1), integrated with the periodic
/// trapezoid rule on `nodes` equispaced parameters.
struct LabelLoop {
  std::function<Vec3d(double)> point;
  std::function<Vec3d(double)> tangent;  // da/ds
  int nodes = 64;
  /// Label-space period crossed by the loop: a(1) = a(0) + wrap. Nonzero only
  /// for loops that wind once around a periodic box.
  Vec3d wrap{0, 0, 0};

  /// Circle of radius r about `center` in the plane spanned by orthonormal e1, e2.
  static LabelLoop circle(const Vec3d& center, double r, const Vec3d& e1, const Vec3d& e2, int nodes = 64);
  /// Closed polygon; each edge is traversed with a smooth reparametrisation
  /// whose speed vanishes at the corners, so the integrand stays smooth.
  static LabelLoop polygon(std::vector<Vec3d> vertices, int nodes = 64);
  /// Straight line from `start` to start + period, closed on a periodic box.
  static LabelLoop periodic_line(const Vec3d& start, const Vec3d& period, int nodes);

  /// Throws ConfigError when not closed (up to `wrap`) or nodes < 8.
  void validate() const;
};

struct BoundaryFace {
  Vec3d normal;              // outward unit normal n^(a)
  std::vector<Vec3d> nodes;  // quadrature nodes on the face
  std::vector<double> ds;    // area weights
};

/// Region of label space: interior quadrature grid plus boundary faces with
/// outward normals. A fully periodic region has no faces.
struct LabelRegion {
  LabelGrid grid;
  std::vector<BoundaryFace> faces;
  bool periodic = false;

  /// Box [lo, hi] with n midpoint cells per axis and n x n midpoint nodes per face.
  static LabelRegion box(const Vec3d& lo, const Vec3d& hi, int n);
  /// Box with Gauss-Legendre nodes inside and on the faces.
  static LabelRegion box_gauss(const Vec3d& lo, const Vec3d& hi, int n, int panels = 1);
  /// Full periodic cell described by a periodic label grid.
  static LabelRegion periodic_cell(const LabelGrid& grid);

  /// |int div v dV - oint v.n ds| for a fixed linear field (0 to rounding
  /// for correctly oriented faces).
  double divergence_self_test() const;
};

}  // namespace cauchy
