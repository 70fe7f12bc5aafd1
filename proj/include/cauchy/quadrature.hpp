#pragma once

#include <span>
#include <vector>

namespace cauchy::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [lo, hi], optionally composite over equal panels.
Rule gauss_legendre(double lo, double hi, int n, int panels = 1);

/// Midpoint rule with n equal cells on [lo, hi].
Rule midpoint(double lo, double hi, int n);

/// Trapezoid rule on n >= 2 equispaced nodes including both ends.
Rule trapezoid(double lo, double hi, int n);

/// Fixed-order pairwise summation; result is independent of thread count.
double pairwise_sum(std::span<const double> values);

}  // namespace cauchy::quad
