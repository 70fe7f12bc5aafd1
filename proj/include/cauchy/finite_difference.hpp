#pragma once

// Finite-difference stencil weights on arbitrary node sets.

#include <span>
#include <vector>

namespace cauchy::fd {

/// Weights w_k such that sum_k w_k f(x_k) approximates f^(m)(x0), computed with
/// Fornberg's recurrence. Accuracy is (nodes - m) in general, one more for
/// symmetric stencils of odd size and even m or even size and odd m.
std::vector<double> weights(double x0, std::span<const double> nodes, int m);

/// Stencil for derivative order m and accuracy order p on a uniform index
/// range [0, n). Returns node offsets relative to `i` (may be one-sided near
/// the ends). Central when the full symmetric stencil fits; with `periodic`
/// the stencil is always central and offsets may leave [0, n).
std::vector<int> stencil_offsets(int i, int n, int m, int p, bool periodic);

/// Number of points of the central stencil for derivative m, accuracy p.
int central_size(int m, int p);

}  // namespace cauchy::fd
