#include "cauchy/kinematics.hpp"

#include <algorithm>

namespace cauchy {

Mat3d check_A3(const TrajectoryField& f, const Vec3d& a, double t, double h) {
  if (h <= 0.0) return check_A3<double>(f, a, t);
  const auto x = f.jet(a, t);
  const auto b = bundle_from_jet(x);
  auto J = [&](double s) { return jacobian_values(f.jet(a, s)); };
  const Mat3d dJ = (1.0 / (12.0 * h)) * (J(t - 2 * h) - 8.0 * J(t - h) + 8.0 * J(t + h) - J(t + 2 * h));
  return transpose(dJ) - transpose(b.Jmat) * eulerian_velocity_gradient(b, x);
}

double bundle_consistency(const JacobianBundle<double>& b) {
  const double scale = std::max(1.0, max_abs(b.cof));
  const double r1 = max_abs(b.cof - b.Jdet * transpose(b.inv)) / scale;
  const double r2 = max_abs(b.Jmat * b.inv - Mat3d::identity());
  return std::max(r1, r2);
}

}  // namespace cauchy
