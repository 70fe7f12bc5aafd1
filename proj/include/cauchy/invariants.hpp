#pragma once

// Image fields V = [J]^T xdot and Omega = curl_a V, the Cauchy residual
// curl_a dV/dt, and drift of Omega over time.

#include <functional>
#include <span>
#include <string>

#include "cauchy/kinematics.hpp"
#include "cauchy/label_grid.hpp"
#include "cauchy/report.hpp"

namespace cauchy {

// ---- jet level ------------------------------------------------------------

template <class T>
JetVec<T> image_velocity_jet(const JetVec<T>& x) {
  const auto J = jacobian_jets(x);
  const auto xd = time_derivative(x);
  JetVec<T> V;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) V[j] += J(i, j) * xd[i];
  return V;
}

/// dV/dt assembled by the product rule, [J]^T xddot + (d[J]/dt)^T xdot.
template <class T>
JetVec<T> image_acceleration_jet(const JetVec<T>& x) {
  const auto J = jacobian_jets(x);
  const auto Jd = time_derivative(J);
  const auto xd = time_derivative(x);
  const auto xdd = time_derivative(xd);
  JetVec<T> A;
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) A[j] += J(i, j) * xdd[i] + Jd(i, j) * xd[i];
  return A;
}

// ---- pointwise --------------------------------------------------------------

template <class T>
Vec3<T> image_velocity(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  return values(image_velocity_jet(f.jet_at<T>(a, t)));
}

template <class T>
Vec3<T> lagrangian_vorticity(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  return values(curl(image_velocity_jet(f.jet_at<T>(a, t))));
}

/// cof^T omega_x, the pullback of a physical vorticity.
template <class T>
Vec3<T> lagrangian_vorticity_pullback(const TrajectoryField& f, const Vec3<T>& omega_x, const Vec3<T>& a,
                                      const T& t) {
  return transpose(jacobian(f, a, t).cof) * omega_x;
}

/// curl_a dV/dt; vanishes exactly where the flow satisfies the Euler equations.
template <class T>
Vec3<T> cauchy_residual(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  return values(curl(image_acceleration_jet(f.jet_at<T>(a, t))));
}

/// Same quantity as cauchy_residual, reported as the curl-free check on dV/dt.
template <class T>
Vec3<T> acceleration_potential_residual(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  return cauchy_residual(f, a, t);
}

/// Physical vorticity at x(a, t) from the Cauchy formula, (1/J) [J] Omega0.
template <class T>
Vec3<T> cauchy_vorticity_reconstruct(const TrajectoryField& f, const Vec3<T>& omega0, const Vec3<T>& a,
                                     const T& t) {
  const auto b = jacobian(f, a, t);
  return T(T(1) / b.Jdet) * (b.Jmat * omega0);
}

Vec3d cauchy_vorticity_reconstruct(const TrajectoryField& f, const VectorField& omega0, const Vec3d& a, double t);

/// Physical vorticity curl_x u at x(a, t), computed directly from the
/// Eulerian velocity gradient.
template <class T>
Vec3<T> eulerian_vorticity(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  const auto x = f.jet_at<T>(a, t);
  const auto b = bundle_from_jet(x);
  const Mat3<T> G = eulerian_velocity_gradient(b, x);  // G(i, k) = du_k/dx_i
  return Vec3<T>(G(1, 2) - G(2, 1), G(2, 0) - G(0, 2), G(0, 1) - G(1, 0));
}

// ---- drift ------------------------------------------------------------------

using PointVectorFn = std::function<Vec3d(const Vec3d&, double)>;
using PointScalarFn = std::function<double(const Vec3d&, double)>;

/// Drift of a pointwise vector quantity over the grid nodes: per time stamp,
/// max and weighted-L2 deviation from the first time stamp.
DriftReport field_drift(const PointVectorFn& q, const LabelGrid& grid, std::span<const double> times,
                        std::string theorem);
DriftReport field_drift(const PointScalarFn& q, const LabelGrid& grid, std::span<const double> times,
                        std::string theorem);

/// Drift of a scalar invariant (circulation, helicity, ...).
DriftReport scalar_drift(const std::function<double(double)>& q, std::span<const double> times,
                         std::string theorem);

/// Drift of Omega(a, t) over the grid.
DriftReport cauchy_drift(const TrajectoryField& f, const LabelGrid& grid, std::span<const double> times);

/// n equispaced time stamps covering [t0, t1].
std::vector<double> linspace(double t0, double t1, int n);

}  // namespace cauchy
