#pragma once

// Vorticity theorems that follow from the Cauchy invariants: the
// D'Alembert-Euler condition, Beltrami's equation, Ertel's potential
// vorticity, Kelvin's circulation and Moffatt's helicity.

#include "cauchy/variational.hpp"

namespace cauchy {

// ---- theorems ----------------------------------------------------------------------

/// curl_x of the fluid acceleration via ([J]/J) curl_a dV/dt.
template <class T>
Vec3<T> dalembert_euler_residual(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  const auto x = f.jet_at<T>(a, t);
  const auto b = bundle_from_jet(x);
  const Vec3<T> r = values(curl(image_acceleration_jet(x)));
  return T(T(1) / b.Jdet) * (b.Jmat * r);
}

/// curl_x of the acceleration computed directly: grad_x xddot^T pulled back
/// from grad_a xddot^T.
template <class T>
Vec3<T> dalembert_euler_eulerian(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  const auto x = f.jet_at<T>(a, t);
  const auto b = bundle_from_jet(x);
  const Mat3<T> G = transpose(b.inv) * grad_transpose_values(time_derivative(time_derivative(x)));
  return Vec3<T>(G(1, 2) - G(2, 1), G(2, 0) - G(0, 2), G(0, 1) - G(1, 0));
}

/// omega / rho at (a, t) with omega from the Cauchy formula applied to the
/// current Omega(a, t).
Vec3d specific_vorticity(const TrajectoryField& f, const FlowMaterial& m, const Vec3d& a, double t);

/// d/dt(omega/rho) - ((omega/rho).grad_x) u, time derivative at fixed label
/// by a centred difference of step dt_fd.
Vec3d beltrami_residual(const TrajectoryField& f, const FlowMaterial& m, const Vec3d& a, double t, double dt_fd);

/// Ertel potential vorticity (omega/rho).grad_x S for S = S(a).
double ertel_pv(const TrajectoryField& f, const FlowMaterial& m, const ScalarField& S, const Vec3d& a, double t);
/// Same quantity in label form, Omega.grad_a S / (rho0 J0).
double ertel_pv_label(const TrajectoryField& f, const FlowMaterial& m, const ScalarField& S, const Vec3d& a,
                      double t);
DriftReport ertel_drift(const TrajectoryField& f, const FlowMaterial& m, const ScalarField& S, const LabelGrid& grid,
                        std::span<const double> times);

/// Gamma(t) = oint V.da over a material loop.
double circulation(const TrajectoryField& f, const LabelLoop& loop, double t);
DriftReport circulation_drift(const TrajectoryField& f, const LabelLoop& loop, std::span<const double> times);

/// H(t) = int Omega.V dV^(a).
double helicity(const TrajectoryField& f, const LabelRegion& region, double t);

struct Tangency {
  double max_abs = 0.0;  // max |Omega.n| over boundary nodes
  double flux = 0.0;     // sum |Omega.n| ds
};
/// Vorticity flux through the boundary; zero when Omega is tangent to it.
/// A periodic region has no boundary and reports zero.
Tangency boundary_tangency(const TrajectoryField& f, const LabelRegion& region, double t);

/// Helicity time series; the metadata records the boundary tangency at t0,
/// since conservation is only asserted for tangent or periodic boundaries.
DriftReport helicity_drift(const TrajectoryField& f, const LabelRegion& region, std::span<const double> times);

}  // namespace cauchy
