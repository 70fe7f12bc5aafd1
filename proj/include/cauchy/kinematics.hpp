#pragma once

// Jacobian bundle of the label map and the kinematic identities relating
// label-space and physical-space derivatives.
//
// Everything is written once over jets, so the same code runs in double
// precision (analytic and sampled fields) and in exact rational arithmetic
// (polynomial fields), where the residuals come out identically zero.

#include <cmath>
#include <cstdint>
#include <type_traits>

#include "cauchy/errors.hpp"
#include "cauchy/fields.hpp"
#include "cauchy/trajectory_field.hpp"

namespace cauchy {

template <class T>
struct JacobianBundle {
  Mat3<T> Jmat;  // [J](i, j) = dx_i / da_j
  T Jdet;
  Mat3<T> cof;   // matrix of cofactors, J [J]^{-T}
  Mat3<T> inv;
};

/// Throws DegenerateMapError when J vanishes (exactly for rationals, relative
/// to the cube of the geometric mean of the row norms for doubles).
template <class T>
void check_nondegenerate(const Mat3<T>& m, const T& det) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (is_zero(det)) throw DegenerateMapError("label map is singular (J = 0)");
  } else {
    double scale = 1.0;
    for (int i = 0; i < 3; ++i) scale *= std::sqrt(dot(m.row(i), m.row(i)));
    if (!(std::abs(det) >= 1e-14 * scale) || scale == 0.0)
      throw DegenerateMapError("label map is singular: |J| = " + std::to_string(det));
  }
}

template <class T>
JacobianBundle<T> make_bundle(const Mat3<T>& m) {
  JacobianBundle<T> b;
  b.Jmat = m;
  b.Jdet = determinant(m);
  check_nondegenerate(m, b.Jdet);
  b.cof = cofactor(m);
  const T inv_det = T(T(1) / b.Jdet);
  b.inv = inv_det * transpose(b.cof);
  return b;
}

// ---- jet-level building blocks -------------------------------------------

/// Jets of the Jacobian entries dx_i/da_j.
template <class T>
Mat3<Jet<T>> jacobian_jets(const JetVec<T>& x) {
  Mat3<Jet<T>> m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = x[i].derivative(static_cast<Coord>(j));
  return m;
}

template <class T>
Mat3<Jet<T>> time_derivative(const Mat3<Jet<T>>& m) {
  Mat3<Jet<T>> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).derivative(Coord::t);
  return r;
}

template <class T>
Mat3<T> values(const Mat3<Jet<T>>& m) {
  Mat3<T> r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m(i, j).value();
  return r;
}

/// Gradient matrix G(i, k) = d v_k / d a_i, i.e. the matrix grad_a v^T.
template <class T>
Mat3<T> grad_transpose_values(const JetVec<T>& v) {
  return transpose(jacobian_values(v));
}

template <class T>
JacobianBundle<T> bundle_from_jet(const JetVec<T>& x) {
  return make_bundle(jacobian_values(x));
}

// ---- operations -----------------------------------------------------------

template <class T>
JacobianBundle<T> jacobian(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  return bundle_from_jet(f.jet_at<T>(a, t));
}

inline JacobianBundle<double> jacobian(const TrajectoryField& f, const Vec3d& a, double t) {
  return bundle_from_jet(f.jet(a, t));
}

/// [J]^T grad_x: converts a physical-space gradient into a label-space one.
template <class T>
Vec3<T> pullback_gradient(const JacobianBundle<T>& b, const Vec3<T>& grad_x) {
  return transpose(b.Jmat) * grad_x;
}

/// Eulerian velocity gradient grad_x u^T = [J]^{-T} grad_a xdot^T.
template <class T>
Mat3<T> eulerian_velocity_gradient(const JacobianBundle<T>& b, const JetVec<T>& x) {
  return transpose(b.inv) * grad_transpose_values(time_derivative(x));
}

/// d[J]^T/dt - [J]^T grad_x u^T, with d[J]/dt from the jet.
template <class T>
Mat3<T> check_A3(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  const auto x = f.jet_at<T>(a, t);
  const auto b = bundle_from_jet(x);
  const Mat3<T> dJt = transpose(values(time_derivative(jacobian_jets(x))));
  return dJt - transpose(b.Jmat) * eulerian_velocity_gradient(b, x);
}

/// As above with d[J]/dt from a fourth-order centred difference of step h in
/// time (h <= 0 uses the jet); exercises the identity against an independent
/// time derivative.
Mat3d check_A3(const TrajectoryField& f, const Vec3d& a, double t, double h);

/// d[J]^{-1}/dt + [J]^{-1} (grad_x u^T)^T, with d[J]^{-1}/dt differentiated
/// from the jet of cof^T / J.
template <class T>
Mat3<T> check_A4(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  const auto x = f.jet_at<T>(a, t);
  const auto b = bundle_from_jet(x);
  const auto Jj = jacobian_jets(x);
  const Jet<T> det = determinant(Jj);
  const auto cofj = cofactor(Jj);
  const Jet<T> rdet = reciprocal(det);
  Mat3<T> dinv;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) dinv(i, j) = (cofj(j, i) * rdet).derivative(Coord::t).value();
  return dinv + b.inv * transpose(eulerian_velocity_gradient(b, x));
}

/// (grad_a xdot^T) xdot - grad_a(xdot^T xdot) / 2.
template <class T>
Vec3<T> check_A5(const TrajectoryField& f, const Vec3<T>& a, const T& t) {
  const auto x = f.jet_at<T>(a, t);
  const auto u = time_derivative(x);
  const Jet<T> ke = dot(u, u);
  const Vec3<T> g = gradient_value(ke);
  return grad_transpose_values(u) * values(u) - T(T(1) / T(2)) * g;
}

/// curl_a([J]^T q + grad_a F) - cof^T (curl_x q), q Eulerian, F over labels.
template <class T>
Vec3<T> prop_A1_residual(const TrajectoryField& f, const VectorField& q, const ScalarField& F, const Vec3<T>& a,
                         const T& t) {
  const auto [aj, tj] = coordinate_jets(a, t);
  const auto x = f.jet_at<T>(a, t);
  const auto Jj = jacobian_jets(x);
  const JetVec<T> qx = q.eval<T>(x, tj);  // q(x(a, t), t)
  JetVec<T> w = gradient(F.eval<T>(aj, tj));
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 3; ++i) w[j] += Jj(i, j) * qx[i];
  const Vec3<T> lhs = values(curl(w));

  const auto b = make_bundle(values(Jj));
  const auto [xj, tj2] = coordinate_jets(values(x), t);
  const Vec3<T> curl_q = values(curl(q.eval<T>(xj, tj2)));
  return lhs - transpose(b.cof) * curl_q;
}

/// w^T (curl v) - (curl w)^T v - div(v x w) for fields over labels.
template <class T>
T vector_identity_residual(const VectorField& w, const VectorField& v, const Vec3<T>& a, const T& t) {
  const auto [aj, tj] = coordinate_jets(a, t);
  const auto wj = w.eval<T>(aj, tj);
  const auto vj = v.eval<T>(aj, tj);
  const T lhs = dot(values(wj), values(curl(vj)));
  const T r1 = dot(values(curl(wj)), values(vj));
  const T r2 = divergence(cross(vj, wj)).value();
  return T(lhs - r1 - r2);
}

template <class T>
Vec3<T> transform_line(const JacobianBundle<T>& b, const Vec3<T>& da) {
  return b.Jmat * da;
}
template <class T>
Vec3<T> transform_surface(const JacobianBundle<T>& b, const Vec3<T>& ds) {
  return b.cof * ds;
}
template <class T>
T transform_volume(const JacobianBundle<T>& b, const T& dV) {
  return T(b.Jdet * dV);
}

/// Relative consistency of a bundle: max of |cof - J inv^T| and |J inv - I|.
double bundle_consistency(const JacobianBundle<double>& b);

/// Exact-zero counts of the kinematic identities on seeded random polynomial
/// label maps (total degree <= 3, rational coefficients).
struct IdentityBatteryResult {
  int trials = 0;
  int a3_zero = 0;
  int a4_zero = 0;
  int a5_zero = 0;
  int prop_a1_zero = 0;
  int vector_identity_zero = 0;  // w.(curl v) = (curl w).v + div(v x w)
  int resampled = 0;             // draws rejected for a singular Jacobian

  bool all_zero() const {
    return a3_zero == trials && a4_zero == trials && a5_zero == trials && prop_a1_zero == trials &&
           vector_identity_zero == trials;
  }
};

IdentityBatteryResult run_identity_battery(int trials, std::uint64_t seed);

}  // namespace cauchy
