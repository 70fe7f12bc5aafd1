#pragma once

// Mass and momentum balance in label form, the action functional, particle
// relabelling and the variational identities built on them.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cauchy/invariants.hpp"
#include "cauchy/material.hpp"
#include "cauchy/quadrature.hpp"
#include "cauchy/region.hpp"

namespace cauchy {

// ---- density and balance laws ----------------------------------------------

/// Keeps only the label dependence of a jet (drops every t-containing term).
template <class T>
Jet<T> drop_time(const Jet<T>& j) {
  Jet<T> r = j;
  const auto& tb = jet_detail::kTables;
  for (int k = 0; k < Jet<T>::kSize; ++k)
    if (tb.exps[k][3] != 0) r.coeff(k) = T(0);
  return r;
}

/// rho0(a) J(a, t0) as a jet in the labels (the conserved mass density per
/// unit label volume).
template <class T>
Jet<T> mass_density_jet(const TrajectoryField& f, const FlowMaterial& m, const Vec3<T>& a) {
  const T t0 = T(f.t0());
  const auto [aj, tj] = coordinate_jets(a, t0);
  const auto x0 = f.jet_at<T>(a, t0);
  return drop_time(m.rho0.eval<T>(aj, tj) * determinant(jacobian_jets(x0)));
}

/// rho(a, t) = rho0 J(a, t0) / J(a, t) as a jet about (a, t).
template <class T>
Jet<T> density_jet(const TrajectoryField& f, const FlowMaterial& m, const Vec3<T>& a, const T& t) {
  const auto x = f.jet_at<T>(a, t);
  const Jet<T> J = determinant(jacobian_jets(x));
  check_nondegenerate(jacobian_values(x), J.value());
  return mass_density_jet(f, m, a) / J;
}

template <class T>
T density_from_map(const TrajectoryField& f, const FlowMaterial& m, const Vec3<T>& a, const T& t) {
  const auto b = jacobian(f, a, t);
  const auto b0 = jacobian(f, a, T(f.t0()));
  const auto [aj, tj] = coordinate_jets(a, t);
  const T rho = T(m.rho0.eval<T>(aj, tj).value() * b0.Jdet / b.Jdet);
  if (!(rho > 0)) throw PhysicsError("density from map is not positive");
  return rho;
}

/// rho J - rho0 J0 for an independently supplied density.
double mass_residual(const TrajectoryField& f, const FlowMaterial& m, const ScalarField& rho, const Vec3d& a,
                     double t);

/// rho0 J0 (xddot + grad_x P) + cof grad_a p. Uses `pressure` (over labels)
/// when given, otherwise p(rho) from the equation of state with rho from the
/// map.
template <class T>
Vec3<T> momentum_residual(const TrajectoryField& f, const FlowMaterial& m, const std::optional<ScalarField>& pressure,
                          const Vec3<T>& a, const T& t) {
  const auto x = f.jet_at<T>(a, t);
  const auto b = bundle_from_jet(x);
  const auto [aj, tj] = coordinate_jets(a, t);
  const T mass = mass_density_jet(f, m, a).value();
  const Vec3<T> xdd = values(time_derivative(time_derivative(x)));
  const auto [xj, txj] = coordinate_jets(values(x), t);
  const Vec3<T> gradP = gradient_value(m.potential.eval<T>(xj, txj));
  Vec3<T> grad_p;
  if (pressure) {
    grad_p = gradient_value(pressure->eval<T>(aj, tj));
  } else {
    if constexpr (std::is_same_v<T, double>) {
      const DJet rho = density_jet(f, m, a, t);
      if (!(rho.value() > 0)) throw PhysicsError("density from map is not positive");
      grad_p = m.eos.dpressure(rho.value()) * gradient_value(rho);
    } else {
      throw std::logic_error("exact momentum residual needs an explicit pressure field");
    }
  }
  return mass * (xdd + gradP) + b.cof * grad_p;
}

// ---- action -------------------------------------------------------------------

struct TimeWindow {
  double t0 = 0.0;
  double t1 = 1.0;
  int nodes = 4;   // Gauss-Legendre nodes per panel
  int panels = 1;

  quad::Rule rule() const { return quad::gauss_legendre(t0, t1, nodes, panels); }
};

/// Lagrangian density per unit label volume, (xdot^2/2 - E(rho) - P(x)) rho0 J0.
double lagrangian_density(const TrajectoryField& f, const FlowMaterial& m, const Vec3d& a, double t);

/// S = int int (xdot^2/2 - E(rho) - P(x)) rho J dV^(a) dt over the grid and
/// the Gauss-Legendre rule of the window.
double action(const TrajectoryField& f, const FlowMaterial& m, const TimeWindow& w, const LabelGrid& grid);

// ---- relabelling -------------------------------------------------------------

/// Time-independent label displacement da(a). The curl and pair forms are
/// divergence-free by construction; the direct form takes da as given and
/// exists to exercise the non-symmetry detectors.
struct RelabelGenerator {
  enum class Form { curl, pair, direct };
  Form form = Form::curl;
  VectorField dR;      // curl form: da = curl dR
  ScalarField R1, R2;  // pair form: da = grad R1 x grad R2
  VectorField da;      // direct form
  std::string name;

  static RelabelGenerator curl_form(VectorField dR, std::string name = "curl");
  static RelabelGenerator pair_form(ScalarField R1, ScalarField R2, std::string name = "pair");
  static RelabelGenerator direct(VectorField da, std::string name = "direct");
  /// dR = (0, 0, b(a)) with the C^3 bump b = prod_i (1 - ((a_i - c_i)/r)^2)^4
  /// inside the cube of half-width r about c and 0 outside.
  static RelabelGenerator bump(const Vec3d& center, double radius);
};

/// Jet of da about the label a (time slot unused).
template <class T>
JetVec<T> relabel_delta_a_jet(const RelabelGenerator& g, const Vec3<T>& a) {
  const auto [aj, tj] = coordinate_jets(a, T(0));
  switch (g.form) {
    case RelabelGenerator::Form::curl:
      return curl(g.dR.eval<T>(aj, tj));
    case RelabelGenerator::Form::pair:
      return cross(gradient(g.R1.eval<T>(aj, tj)), gradient(g.R2.eval<T>(aj, tj)));
    case RelabelGenerator::Form::direct:
      break;
  }
  return g.da.eval<T>(aj, tj);
}

Vec3d relabel_delta_a(const RelabelGenerator& g, const Vec3d& a);
Vec3<Rational> relabel_delta_a_exact(const RelabelGenerator& g, const Vec3<Rational>& a);
/// d(da)_i / da_j.
Mat3d relabel_delta_a_gradient(const RelabelGenerator& g, const Vec3d& a);
double relabel_divergence(const RelabelGenerator& g, const Vec3d& a);
/// Vector potential dR with da = curl dR (R1 grad R2 for the pair form).
/// Throws ConfigError for the direct form.
Vec3d relabel_potential(const RelabelGenerator& g, const Vec3d& a);

/// Local variation under relabelling, -[J] da.
template <class T>
Vec3<T> local_variation(const TrajectoryField& f, const RelabelGenerator& g, const Vec3<T>& a, const T& t) {
  const auto b = jacobian(f, a, t);
  return -(b.Jmat * values(relabel_delta_a_jet(g, a)));
}

struct ScanRow {
  double eps = 0.0;
  double action = 0.0;
  double diff = 0.0;  // |S(eps) - S(0)|
};

struct ScanResult {
  std::string generator;
  double action0 = 0.0;
  std::vector<ScanRow> rows;
  double slope = 0.0;           // least-squares log-log slope of diff vs eps
  double max_divergence = 0.0;  // max |div da| over the grid
  /// Set when the generator fails the symmetry test (slope < 1.9).
  bool flagged = false;
};

inline const std::vector<double> kDefaultEpsList{1e-2, 3e-3, 1e-3, 3e-4};

/// S(eps) for the relabelled motion x(a + eps da(a), t), evaluated at the
/// original nodes with weights scaled by det(I + eps grad da). Throws
/// PhysicsError when the relabelling folds the domain.
double relabeled_action(const TrajectoryField& f, const FlowMaterial& m, const RelabelGenerator& g,
                        const TimeWindow& w, const LabelGrid& grid, double eps);
ScanResult relabeling_invariance_scan(const TrajectoryField& f, const FlowMaterial& m, const RelabelGenerator& g,
                                      const TimeWindow& w, const LabelGrid& grid,
                                      const std::vector<double>& eps_list = kDefaultEpsList);

/// Least-squares slope of log y against log x (pairs with y <= 0 are skipped).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Relabelled map evaluated as a black box: x~(b, t) = x(a, t) with
/// a + eps da(a) = b solved by Newton iteration.
class RelabeledField {
 public:
  RelabeledField(TrajectoryField f, RelabelGenerator g, double eps);
  Vec3d original_label(const Vec3d& b) const;
  Vec3d position(const Vec3d& b, double t) const;

 private:
  TrajectoryField f_;
  RelabelGenerator g_;
  double eps_;
};

struct PullbackCheck {
  double scalar = 0.0;    // |psi(x~(b, t)) - psi(x(a, t))|
  double velocity = 0.0;  // |xdot~(b, t) - xdot(a, t)|, xdot~ by finite differences
  double volume = 0.0;    // |J~(b, t) det(db/da) - J(a, t)|, J~ by finite differences
};

/// Invariance of scalars, velocity and the volume element under the
/// relabelling a -> b = a + eps da(a), at the relabelled point of label a.
PullbackCheck relabel_pullback_check(const TrajectoryField& f, const RelabelGenerator& g, double eps,
                                     const ScalarField& psi, const Vec3d& a, double t, double h = 1e-3);

// ---- weak form and the fundamental variational formula -------------------------

struct WeakForm {
  double lhs = 0.0;  // int int R . dx_local, R the momentum residual, dx_local = -[J] da
  double rhs = 0.0;  // -int int rho0 J0 (curl_a dV/dt) . dR
};

/// Both sides of the weak formulation for a relabelling generator. The
/// boundary term of the integration by parts is dropped, so dR must vanish
/// on the boundary (or the grid be periodic).
WeakForm weak_form_integral(const TrajectoryField& f, const FlowMaterial& m, const std::optional<ScalarField>& pressure,
                            const RelabelGenerator& g, const TimeWindow& w, const LabelGrid& grid);

/// Transformation (t, a, x) -> (t + dt, a + da, x + dx) with components
/// given as jets about (a, t).
struct VariationJets {
  DJet dt;
  JetVec<double> da;
  JetVec<double> dx;
};

struct VariationTriple {
  std::string name;
  std::function<VariationJets(const Vec3d&, double)> eval;

  static VariationTriple zero();
  static VariationTriple relabeling(const RelabelGenerator& g);
  static VariationTriple time_translation(double tau = 1.0);
  /// Components from jet-capable fields over (a, t).
  static VariationTriple from_fields(ScalarField dt, VectorField da, VectorField dx, std::string name = "fields");
};

/// Local variation dx - xdot dt - (da . grad_a) x.
Vec3d local_variation(const TrajectoryField& f, const VariationTriple& v, const Vec3d& a, double t);

struct RundTrautman {
  double total = 0.0;    // (S~(eps) - S) / eps
  double el_part = 0.0;  // -int int R . dx_local
  double bd_part = 0.0;  // time-endpoint and face terms
  double discrepancy() const { return total - el_part - bd_part; }
};

/// Lagrangian of the fundamental formula: with an explicit pressure field the
/// flow is treated as incompressible and p(a, t) enters as the multiplier of
/// J - J0, so the Euler-Lagrange expression is minus the momentum residual;
/// otherwise the barotropic energy E(rho) supplies the pressure.
///
/// The total variation uses the exact transformed domain (a + eps da, t + eps dt)
/// by change of variables at the original nodes. The face terms need the
/// boundary faces of `region`; a periodic region has none.
RundTrautman rund_trautman_check(const TrajectoryField& f, const FlowMaterial& m,
                                 const std::optional<ScalarField>& pressure, const VariationTriple& v,
                                 const TimeWindow& w, const LabelRegion& region, double eps);

/// The boundary brace alone (Noether's boundary term).
double noether_boundary_term(const TrajectoryField& f, const FlowMaterial& m, const std::optional<ScalarField>& pressure,
                             const VariationTriple& v, const TimeWindow& w, const LabelRegion& region);

}  // namespace cauchy
