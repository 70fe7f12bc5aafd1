#pragma once

// Scalar and vector fields over (p, t), where p is either a label a or a
// physical position x. A field carries up to three evaluators:
//
//   * a floating-point jet evaluator (exact derivatives up to order 3),
//   * an exact rational jet evaluator (polynomial fields only),
//   * a plain value evaluator, used with finite differences when no jet
//     evaluator exists.

#include <functional>
#include <optional>
#include <utility>

#include "cauchy/errors.hpp"
#include "cauchy/polynomial.hpp"
#include "cauchy/rational.hpp"
#include "cauchy/vec3.hpp"

namespace cauchy {

template <class T>
using JetVec = Vec3<Jet<T>>;

/// Builds the jet of the coordinate functions (p1, p2, p3, t) at a point.
template <class T>
std::pair<JetVec<T>, Jet<T>> coordinate_jets(const Vec3<T>& p, const T& t) {
  return {JetVec<T>(Jet<T>::variable(Coord::a1, p[0]), Jet<T>::variable(Coord::a2, p[1]),
                    Jet<T>::variable(Coord::a3, p[2])),
          Jet<T>::variable(Coord::t, t)};
}

/// Finite-difference settings for fields without jet evaluators.
struct FdSettings {
  double step = 1e-3;
  int order = 4;  // 2 or 4
};

/// Axis-aligned box; empty optional means unbounded.
struct Box {
  Vec3d lo;
  Vec3d hi;
  bool contains(const Vec3d& p, double slack = 0.0) const {
    for (int d = 0; d < 3; ++d)
      if (p[d] < lo[d] - slack || p[d] > hi[d] + slack) return false;
    return true;
  }
};

class ScalarField {
 public:
  using JetFn = std::function<DJet(const JetVec<double>&, const DJet&)>;
  using ExactFn = std::function<RJet(const JetVec<Rational>&, const RJet&)>;
  using ValueFn = std::function<double(const Vec3d&, double)>;

  ScalarField() = default;

  /// From a generic callable f(p, t) instantiable with double and DJet.
  template <class F>
  static ScalarField from_expr(F f) {
    ScalarField s;
    s.jet_ = [f](const JetVec<double>& p, const DJet& t) { return DJet(f(p, t)); };
    s.value_ = [f](const Vec3d& p, double t) { return static_cast<double>(f(p, t)); };
    return s;
  }

  /// Polynomial in (p1, p2, p3, t); all derivatives are exact.
  static ScalarField from_polynomial(Polynomial poly);

  /// Value-only field; derivatives by central finite differences.
  static ScalarField from_function(ValueFn fn, FdSettings fd = {});

  static ScalarField constant(double c);

  ScalarField& with_domain(Box box) {
    domain_ = box;
    return *this;
  }

  bool has_jet() const { return static_cast<bool>(jet_); }
  bool has_exact() const { return static_cast<bool>(exact_); }
  const std::optional<Box>& domain() const { return domain_; }
  const FdSettings& fd() const { return fd_; }
  const std::optional<Polynomial>& polynomial() const { return poly_; }

  double value(const Vec3d& p, double t) const { return value_(p, t); }
  DJet jet(const JetVec<double>& p, const DJet& t) const;
  RJet exact_jet(const JetVec<Rational>& p, const RJet& t) const;

  /// Generic jet evaluation dispatching on the scalar type.
  template <class T>
  Jet<T> eval(const JetVec<T>& p, const Jet<T>& t) const {
    if constexpr (std::is_same_v<T, Rational>)
      return exact_jet(p, t);
    else
      return jet(p, t);
  }

 private:
  JetFn jet_;
  ExactFn exact_;
  ValueFn value_;
  std::optional<Polynomial> poly_;
  std::optional<Box> domain_;
  FdSettings fd_;
};

class VectorField {
 public:
  using JetFn = std::function<JetVec<double>(const JetVec<double>&, const DJet&)>;
  using ExactFn = std::function<JetVec<Rational>(const JetVec<Rational>&, const RJet&)>;
  using ValueFn = std::function<Vec3d(const Vec3d&, double)>;

  VectorField() = default;

  template <class F>
  static VectorField from_expr(F f, bool steady = false) {
    VectorField s;
    s.jet_ = [f](const JetVec<double>& p, const DJet& t) {
      auto r = f(p, t);
      return JetVec<double>(DJet(r[0]), DJet(r[1]), DJet(r[2]));
    };
    s.value_ = [f](const Vec3d& p, double t) {
      auto r = f(p, t);
      return Vec3d(static_cast<double>(r[0]), static_cast<double>(r[1]), static_cast<double>(r[2]));
    };
    s.steady_ = steady;
    return s;
  }

  static VectorField from_polynomials(std::array<Polynomial, 3> polys);
  static VectorField from_function(ValueFn fn, FdSettings fd = {}, bool steady = false);
  /// The vector field grad(f) with exact jets when f has them.
  static VectorField gradient_of(const ScalarField& f);
  static VectorField zero();

  VectorField& with_domain(Box box) {
    domain_ = box;
    return *this;
  }

  bool steady() const { return steady_; }
  bool has_jet() const { return static_cast<bool>(jet_); }
  bool has_exact() const { return static_cast<bool>(exact_); }
  const std::optional<Box>& domain() const { return domain_; }
  const FdSettings& fd() const { return fd_; }

  Vec3d value(const Vec3d& p, double t) const { return value_(p, t); }
  JetVec<double> jet(const JetVec<double>& p, const DJet& t) const;
  JetVec<Rational> exact_jet(const JetVec<Rational>& p, const RJet& t) const;

  template <class T>
  JetVec<T> eval(const JetVec<T>& p, const Jet<T>& t) const {
    if constexpr (std::is_same_v<T, Rational>)
      return exact_jet(p, t);
    else
      return jet(p, t);
  }

 private:
  JetFn jet_;
  ExactFn exact_;
  ValueFn value_;
  std::optional<Box> domain_;
  FdSettings fd_;
  bool steady_ = false;
};

using ScalarFieldLabel = ScalarField;
using VectorFieldLabel = VectorField;
using EulerianScalarField = ScalarField;
using EulerianVectorField = VectorField;

// Differential operators on jets (coordinate slots a1..a3).

template <class T>
Vec3<T> gradient_value(const Jet<T>& f) {
  return Vec3<T>(f.derivative(Coord::a1).value(), f.derivative(Coord::a2).value(),
                 f.derivative(Coord::a3).value());
}

template <class T>
JetVec<T> gradient(const Jet<T>& f) {
  return JetVec<T>(f.derivative(Coord::a1), f.derivative(Coord::a2), f.derivative(Coord::a3));
}

template <class T>
JetVec<T> curl(const JetVec<T>& v) {
  return JetVec<T>(v[2].derivative(Coord::a2) - v[1].derivative(Coord::a3),
                   v[0].derivative(Coord::a3) - v[2].derivative(Coord::a1),
                   v[1].derivative(Coord::a1) - v[0].derivative(Coord::a2));
}

template <class T>
Jet<T> divergence(const JetVec<T>& v) {
  return v[0].derivative(Coord::a1) + v[1].derivative(Coord::a2) + v[2].derivative(Coord::a3);
}

template <class T>
Vec3<T> values(const JetVec<T>& v) {
  return Vec3<T>(v[0].value(), v[1].value(), v[2].value());
}

/// Gradient matrix G(i, j) = d v_i / d p_j at the expansion point.
template <class T>
Mat3<T> jacobian_values(const JetVec<T>& v) {
  Mat3<T> g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = v[i].derivative(static_cast<Coord>(j)).value();
  return g;
}

template <class T>
Vec3<T> time_derivative_values(const JetVec<T>& v) {
  return values(JetVec<T>(v[0].derivative(Coord::t), v[1].derivative(Coord::t), v[2].derivative(Coord::t)));
}

template <class T>
JetVec<T> time_derivative(const JetVec<T>& v) {
  return JetVec<T>(v[0].derivative(Coord::t), v[1].derivative(Coord::t), v[2].derivative(Coord::t));
}

// Pointwise operators on fields. Exact when the field has jets, otherwise
// central finite differences of the declared order and step.

Vec3d grad_label(const ScalarField& f, const Vec3d& a, double t);
Vec3<Rational> grad_label_exact(const ScalarField& f, const Vec3<Rational>& a, const Rational& t);
Vec3d curl_label(const VectorField& v, const Vec3d& a, double t);
double div_label(const VectorField& v, const Vec3d& a, double t);
Vec3<Rational> curl_label_exact(const VectorField& v, const Vec3<Rational>& a, const Rational& t);
Rational div_label_exact(const VectorField& v, const Vec3<Rational>& a, const Rational& t);

/// Gradient matrix d v_i / d p_j (exact or finite differences).
Mat3d gradient_matrix(const VectorField& v, const Vec3d& p, double t);

}  // namespace cauchy
