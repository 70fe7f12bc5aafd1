#pragma once

// Truncated multivariate Taylor expansions ("jets") in the four coordinates
// (a1, a2, a3, t), complete to total degree 3.
//
// A jet stores Taylor coefficients c_alpha = (d^alpha f)(p) / alpha! at an
// expansion point p. Arithmetic is truncated at degree 3. Because the
// coefficients of degree <= k of a product depend only on the coefficients of
// degree <= k of the factors, any expression that differentiates at most three
// times in total (counting derivative() calls along the evaluation path) gives
// exact derivative values at p. With an exact scalar type the result is exact.

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <type_traits>

namespace cauchy {

namespace jet_detail {

inline constexpr int kVars = 4;
inline constexpr int kOrder = 3;
inline constexpr int kSize = 35;  // C(4 + 3, 3)

struct Tables {
  std::array<std::array<int, kVars>, kSize> exps{};
  std::array<int, kSize> degree{};
  // shift[k][v]: index of exps[k] + e_v, or -1 when past the truncation order
  std::array<std::array<int, kVars>, kSize> shift{};
  // product terms (i, j, k) with exps[i] + exps[j] == exps[k]
  std::array<std::array<int, 3>, 512> mul{};
  int n_mul = 0;
  std::array<double, kSize> factorial{};  // alpha!
};

constexpr int find_index(const Tables& t, const std::array<int, kVars>& e) {
  for (int k = 0; k < kSize; ++k) {
    bool eq = true;
    for (int v = 0; v < kVars; ++v) eq = eq && (t.exps[k][v] == e[v]);
    if (eq) return k;
  }
  return -1;
}

constexpr Tables build_tables() {
  Tables t{};
  int n = 0;
  for (int d = 0; d <= kOrder; ++d)
    for (int e0 = d; e0 >= 0; --e0)
      for (int e1 = d - e0; e1 >= 0; --e1)
        for (int e2 = d - e0 - e1; e2 >= 0; --e2) {
          const int e3 = d - e0 - e1 - e2;
          t.exps[n] = {e0, e1, e2, e3};
          t.degree[n] = d;
          ++n;
        }
  for (int k = 0; k < kSize; ++k) {
    double f = 1.0;
    for (int v = 0; v < kVars; ++v)
      for (int q = 2; q <= t.exps[k][v]; ++q) f *= q;
    t.factorial[k] = f;
    for (int v = 0; v < kVars; ++v) {
      auto e = t.exps[k];
      e[v] += 1;
      t.shift[k][v] = (t.degree[k] + 1 <= kOrder) ? find_index(t, e) : -1;
    }
  }
  for (int i = 0; i < kSize; ++i)
    for (int j = 0; j < kSize; ++j) {
      if (t.degree[i] + t.degree[j] > kOrder) continue;
      std::array<int, kVars> e{};
      for (int v = 0; v < kVars; ++v) e[v] = t.exps[i][v] + t.exps[j][v];
      t.mul[t.n_mul++] = {i, j, find_index(t, e)};
    }
  return t;
}

inline constexpr Tables kTables = build_tables();

}  // namespace jet_detail

/// Coordinate slots of a jet.
enum class Coord : int { a1 = 0, a2 = 1, a3 = 2, t = 3 };

template <class T>
class Jet {
 public:
  static constexpr int kSize = jet_detail::kSize;
  static constexpr int kOrder = jet_detail::kOrder;

  Jet() { c_.fill(T(0)); }
  Jet(const T& value) {  // NOLINT(google-explicit-constructor): scalars promote
    c_.fill(T(0));
    c_[0] = value;
  }
  template <class I, std::enable_if_t<std::is_integral_v<I> && !std::is_same_v<T, I>, int> = 0>
  Jet(I value) : Jet(T(value)) {}  // NOLINT(google-explicit-constructor)

  /// The coordinate function x_v expanded about `value`.
  static Jet variable(Coord v, const T& value) {
    Jet j(value);
    j.c_[1 + static_cast<int>(v)] = T(1);
    return j;
  }

  const T& value() const { return c_[0]; }
  const T& coeff(int k) const { return c_[k]; }
  T& coeff(int k) { return c_[k]; }

  /// Partial derivative d^alpha f at the expansion point.
  T partial(const std::array<int, 4>& alpha) const {
    const int k = jet_detail::find_index(jet_detail::kTables, alpha);
    if (k < 0) throw std::out_of_range("jet: derivative order exceeds truncation");
    return T(c_[k] * T(jet_detail::kTables.factorial[k]));
  }

  /// Jet of df/dx_v (top-degree coefficients become zero).
  Jet derivative(Coord v) const {
    const auto& tb = jet_detail::kTables;
    const int vi = static_cast<int>(v);
    Jet r;
    for (int k = 0; k < kSize; ++k) {
      const int s = tb.shift[k][vi];
      if (s < 0) continue;
      r.c_[k] = T(c_[s] * T(tb.exps[s][vi]));
    }
    return r;
  }

  /// Antiderivative in x_v vanishing on x_v = expansion point.
  Jet integral(Coord v) const {
    const auto& tb = jet_detail::kTables;
    const int vi = static_cast<int>(v);
    Jet r;
    for (int k = 0; k < kSize; ++k) {
      const int s = tb.shift[k][vi];
      if (s < 0) continue;
      r.c_[s] = T(c_[k] / T(tb.exps[s][vi]));
    }
    return r;
  }

  Jet& operator+=(const Jet& o) {
    for (int k = 0; k < kSize; ++k) c_[k] += o.c_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int k = 0; k < kSize; ++k) c_[k] -= o.c_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }

  Jet operator-() const {
    Jet r;
    for (int k = 0; k < kSize; ++k) r.c_[k] = T(-c_[k]);
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b) {
    const auto& tb = jet_detail::kTables;
    Jet r;
    for (int n = 0; n < tb.n_mul; ++n) {
      const auto& [i, j, k] = tb.mul[n];
      r.c_[k] += a.c_[i] * b.c_[j];
    }
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }

  friend Jet operator*(const T& s, Jet a) {
    for (auto& x : a.c_) x = T(s * x);
    return a;
  }
  friend Jet operator*(Jet a, const T& s) { return s * std::move(a); }
  friend Jet operator/(Jet a, const T& s) {
    for (auto& x : a.c_) x = T(x / s);
    return a;
  }
  friend Jet operator+(Jet a, const T& s) {
    a.c_[0] += s;
    return a;
  }
  friend Jet operator+(const T& s, Jet a) { return std::move(a) + s; }
  friend Jet operator-(Jet a, const T& s) {
    a.c_[0] -= s;
    return a;
  }
  friend Jet operator-(const T& s, const Jet& a) { return (-a) + s; }

  /// f(a) for a univariate f given its value and first three derivatives at
  /// a.value().
  friend Jet compose(const Jet& a, const T& f0, const T& f1, const T& f2, const T& f3) {
    Jet d = a;
    d.c_[0] = T(0);
    const Jet d2 = d * d;
    const Jet d3 = d2 * d;
    Jet r(f0);
    r += f1 * d;
    r += T(f2 / T(2)) * d2;
    r += T(f3 / T(6)) * d3;
    return r;
  }

  friend Jet reciprocal(const Jet& a) {
    const T& x = a.c_[0];
    if (x == T(0)) throw std::domain_error("jet: reciprocal of zero");
    const T i1 = T(T(1) / x);
    const T i2 = T(i1 * i1);
    const T i3 = T(i2 * i1);
    const T i4 = T(i3 * i1);
    return compose(a, i1, T(-i2), T(T(2) * i3), T(T(-6) * i4));
  }

 private:
  std::array<T, kSize> c_;
};

// Transcendental functions (floating-point jets only). The std overloads are
// brought in so generic code picks the plain versions for doubles.

using std::cos;
using std::exp;
using std::log;
using std::pow;
using std::sin;
using std::sqrt;

inline Jet<double> sin(const Jet<double>& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return compose(a, s, c, -s, -c);
}
inline Jet<double> cos(const Jet<double>& a) {
  const double s = std::sin(a.value()), c = std::cos(a.value());
  return compose(a, c, -s, -c, s);
}
inline Jet<double> exp(const Jet<double>& a) {
  const double e = std::exp(a.value());
  return compose(a, e, e, e, e);
}
inline Jet<double> sqrt(const Jet<double>& a) {
  const double x = a.value();
  if (x <= 0.0) throw std::domain_error("jet: sqrt of nonpositive value");
  const double s = std::sqrt(x);
  return compose(a, s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x));
}
inline Jet<double> log(const Jet<double>& a) {
  const double x = a.value();
  if (x <= 0.0) throw std::domain_error("jet: log of nonpositive value");
  return compose(a, std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}
/// Real power with constant exponent.
inline Jet<double> pow(const Jet<double>& a, double p) {
  const double x = a.value();
  if (x <= 0.0) throw std::domain_error("jet: pow of nonpositive value");
  const double f0 = std::pow(x, p);
  return compose(a, f0, p * f0 / x, p * (p - 1) * f0 / (x * x), p * (p - 1) * (p - 2) * f0 / (x * x * x));
}

template <class T>
struct is_jet : std::false_type {};
template <class T>
struct is_jet<Jet<T>> : std::true_type {};

}  // namespace cauchy
