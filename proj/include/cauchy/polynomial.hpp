#pragma once

// Sparse multivariate polynomials with exact rational coefficients in four
// variables. For trajectory maps the variables are (a1, a2, a3, t); for
// Eulerian fields they are (x1, x2, x3, t).

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cauchy/rational.hpp"

namespace cauchy {

using Exponents = std::array<int, 4>;

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial variable(int v);
  static Polynomial monomial(const Exponents& e, const Rational& c);

  const std::map<Exponents, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  int degree_in(int v) const;

  Polynomial derivative(int v) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Evaluates at a point whose coordinates have scalar type T (double,
  /// Rational, or a jet of either). Coefficients are converted to T's scalar.
  template <class T>
  T evaluate(const std::array<T, 4>& x) const {
    T result = T(0);
    if (terms_.empty()) return result;
    std::array<std::vector<T>, 4> powers;
    for (int v = 0; v < 4; ++v) {
      const int d = degree_in(v);
      powers[v].reserve(d + 1);
      powers[v].push_back(T(1));
      for (int p = 1; p <= d; ++p) powers[v].push_back(T(powers[v].back() * x[v]));
    }
    for (const auto& [e, c] : terms_) {
      T term = T(from_rational<T>(c));
      for (int v = 0; v < 4; ++v)
        if (e[v] > 0) term = T(term * powers[v][e[v]]);
      result += term;
    }
    return result;
  }

  std::string to_string() const;

 private:
  void add_term(const Exponents& e, const Rational& c);
  std::map<Exponents, Rational> terms_;
};

/// Random polynomial of total degree <= max_degree with `n_terms` monomials
/// and coefficients p/q, |p| <= max_num, 1 <= q <= max_den.
Polynomial random_polynomial(std::mt19937_64& rng, int max_degree, int n_terms,
                             int max_num = 5, int max_den = 4,
                             std::array<bool, 4> active = {true, true, true, true});

}  // namespace cauchy
