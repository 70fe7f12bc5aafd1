#pragma once

#include <gmpxx.h>

#include <type_traits>

#include "cauchy/jet.hpp"

namespace cauchy {

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

using RJet = Jet<Rational>;
using DJet = Jet<double>;

template <class T>
struct scalar_of {
  using type = T;
};
template <class T>
struct scalar_of<Jet<T>> {
  using type = T;
};
template <class T>
using scalar_of_t = typename scalar_of<T>::type;

/// Converts an exact rational into the scalar type of T (double or Rational).
template <class T>
scalar_of_t<T> from_rational(const Rational& q) {
  if constexpr (std::is_same_v<scalar_of_t<T>, Rational>) {
    return q;
  } else {
    return q.get_d();
  }
}

inline double to_double(const Rational& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace cauchy
