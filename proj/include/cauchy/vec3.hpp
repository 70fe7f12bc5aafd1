#pragma once

// Fixed-size 3-vectors and 3x3 matrices over an arbitrary scalar type.
//
// The scalar may be double, an exact rational, or a Taylor jet; only the
// ring operations (+, -, *) and construction from int are required, plus
// division where noted.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace cauchy {

template <class T>
struct Vec3 {
  std::array<T, 3> v{T(0), T(0), T(0)};

  Vec3() = default;
  Vec3(T x, T y, T z) : v{std::move(x), std::move(y), std::move(z)} {}

  T& operator[](std::size_t i) { return v[i]; }
  const T& operator[](std::size_t i) const { return v[i]; }

  Vec3& operator+=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] += o.v[i];
    return *this;
  }
  Vec3& operator-=(const Vec3& o) {
    for (std::size_t i = 0; i < 3; ++i) v[i] -= o.v[i];
    return *this;
  }
  friend bool operator==(const Vec3& a, const Vec3& b) { return a.v == b.v; }
};

template <class T>
Vec3<T> operator+(Vec3<T> a, const Vec3<T>& b) {
  a += b;
  return a;
}
template <class T>
Vec3<T> operator-(Vec3<T> a, const Vec3<T>& b) {
  a -= b;
  return a;
}
template <class T>
Vec3<T> operator-(const Vec3<T>& a) {
  return Vec3<T>(T(-a[0]), T(-a[1]), T(-a[2]));
}
template <class T, class S>
Vec3<T> operator*(const S& s, const Vec3<T>& a) {
  return Vec3<T>(T(s * a[0]), T(s * a[1]), T(s * a[2]));
}

template <class T>
T dot(const Vec3<T>& a, const Vec3<T>& b) {
  T r = a[0] * b[0];
  r += a[1] * b[1];
  r += a[2] * b[2];
  return r;
}

template <class T>
Vec3<T> cross(const Vec3<T>& a, const Vec3<T>& b) {
  return Vec3<T>(T(a[1] * b[2] - a[2] * b[1]), T(a[2] * b[0] - a[0] * b[2]),
                 T(a[0] * b[1] - a[1] * b[0]));
}

inline double norm(const Vec3<double>& a) { return std::sqrt(dot(a, a)); }
inline double max_abs(const Vec3<double>& a) {
  return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])});
}

/// Row-major 3x3 matrix; m(i, j) is row i, column j.
template <class T>
struct Mat3 {
  std::array<T, 9> m{T(0), T(0), T(0), T(0), T(0), T(0), T(0), T(0), T(0)};

  T& operator()(std::size_t i, std::size_t j) { return m[3 * i + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return m[3 * i + j]; }

  static Mat3 identity() {
    Mat3 r;
    r(0, 0) = T(1);
    r(1, 1) = T(1);
    r(2, 2) = T(1);
    return r;
  }
  static Mat3 scaled_identity(const T& s) {
    Mat3 r;
    r(0, 0) = s;
    r(1, 1) = s;
    r(2, 2) = s;
    return r;
  }

  Vec3<T> row(std::size_t i) const { return Vec3<T>((*this)(i, 0), (*this)(i, 1), (*this)(i, 2)); }
  Vec3<T> col(std::size_t j) const { return Vec3<T>((*this)(0, j), (*this)(1, j), (*this)(2, j)); }
  friend bool operator==(const Mat3& a, const Mat3& b) { return a.m == b.m; }
};

template <class T>
Mat3<T> transpose(const Mat3<T>& a) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = a(j, i);
  return r;
}

template <class T>
Mat3<T> operator*(const Mat3<T>& a, const Mat3<T>& b) {
  Mat3<T> r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      T s = a(i, 0) * b(0, j);
      s += a(i, 1) * b(1, j);
      s += a(i, 2) * b(2, j);
      r(i, j) = s;
    }
  return r;
}

template <class T>
Vec3<T> operator*(const Mat3<T>& a, const Vec3<T>& x) {
  Vec3<T> r;
  for (std::size_t i = 0; i < 3; ++i) {
    T s = a(i, 0) * x[0];
    s += a(i, 1) * x[1];
    s += a(i, 2) * x[2];
    r[i] = s;
  }
  return r;
}

template <class T>
Mat3<T> operator+(Mat3<T> a, const Mat3<T>& b) {
  for (std::size_t k = 0; k < 9; ++k) a.m[k] += b.m[k];
  return a;
}
template <class T>
Mat3<T> operator-(Mat3<T> a, const Mat3<T>& b) {
  for (std::size_t k = 0; k < 9; ++k) a.m[k] -= b.m[k];
  return a;
}
template <class T, class S>
Mat3<T> operator*(const S& s, Mat3<T> a) {
  for (std::size_t k = 0; k < 9; ++k) a.m[k] = T(s * a.m[k]);
  return a;
}

template <class T>
T determinant(const Mat3<T>& a) {
  T d = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1));
  d -= a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0));
  d += a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  return d;
}

/// Matrix of cofactors: entry (i, j) is (-1)^(i+j) times the minor of a(i, j).
/// Computed from 2x2 minors only, so it stays defined at singular matrices.
template <class T>
Mat3<T> cofactor(const Mat3<T>& a) {
  Mat3<T> c;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::size_t i1 = (i + 1) % 3, i2 = (i + 2) % 3;
    for (std::size_t j = 0; j < 3; ++j) {
      const std::size_t j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      // cyclic index choice absorbs the (-1)^(i+j) sign
      c(i, j) = a(i1, j1) * a(i2, j2) - a(i1, j2) * a(i2, j1);
    }
  }
  return c;
}

template <class T>
T trace(const Mat3<T>& a) {
  T t = a(0, 0);
  t += a(1, 1);
  t += a(2, 2);
  return t;
}

inline double max_abs(const Mat3<double>& a) {
  double r = 0.0;
  for (double x : a.m) r = std::max(r, std::abs(x));
  return r;
}

using Vec3d = Vec3<double>;
using Mat3d = Mat3<double>;

}  // namespace cauchy
