#include "cauchy/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cauchy::quad {

namespace {

void legendre_unit(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
}

}  // namespace

Rule gauss_legendre(double lo, double hi, int n, int panels) {
  if (n < 1 || panels < 1 || !(hi > lo)) throw std::invalid_argument("gauss_legendre: bad arguments");
  std::vector<double> x, w;
  if (n == 1) {
    x = {0.0};
    w = {2.0};
  } else {
    legendre_unit(n, x, w);
  }
  Rule r;
  const double h = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = lo + (p + 0.5) * h;
    for (int i = 0; i < n; ++i) {
      r.nodes.push_back(c + 0.5 * h * x[i]);
      r.weights.push_back(0.5 * h * w[i]);
    }
  }
  return r;
}

Rule midpoint(double lo, double hi, int n) {
  if (n < 1 || !(hi > lo)) throw std::invalid_argument("midpoint: bad arguments");
  Rule r;
  const double h = (hi - lo) / n;
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(lo + (i + 0.5) * h);
    r.weights.push_back(h);
  }
  return r;
}

Rule trapezoid(double lo, double hi, int n) {
  if (n < 2 || !(hi > lo)) throw std::invalid_argument("trapezoid: bad arguments");
  Rule r;
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) {
    r.nodes.push_back(lo + i * h);
    r.weights.push_back((i == 0 || i == n - 1) ? 0.5 * h : h);
  }
  return r;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace cauchy::quad
