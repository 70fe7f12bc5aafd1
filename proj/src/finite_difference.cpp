#include "cauchy/finite_difference.hpp"

#include <algorithm>
#include <stdexcept>

namespace cauchy::fd {

std::vector<double> weights(double x0, std::span<const double> nodes, int m) {
  const int n = static_cast<int>(nodes.size());
  if (m < 0 || n <= m) throw std::invalid_argument("fd: too few nodes for derivative order");
  // c[j][k]: weight of node j for derivative k
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = nodes[0] - x0;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - x0;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<double> w(n);
  for (int j = 0; j < n; ++j) w[j] = c[j][m];
  return w;
}

int central_size(int m, int p) { return 2 * ((m + 1) / 2) - 1 + p; }

std::vector<int> stencil_offsets(int i, int n, int m, int p, bool periodic) {
  if (m == 0) return {0};
  const int sc = central_size(m, p);
  const int half = sc / 2;
  std::vector<int> off;
  if (periodic || (i - half >= 0 && i + half < n)) {
    for (int k = -half; k <= half; ++k) off.push_back(k);
    return off;
  }
  // one-sided window of m + p nodes keeps accuracy order p
  const int size = m + p;
  if (size > n) throw std::invalid_argument("fd: grid too small for stencil");
  int start = i - size / 2;
  start = std::max(0, std::min(start, n - size));
  for (int k = 0; k < size; ++k) off.push_back(start + k - i);
  return off;
}

}  // namespace cauchy::fd
