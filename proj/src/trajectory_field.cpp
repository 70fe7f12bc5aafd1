#include "cauchy/trajectory_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cauchy/finite_difference.hpp"

namespace cauchy {

const char* to_string(Backend b) {
  switch (b) {
    case Backend::analytic: return "analytic";
    case Backend::polynomial: return "polynomial";
    case Backend::sampled: return "sampled";
  }
  return "unknown";
}

void SampledTrajectories::validate() const {
  if (times.empty()) throw std::invalid_argument("sampled trajectories: no time slices");
  for (std::size_t n = 1; n < times.size(); ++n)
    if (!(times[n] > times[n - 1])) throw std::invalid_argument("sampled trajectories: times must increase");
  if (positions.size() != times.size())
    throw std::invalid_argument("sampled trajectories: one position slice per time stamp required");
  for (const auto& slice : positions)
    if (slice.size() != grid.size()) throw std::invalid_argument("sampled trajectories: slice size mismatch");
  if (!jets.empty()) {
    if (jets.size() != times.size()) throw std::invalid_argument("sampled trajectories: jet slice count mismatch");
    for (const auto& slice : jets)
      if (slice.size() != grid.size()) throw std::invalid_argument("sampled trajectories: jet slice size mismatch");
  }
  if (fd_order != 2 && fd_order != 4) throw std::invalid_argument("sampled trajectories: fd order must be 2 or 4");
}

TrajectoryField TrajectoryField::polynomial(std::array<Polynomial, 3> x, Box domain, double t0, double t1,
                                            std::string name) {
  TrajectoryField tf;
  tf.backend_ = Backend::polynomial;
  tf.polys_ = std::make_shared<const std::array<Polynomial, 3>>(std::move(x));
  auto polys = tf.polys_;
  tf.map_ = [polys](const JetVec<double>& a, const DJet& t) {
    JetVec<double> r;
    for (int i = 0; i < 3; ++i) r[i] = (*polys)[i].evaluate<DJet>({a[0], a[1], a[2], t});
    return r;
  };
  tf.domain_ = domain;
  tf.t0_ = t0;
  tf.t1_ = t1;
  tf.name_ = std::move(name);
  return tf;
}

TrajectoryField TrajectoryField::sampled(std::shared_ptr<const SampledTrajectories> data, std::string name) {
  data->validate();
  TrajectoryField tf;
  tf.backend_ = Backend::sampled;
  const auto& g = data->grid;
  constexpr double inf = std::numeric_limits<double>::infinity();
  for (int d = 0; d < 3; ++d) {
    const auto& ax = g.axis(d);
    tf.domain_.lo[d] = ax.periodic ? -inf : ax.lower();
    tf.domain_.hi[d] = ax.periodic ? inf : ax.upper();
  }
  tf.t0_ = data->times.front();
  tf.t1_ = data->times.back();
  tf.samples_ = std::move(data);
  tf.name_ = std::move(name);
  return tf;
}

int TrajectoryField::fd_order() const {
  if (backend_ != Backend::sampled || samples_->has_jets()) return 0;
  return samples_->fd_order;
}

bool TrajectoryField::contains(const Vec3d& a, double t) const {
  const double slack_t = 1e-12 * (1.0 + std::abs(t0_) + std::abs(t1_));
  if (t < t0_ - slack_t || t > t1_ + slack_t) return false;
  for (int d = 0; d < 3; ++d) {
    const double slack = 1e-12 * (1.0 + std::abs(a[d]));
    if (a[d] < domain_.lo[d] - slack || a[d] > domain_.hi[d] + slack) return false;
  }
  return true;
}

void TrajectoryField::check_domain(const Vec3d& a, double t) const {
  if (!contains(a, t))
    throw DomainError("trajectory field '" + name_ + "': query (" + std::to_string(a[0]) + "," +
                      std::to_string(a[1]) + "," + std::to_string(a[2]) + "; t=" + std::to_string(t) +
                      ") outside domain");
}

JetVec<double> TrajectoryField::jet(const Vec3d& a, double t) const {
  check_domain(a, t);
  if (backend_ == Backend::sampled) return sampled_jet(a, t);
  auto [aj, tj] = coordinate_jets(a, t);
  return map_(aj, tj);
}

JetVec<Rational> TrajectoryField::exact_jet(const Vec3<Rational>& a, const Rational& t) const {
  if (backend_ != Backend::polynomial) throw std::logic_error("exact jets require the polynomial backend");
  check_domain(Vec3d(a[0].get_d(), a[1].get_d(), a[2].get_d()), t.get_d());
  auto [aj, tj] = coordinate_jets(a, t);
  JetVec<Rational> r;
  for (int i = 0; i < 3; ++i) r[i] = (*polys_)[i].evaluate<RJet>({aj[0], aj[1], aj[2], tj});
  return r;
}

State TrajectoryField::eval_state(const Vec3d& a, double t) const {
  const auto j = jet(a, t);
  State s;
  for (int i = 0; i < 3; ++i) {
    s.x[i] = j[i].value();
    s.xdot[i] = j[i].partial({0, 0, 0, 1});
    s.xddot[i] = j[i].partial({0, 0, 0, 2});
  }
  return s;
}

Vec3d TrajectoryField::position(const Vec3d& a, double t) const { return values(jet(a, t)); }

// ------------------------------------------------------------------ sampled

JetVec<double> TrajectoryField::node_jet(std::size_t node, std::size_t slice) const {
  if (samples_->has_jets()) return samples_->jets[slice][node];
  return finite_difference_jet(*samples_, node, slice);
}

namespace {

struct AxisBracket {
  int i0 = 0, i1 = 0;
  double w1 = 0.0;      // weight of i1
  double shift0 = 0.0;  // periodic displacement added to the value at i0
  double shift1 = 0.0;
};

bool near(double x, double y) { return std::abs(x - y) <= 1e-12 * (1.0 + std::abs(x)); }

AxisBracket bracket(const GridAxis& ax, double a) {
  AxisBracket b;
  const int n = ax.size();
  if (ax.periodic) {
    const double lo = ax.coords.front();
    const double wraps = std::floor((a - lo) / ax.period);
    double r = a - wraps * ax.period;
    b.shift0 = b.shift1 = wraps * ax.period;
    for (int i = 0; i < n; ++i)
      if (near(ax.coords[i], r)) {
        b.i0 = b.i1 = i;
        return b;
      }
    auto it = std::upper_bound(ax.coords.begin(), ax.coords.end(), r);
    b.i0 = static_cast<int>(it - ax.coords.begin()) - 1;
    b.i1 = b.i0 + 1;
    double c1;
    if (b.i1 == n) {
      b.i1 = 0;
      b.shift1 += ax.period;
      c1 = ax.coords.front() + ax.period;
    } else {
      c1 = ax.coords[b.i1];
    }
    b.w1 = (r - ax.coords[b.i0]) / (c1 - ax.coords[b.i0]);
    return b;
  }
  for (int i = 0; i < n; ++i)
    if (near(ax.coords[i], a)) {
      b.i0 = b.i1 = i;
      return b;
    }
  auto it = std::upper_bound(ax.coords.begin(), ax.coords.end(), a);
  b.i0 = std::clamp(static_cast<int>(it - ax.coords.begin()) - 1, 0, n - 2);
  b.i1 = b.i0 + 1;
  b.w1 = (a - ax.coords[b.i0]) / (ax.coords[b.i1] - ax.coords[b.i0]);
  return b;
}

}  // namespace

JetVec<double> TrajectoryField::sampled_jet(const Vec3d& a, double t) const {
  const auto& s = *samples_;
  std::array<AxisBracket, 3> br;
  for (int d = 0; d < 3; ++d) br[d] = bracket(s.grid.axis(d), a[d]);

  // time bracket
  std::size_t n0 = 0, n1 = 0;
  double wt1 = 0.0;
  {
    const auto& ts = s.times;
    bool exact = false;
    for (std::size_t n = 0; n < ts.size(); ++n)
      if (near(ts[n], t)) {
        n0 = n1 = n;
        exact = true;
        break;
      }
    if (!exact) {
      auto it = std::upper_bound(ts.begin(), ts.end(), t);
      n0 = static_cast<std::size_t>(std::clamp<long>(static_cast<long>(it - ts.begin()) - 1, 0,
                                                     static_cast<long>(ts.size()) - 2));
      n1 = n0 + 1;
      wt1 = (t - ts[n0]) / (ts[n1] - ts[n0]);
    }
  }

  JetVec<double> out;
  bool first = true;
  for (int c0 = 0; c0 < 2; ++c0) {
    const double w0 = c0 ? br[0].w1 : 1.0 - br[0].w1;
    if (w0 == 0.0) continue;
    for (int c1 = 0; c1 < 2; ++c1) {
      const double w1 = c1 ? br[1].w1 : 1.0 - br[1].w1;
      if (w1 == 0.0) continue;
      for (int c2 = 0; c2 < 2; ++c2) {
        const double w2 = c2 ? br[2].w1 : 1.0 - br[2].w1;
        if (w2 == 0.0) continue;
        const int i = c0 ? br[0].i1 : br[0].i0;
        const int j = c1 ? br[1].i1 : br[1].i0;
        const int k = c2 ? br[2].i1 : br[2].i0;
        const Vec3d shift(c0 ? br[0].shift1 : br[0].shift0, c1 ? br[1].shift1 : br[1].shift0,
                          c2 ? br[2].shift1 : br[2].shift0);
        const std::size_t node = s.grid.flat(i, j, k);
        for (int ct = 0; ct < 2; ++ct) {
          const double wt = ct ? wt1 : 1.0 - wt1;
          if (wt == 0.0) continue;
          const std::size_t slice = ct ? n1 : n0;
          JetVec<double> nj = node_jet(node, slice);
          const double w = w0 * w1 * w2 * wt;
          for (int q = 0; q < 3; ++q) {
            DJet term = w * (nj[q] + shift[q]);
            if (first)
              out[q] = term;
            else
              out[q] += term;
          }
          first = false;
        }
      }
    }
  }
  return out;
}

JetVec<double> finite_difference_jet(const SampledTrajectories& s, std::size_t node, std::size_t slice) {
  const auto& tb = jet_detail::kTables;
  const auto idx = s.grid.unflat(node);
  const int p = s.fd_order;

  struct Stencil {
    std::vector<int> index;      // wrapped node index (or slice)
    std::vector<double> shift;   // periodic displacement of the value along this axis
    std::vector<double> weight;
  };
  // stencils[axis][order]
  std::array<std::array<Stencil, 4>, 4> stencils;
  for (int d = 0; d < 4; ++d) {
    for (int m = 0; m <= 3; ++m) {
      Stencil st;
      if (d < 3) {
        const auto& ax = s.grid.axis(d);
        const int n = ax.size();
        const int i = idx[d];
        const auto off = fd::stencil_offsets(i, n, m, p, ax.periodic);
        std::vector<double> x;
        for (int o : off) {
          int k = i + o;
          double sh = 0.0;
          if (ax.periodic) {
            const int w = (k >= 0) ? k / n : -((-k + n - 1) / n);
            k -= w * n;
            sh = w * ax.period;
          } else if (k < 0 || k >= n) {
            throw ConfigError("sampled field: grid too small for finite-difference stencil");
          }
          st.index.push_back(k);
          st.shift.push_back(sh);
          x.push_back(ax.coords[k] + sh);
        }
        st.weight = fd::weights(ax.coords[i], x, m);
      } else {
        const int n = static_cast<int>(s.times.size());
        const int i = static_cast<int>(slice);
        if (m > 0 && n < m + p) {
          // not enough slices for this time derivative; leave it undetermined
          st.weight.clear();
        } else {
          const auto off = fd::stencil_offsets(i, n, m, p, false);
          std::vector<double> x;
          for (int o : off) {
            st.index.push_back(i + o);
            st.shift.push_back(0.0);
            x.push_back(s.times[i + o]);
          }
          st.weight = fd::weights(s.times[i], x, m);
        }
      }
      stencils[d][m] = std::move(st);
    }
  }

  JetVec<double> out;
  for (int kk = 0; kk < jet_detail::kSize; ++kk) {
    const auto& e = tb.exps[kk];
    const auto& s0 = stencils[0][e[0]];
    const auto& s1 = stencils[1][e[1]];
    const auto& s2 = stencils[2][e[2]];
    const auto& s3 = stencils[3][e[3]];
    if (s3.weight.empty()) continue;
    Vec3d acc;
    for (std::size_t q0 = 0; q0 < s0.weight.size(); ++q0)
      for (std::size_t q1 = 0; q1 < s1.weight.size(); ++q1)
        for (std::size_t q2 = 0; q2 < s2.weight.size(); ++q2) {
          const std::size_t nd = s.grid.flat(s0.index[q0], s1.index[q1], s2.index[q2]);
          const Vec3d shift(s0.shift[q0], s1.shift[q1], s2.shift[q2]);
          const double wa = s0.weight[q0] * s1.weight[q1] * s2.weight[q2];
          for (std::size_t q3 = 0; q3 < s3.weight.size(); ++q3) {
            const double w = wa * s3.weight[q3];
            const Vec3d& x = s.positions[s3.index[q3]][nd];
            for (int c = 0; c < 3; ++c) acc[c] += w * (x[c] + shift[c]);
          }
        }
    for (int c = 0; c < 3; ++c) out[c].coeff(kk) = acc[c] / tb.factorial[kk];
  }
  return out;
}

}  // namespace cauchy
