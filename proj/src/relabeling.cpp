#include <cmath>
#include <limits>

#include "cauchy/parallel.hpp"
#include "cauchy/variational.hpp"

namespace cauchy {

namespace {

double scalar_value(double x) { return x; }
double scalar_value(const DJet& x) { return x.value(); }

Mat3d inverse(const Mat3d& m) { return (1.0 / determinant(m)) * transpose(cofactor(m)); }

std::string label_text(const Vec3d& a) {
  return "(" + std::to_string(a[0]) + ", " + std::to_string(a[1]) + ", " + std::to_string(a[2]) + ")";
}

}  // namespace

// ---- generators -------------------------------------------------------------------

RelabelGenerator RelabelGenerator::curl_form(VectorField dR, std::string name) {
  RelabelGenerator g;
  g.form = Form::curl;
  g.dR = std::move(dR);
  g.name = std::move(name);
  return g;
}

RelabelGenerator RelabelGenerator::pair_form(ScalarField R1, ScalarField R2, std::string name) {
  RelabelGenerator g;
  g.form = Form::pair;
  g.R1 = std::move(R1);
  g.R2 = std::move(R2);
  g.name = std::move(name);
  return g;
}

RelabelGenerator RelabelGenerator::direct(VectorField da, std::string name) {
  RelabelGenerator g;
  g.form = Form::direct;
  g.da = std::move(da);
  g.name = std::move(name);
  return g;
}

RelabelGenerator RelabelGenerator::bump(const Vec3d& c, double r) {
  if (!(r > 0)) throw ConfigError("bump radius must be positive");
  auto b = [c, r](const auto& p, const auto&) {
    using S = std::decay_t<decltype(p[0])>;
    S prod = S(1.0);
    for (int i = 0; i < 3; ++i) {
      const double sv = (scalar_value(p[i]) - c[i]) / r;
      if (std::abs(sv) >= 1.0) return Vec3<S>(S(0.0), S(0.0), S(0.0));
      const S s = (p[i] - c[i]) * (1.0 / r);
      const S q = S(1.0) - s * s;
      const S q2 = q * q;
      prod = prod * (q2 * q2);
    }
    return Vec3<S>(S(0.0), S(0.0), prod);
  };
  return curl_form(VectorField::from_expr(b, true), "bump");
}

Vec3d relabel_delta_a(const RelabelGenerator& g, const Vec3d& a) { return values(relabel_delta_a_jet(g, a)); }

Vec3<Rational> relabel_delta_a_exact(const RelabelGenerator& g, const Vec3<Rational>& a) {
  return values(relabel_delta_a_jet(g, a));
}

Mat3d relabel_delta_a_gradient(const RelabelGenerator& g, const Vec3d& a) {
  return jacobian_values(relabel_delta_a_jet(g, a));
}

double relabel_divergence(const RelabelGenerator& g, const Vec3d& a) {
  const Mat3d G = relabel_delta_a_gradient(g, a);
  return G(0, 0) + G(1, 1) + G(2, 2);
}

Vec3d relabel_potential(const RelabelGenerator& g, const Vec3d& a) {
  switch (g.form) {
    case RelabelGenerator::Form::curl:
      return g.dR.value(a, 0.0);
    case RelabelGenerator::Form::pair:
      return g.R1.value(a, 0.0) * grad_label(g.R2, a, 0.0);
    case RelabelGenerator::Form::direct:
      break;
  }
  throw ConfigError("generator '" + g.name + "' has no vector potential");
}

// ---- relabelled action ------------------------------------------------------------

namespace {

/// Per-node terms w_q w_i L(a~, t) det(I + eps grad da).
std::vector<double> relabeled_terms(const TrajectoryField& f, const FlowMaterial& m, const RelabelGenerator& g,
                                    const TimeWindow& w, const LabelGrid& grid, double eps) {
  const auto tr = w.rule();
  const std::size_t n = grid.size(), nt = tr.nodes.size();
  // label displacement and volume factor are time independent
  std::vector<Vec3d> moved(n);
  std::vector<double> vol(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3d a = grid.label(i);
    const auto d = relabel_delta_a_jet(g, a);
    moved[i] = a + eps * values(d);
    vol[i] = determinant(Mat3d::identity() + eps * jacobian_values(d));
    if (!(vol[i] > 0)) throw PhysicsError("relabelling folds the domain at " + label_text(a));
  }
  return parallel_map<double>(n * nt, [&](std::size_t k) {
    const std::size_t i = k / nt, q = k % nt;
    return tr.weights[q] * grid.weight(i) * vol[i] * lagrangian_density(f, m, moved[i], tr.nodes[q]);
  });
}

}  // namespace

double relabeled_action(const TrajectoryField& f, const FlowMaterial& m, const RelabelGenerator& g,
                        const TimeWindow& w, const LabelGrid& grid, double eps) {
  return quad::pairwise_sum(relabeled_terms(f, m, g, w, grid, eps));
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int k = 0;
  for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
    if (!(x[i] > 0 && y[i] > 0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++k;
  }
  if (k < 2) return std::numeric_limits<double>::quiet_NaN();
  return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

ScanResult relabeling_invariance_scan(const TrajectoryField& f, const FlowMaterial& m, const RelabelGenerator& g,
                                      const TimeWindow& w, const LabelGrid& grid, const std::vector<double>& eps_list) {
  ScanResult r;
  r.generator = g.name;
  const auto base = relabeled_terms(f, m, g, w, grid, 0.0);
  r.action0 = quad::pairwise_sum(base);
  for (std::size_t i = 0; i < grid.size(); ++i)
    r.max_divergence = std::max(r.max_divergence, std::abs(relabel_divergence(g, grid.label(i))));
  std::vector<double> xs, ys;
  for (double eps : eps_list) {
    auto terms = relabeled_terms(f, m, g, w, grid, eps);
    const double s = quad::pairwise_sum(terms);
    // difference summed termwise keeps it above the rounding floor of S itself
    for (std::size_t k = 0; k < terms.size(); ++k) terms[k] -= base[k];
    const double d = std::abs(quad::pairwise_sum(terms));
    r.rows.push_back({eps, s, d});
    if (eps > 0) {
      xs.push_back(eps);
      ys.push_back(d);
    }
  }
  r.slope = loglog_slope(xs, ys);
  // no measurable change at all is exact invariance, not a failure
  r.flagged = !std::isnan(r.slope) && r.slope < 1.9;
  return r;
}

// ---- pullback through the relabelling ---------------------------------------------

RelabeledField::RelabeledField(TrajectoryField f, RelabelGenerator g, double eps)
    : f_(std::move(f)), g_(std::move(g)), eps_(eps) {}

Vec3d RelabeledField::original_label(const Vec3d& b) const {
  Vec3d a = b - eps_ * relabel_delta_a(g_, b);
  for (int it = 0; it < 50; ++it) {
    const auto d = relabel_delta_a_jet(g_, a);
    const Vec3d r = a + eps_ * values(d) - b;
    if (norm(r) <= 1e-15 * (1.0 + norm(b))) return a;
    a = a - inverse(Mat3d::identity() + eps_ * jacobian_values(d)) * r;
  }
  const Vec3d r = a + eps_ * relabel_delta_a(g_, a) - b;
  if (norm(r) > 1e-13 * (1.0 + norm(b))) throw PhysicsError("relabelling inversion did not converge");
  return a;
}

Vec3d RelabeledField::position(const Vec3d& b, double t) const { return f_.position(original_label(b), t); }

PullbackCheck relabel_pullback_check(const TrajectoryField& f, const RelabelGenerator& g, double eps,
                                     const ScalarField& psi, const Vec3d& a, double t, double h) {
  const RelabeledField rf(f, g, eps);
  const auto d = relabel_delta_a_jet(g, a);
  const Vec3d b = a + eps * values(d);
  const State s = f.eval_state(a, t);
  PullbackCheck c;
  c.scalar = std::abs(psi.value(rf.position(b, t), t) - psi.value(s.x, t));

  auto d4 = [h](const Vec3d& m2, const Vec3d& m1, const Vec3d& p1, const Vec3d& p2) {
    return (1.0 / (12 * h)) * (m2 - 8.0 * m1 + 8.0 * p1 - p2);
  };
  const Vec3d v = d4(rf.position(b, t - 2 * h), rf.position(b, t - h), rf.position(b, t + h), rf.position(b, t + 2 * h));
  c.velocity = norm(v - s.xdot);

  Mat3d Jt;
  for (int j = 0; j < 3; ++j) {
    Vec3d e;
    e[j] = h;
    const Vec3d col = d4(rf.position(b - 2.0 * e, t), rf.position(b - e, t), rf.position(b + e, t),
                         rf.position(b + 2.0 * e, t));
    for (int i = 0; i < 3; ++i) Jt(i, j) = col[i];
  }
  const double vol = determinant(Mat3d::identity() + eps * jacobian_values(d));
  c.volume = std::abs(determinant(Jt) * vol - jacobian(f, a, t).Jdet);
  return c;
}

// ---- weak form ------------------------------------------------------------------------

WeakForm weak_form_integral(const TrajectoryField& f, const FlowMaterial& m, const std::optional<ScalarField>& pressure,
                            const RelabelGenerator& g, const TimeWindow& w, const LabelGrid& grid) {
  const auto tr = w.rule();
  const std::size_t n = grid.size(), nt = tr.nodes.size();
  std::vector<Vec3d> dR(n);
  for (std::size_t i = 0; i < n; ++i) dR[i] = relabel_potential(g, grid.label(i));
  const auto terms = parallel_map<std::array<double, 2>>(n * nt, [&](std::size_t k) {
    const std::size_t i = k / nt, q = k % nt;
    const Vec3d a = grid.label(i);
    const double t = tr.nodes[q], wt = tr.weights[q] * grid.weight(i);
    const Vec3d R = momentum_residual<double>(f, m, pressure, a, t);
    const Vec3d dx = local_variation<double>(f, g, a, t);
    const double mass = mass_density_jet(f, m, a).value();
    return std::array<double, 2>{wt * dot(R, dx), -wt * mass * dot(cauchy_residual<double>(f, a, t), dR[i])};
  });
  std::vector<double> l(terms.size()), r(terms.size());
  for (std::size_t k = 0; k < terms.size(); ++k) {
    l[k] = terms[k][0];
    r[k] = terms[k][1];
  }
  return {quad::pairwise_sum(l), quad::pairwise_sum(r)};
}

}  // namespace cauchy
