#include "cauchy/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cauchy/flows.hpp"
#include "cauchy/grid_io.hpp"
#include "cauchy/parallel.hpp"
#include "cauchy/theorems.hpp"

namespace cauchy::cli {

namespace {

using ojson = nlohmann::ordered_json;

class HelpRequested : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
  return s;
}

// ---- problem setup ---------------------------------------------------------------

struct Problem {
  Fixture fx;
  std::vector<double> times;
  double tol = 1e-8;
  bool sampled = false;
  std::vector<std::pair<std::string, std::string>> provenance;
};

bool is_integrated(const std::string& name) { return name == "abc" || name == "taylor-green"; }

/// Stored slice times within [t0, t1], thinned to at most nt evenly spread ones.
std::vector<double> slice_times(const SampledTrajectories& s, double t0, double t1, int nt) {
  std::vector<double> in;
  for (double t : s.times)
    if (t >= t0 - 1e-12 && t <= t1 + 1e-12) in.push_back(t);
  if (in.size() < 2) throw UsageError("time window contains fewer than two stored slices");
  if (static_cast<int>(in.size()) <= nt) return in;
  std::vector<double> out;
  for (int k = 0; k < nt; ++k) out.push_back(in[static_cast<std::size_t>(std::llround(k * (in.size() - 1.0) / (nt - 1)))]);
  return out;
}

Fixture build_fixture(const RunConfig& cfg, std::optional<double> dt_override) {
  if (!cfg.grid_file.empty()) {
    auto data = grid_io::load(cfg.grid_file);
    data.fd_order = cfg.fd_order;
    Fixture fx;
    fx.name = "grid-file";
    fx.params = {};
    fx.grid = data.grid;
    fx.field = TrajectoryField::sampled(std::make_shared<const SampledTrajectories>(std::move(data)), cfg.grid_file);
    fx.material = FlowMaterial::standard(0.0);
    fx.time_scale = fx.field.t1() - fx.field.t0();
    fx.description = "trajectories from " + cfg.grid_file;
    return fx;
  }
  auto spec = FixtureSpec::parse(cfg.fixture);
  if (cfg.grid != 0) spec.params["n"] = cfg.grid;
  if (dt_override) {
    if (!is_integrated(spec.name)) throw UsageError("--dt only applies to integrated fixtures (abc, taylor-green)");
    spec.params["dt"] = *dt_override;
  }
  return make_fixture(spec);
}

Problem build_problem(const RunConfig& cfg, std::optional<double> dt_override = std::nullopt) {
  if (cfg.grid != 0 && cfg.grid < 2) throw UsageError("--grid needs at least 2 nodes per axis");
  if (cfg.grid != 0 && !cfg.grid_file.empty()) throw UsageError("--grid conflicts with --grid-file");
  if (cfg.nt < 2) throw UsageError("--nt must be at least 2");
  if (cfg.fd_order != 2 && cfg.fd_order != 4) throw UsageError("--fd-order must be 2 or 4");
  if (cfg.tol && !(*cfg.tol > 0)) throw UsageError("--tol must be positive");
  Problem p;
  p.fx = build_fixture(cfg, dt_override);
  const auto& f = p.fx.field;
  p.sampled = f.backend() == Backend::sampled;
  const double t0 = cfg.t0.value_or(f.t0());
  const double t1 = cfg.t1.value_or(p.sampled ? f.t1() : std::min(f.t1(), t0 + p.fx.time_scale));
  if (!(t0 < t1)) throw UsageError("need t0 < t1");
  if (t0 < f.t0() - 1e-12 || t1 > f.t1() + 1e-12)
    throw UsageError("time window [" + format_number(t0) + ", " + format_number(t1) + "] outside the field's [" +
                     format_number(f.t0()) + ", " + format_number(f.t1()) + "]");
  p.times = p.sampled ? slice_times(*f.samples(), t0, t1, cfg.nt) : linspace(t0, t1, cfg.nt);
  p.tol = cfg.tol.value_or(p.sampled ? 1e-5 : 1e-8);

  auto& pv = p.provenance;
  pv.emplace_back("fixture", p.fx.name);
  for (const auto& [k, v] : p.fx.params) pv.emplace_back("param." + k, format_number(v));
  pv.emplace_back("backend", to_string(f.backend()));
  pv.emplace_back("grid", p.fx.grid.describe());
  pv.emplace_back("t0", format_number(p.times.front()));
  pv.emplace_back("t1", format_number(p.times.back()));
  pv.emplace_back("nt", std::to_string(p.times.size()));
  pv.emplace_back("fd_order", p.sampled && f.fd_order() == 0 ? "jets" : std::to_string(cfg.fd_order));
  pv.emplace_back("tolerance", format_number(p.tol));
  pv.emplace_back("seed", std::to_string(cfg.seed));
  return p;
}

/// Up to ~200 grid nodes spread over the grid.
std::vector<Vec3d> sample_labels(const LabelGrid& g) {
  const std::size_t stride = std::max<std::size_t>(1, g.size() / 200);
  std::vector<Vec3d> out;
  for (std::size_t i = stride / 2; i < g.size(); i += stride) out.push_back(g.label(i));
  return out;
}

Vec3d grid_lo(const LabelGrid& g) { return {g.axis(0).lower(), g.axis(1).lower(), g.axis(2).lower()}; }
Vec3d grid_hi(const LabelGrid& g) { return {g.axis(0).upper(), g.axis(1).upper(), g.axis(2).upper()}; }
bool grid_periodic(const LabelGrid& g) { return g.axis(0).periodic && g.axis(1).periodic && g.axis(2).periodic; }

/// max over labels x times of q(a, t).
double max_over(const std::vector<Vec3d>& labels, const std::vector<double>& times,
                const std::function<double(const Vec3d&, double)>& q) {
  const auto vals = parallel_map<double>(labels.size() * times.size(), [&](std::size_t k) {
    return q(labels[k / times.size()], times[k % times.size()]);
  });
  double m = 0;
  for (double v : vals) m = std::max(m, std::isnan(v) ? INFINITY : v);
  return m;
}

CheckResult threshold(std::string name, double value, double tol) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.tolerance = tol;
  c.pass = value <= tol;
  return c;
}

CheckResult from_drift(std::string name, DriftReport rep, double tol) {
  rep.tolerance = tol;
  CheckResult c = threshold(std::move(name), rep.max_drift(), tol);
  c.drift = std::move(rep);
  return c;
}

LabelLoop default_loop(const Problem& p) {
  const auto& g = p.fx.grid;
  if (grid_periodic(g)) {
    // winds once around the box through grid nodes only, so sampled fields
    // are never interpolated; the periodic trapezoid rule is spectral here
    const auto sh = g.shape();
    const Vec3d start = g.label(g.flat(0, sh[1] / 2, sh[2] / 2));
    return LabelLoop::periodic_line(start, Vec3d(g.axis(0).period, 0, 0), sh[0]);
  }
  const Vec3d lo = grid_lo(p.fx.grid), hi = grid_hi(p.fx.grid);
  const Vec3d c = 0.5 * (lo + hi);
  double r = INFINITY;
  for (int d = 0; d < 3; ++d) r = std::min(r, 0.25 * (hi[d] - lo[d]));
  // loop plane normal to Omega at the centre (e3 when Omega vanishes)
  Vec3d n = lagrangian_vorticity(p.fx.field, c, p.times.front());
  if (norm(n) < 1e-12) n = Vec3d(0, 0, 1);
  n = (1.0 / norm(n)) * n;
  const Vec3d trial = std::abs(n[0]) < 0.9 ? Vec3d(1, 0, 0) : Vec3d(0, 1, 0);
  Vec3d e1 = trial - dot(trial, n) * n;
  e1 = (1.0 / norm(e1)) * e1;
  const Vec3d e2 = cross(n, e1);
  return LabelLoop::circle(c, r, e1, e2, 128);
}

LabelRegion default_region(const Problem& p) {
  if (grid_periodic(p.fx.grid)) return LabelRegion::periodic_cell(p.fx.grid);
  return LabelRegion::box(grid_lo(p.fx.grid), grid_hi(p.fx.grid), 8);
}

// ---- suites -----------------------------------------------------------------------

CheckResult kinematics_check(const Problem& p, const std::vector<Vec3d>& labels) {
  const auto& f = p.fx.field;
  const std::vector<double> ts{p.times.front(), p.times[p.times.size() / 2], p.times.back()};
  const double v = max_over(labels, ts, [&](const Vec3d& a, double t) {
    const Mat3d r4 = check_A4(f, a, t);
    double m = norm(check_A5(f, a, t));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(r4(i, j)));
    return m;
  });
  auto c = threshold("kinematic-identities", v, p.tol);
  c.detail["identities"] = "inverse-jacobian rate, kinetic-energy gradient";
  return c;
}

CheckResult beltrami_check(const Problem& p, const std::vector<Vec3d>& labels) {
  const auto& f = p.fx.field;
  std::vector<double> inner(p.times.begin() + 1, p.times.end() - 1);
  if (inner.empty()) inner.push_back(0.5 * (p.times.front() + p.times.back()));
  double h = 1e-3 * p.fx.time_scale;
  if (p.sampled) {
    // steps on the stored slices: one and two slice spacings
    const auto& st = f.samples()->times;
    h = 2 * (st[1] - st[0]);
  }
  const double gap = std::min(inner.front() - p.times.front(), p.times.back() - inner.back());
  if (h > gap) h = gap;
  auto run = [&](double step) {
    return max_over(labels, inner,
                    [&](const Vec3d& a, double t) { return norm(beltrami_residual(f, p.fx.material, a, t, step)); });
  };
  const double r1 = run(h), r2 = run(0.5 * h);
  const double order = (r1 > 0 && r2 > 0) ? std::log2(r1 / r2) : 0.0;
  auto c = threshold("beltrami", r2, p.tol);
  // a residual above tolerance that shrinks at the declared second order is
  // finite-difference error, not a violation
  if (!c.pass && order >= 1.8 && r2 < 1e-2) c.pass = true;
  c.detail["dt_fd"] = format_number(h);
  c.detail["residual_dt_fd"] = format_number(r1);
  c.detail["residual_half_dt_fd"] = format_number(r2);
  c.detail["observed_order"] = format_number(order);
  return c;
}

// ---- action helpers ------------------------------------------------------------------

RelabelGenerator make_generator(const std::string& name, const Problem& p) {
  const Vec3d lo = grid_lo(p.fx.grid), hi = grid_hi(p.fx.grid), c = 0.5 * (lo + hi);
  if (name == "bump") {
    double r = INFINITY;
    for (int d = 0; d < 3; ++d) r = std::min(r, 0.4 * (hi[d] - lo[d]));
    return RelabelGenerator::bump(c, r);
  }
  if (name == "xy") {
    const Polynomial x = Polynomial::variable(0) - Polynomial(Rational(c[0]));
    const Polynomial y = Polynomial::variable(1) - Polynomial(Rational(c[1]));
    return RelabelGenerator::curl_form(VectorField::from_polynomials({Polynomial(0), Polynomial(0), x * y}), "xy");
  }
  if (name == "dilating") {
    std::array<Polynomial, 3> d;
    for (int i = 0; i < 3; ++i) d[i] = Polynomial::variable(i) - Polynomial(Rational(c[i]));
    return RelabelGenerator::direct(VectorField::from_polynomials(d), "dilating");
  }
  throw UsageError("unknown generator '" + name + "' (bump, xy, dilating)");
}

// ---- report serialisation --------------------------------------------------------

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

bool Report::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::string Report::to_json() const {
  ojson j;
  j["schema"] = kReportSchema;
  j["command"] = command;
  j["artifact"] = {{"name", kArtifactName}, {"version", kArtifactVersion}};
  ojson cfg = ojson::object();
  for (const auto& [k, v] : config) cfg[k] = v;
  j["config"] = cfg;
  j["pass"] = pass();
  ojson arr = ojson::array();
  for (const auto& c : checks) {
    ojson o;
    o["name"] = c.name;
    o["value"] = c.value;
    o["tolerance"] = c.tolerance;
    o["pass"] = c.pass;
    ojson d = ojson::object();
    for (const auto& [k, v] : c.detail) d[k] = v;
    o["detail"] = d;
    if (c.drift) o["drift"] = c.drift->to_json();
    arr.push_back(o);
  }
  j["checks"] = arr;
  return j.dump(2) + "\n";
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << "# schema=" << kReportSchema << " command=" << command << " artifact=" << kArtifactName << "/"
     << kArtifactVersion << "\n";
  for (const auto& [k, v] : config) os << "# " << k << "=" << v << "\n";
  os << "check,kind,t,value,max_dev,l2_dev,tolerance,pass\n";
  for (const auto& c : checks) {
    os << c.name << ",summary,," << format_number(c.value) << ",,," << format_number(c.tolerance) << ","
       << bool_text(c.pass) << "\n";
    if (c.drift)
      for (const auto& r : c.drift->rows)
        os << c.name << ",row," << format_number(r.t) << "," << format_number(r.value) << ","
           << format_number(r.max_dev) << "," << format_number(r.l2_dev) << ",,\n";
  }
  return os.str();
}

// ---- commands -------------------------------------------------------------------------

Report cmd_verify(const RunConfig& cfg) {
  const Problem p = build_problem(cfg, cfg.dt.empty() ? std::nullopt : std::optional<double>(cfg.dt.front()));
  const auto& f = p.fx.field;
  const auto& m = p.fx.material;
  const auto labels = sample_labels(p.fx.grid);
  Report r;
  r.command = "verify";
  r.config = p.provenance;

  r.checks.push_back(kinematics_check(p, labels));
  r.checks.push_back(from_drift("cauchy-drift", cauchy_drift(f, p.fx.grid, p.times), p.tol));

  // trajectories read from a file carry no pressure, so the momentum
  // equation cannot be checked for them
  if (p.fx.name != "grid-file") {
    auto mom = threshold("momentum", max_over(labels, p.times, [&](const Vec3d& a, double t) {
                           return norm(momentum_residual<double>(f, m, p.fx.pressure, a, t));
                         }), p.tol);
    mom.detail["pressure"] = p.fx.pressure ? "closed form" : "equation of state (" + m.eos.name() + ")";
    r.checks.push_back(mom);
  } else {
    r.config.emplace_back("momentum", "skipped: no pressure for file trajectories");
  }

  r.checks.push_back(threshold("dalembert-euler", max_over(labels, p.times, [&](const Vec3d& a, double t) {
                                 return norm(dalembert_euler_residual(f, a, t));
                               }), p.tol));
  r.checks.push_back(beltrami_check(p, labels));

  const auto S = ScalarField::from_polynomial(Polynomial::variable(2));
  auto ertel = from_drift("ertel-drift", ertel_drift(f, m, S, p.fx.grid, p.times), p.tol);
  ertel.detail["S"] = "a3";
  r.checks.push_back(ertel);

  const auto loop = default_loop(p);
  auto circ = circulation_drift(f, loop, p.times);
  const double gscale = std::max(1.0, std::abs(circ.rows.front().value));
  r.checks.push_back(from_drift("circulation-drift", circ, p.tol * gscale));

  const auto region = default_region(p);
  auto hel = helicity_drift(f, region, p.times);
  const double hscale = std::max(1.0, std::abs(hel.rows.front().value));
  auto hc = from_drift("helicity-drift", hel, p.tol * hscale);
  hc.detail["boundary"] = region.periodic ? "periodic" : "box faces";
  if (!region.periodic) {
    const auto tg = boundary_tangency(f, region, p.times.front());
    hc.detail["vorticity_tangent_to_boundary"] = bool_text(tg.max_abs <= p.tol);
  }
  r.checks.push_back(hc);
  return r;
}

Report cmd_identities(const RunConfig& cfg) {
  if (cfg.trials < 0) throw UsageError("--trials must be nonnegative");
  Report r;
  r.command = "identities";
  r.config = {{"trials", std::to_string(cfg.trials)}, {"seed", std::to_string(cfg.seed)},
              {"fields", "random polynomial maps, degree <= 3, rational coefficients"}};
  if (cfg.trials == 0) return r;
  const auto b = run_identity_battery(cfg.trials, cfg.seed);
  auto add = [&](const char* name, int zeros) {
    CheckResult c;
    c.name = name;
    c.value = zeros;
    c.tolerance = cfg.trials;
    c.pass = zeros == cfg.trials;
    c.detail["exact_zeros"] = std::to_string(zeros) + "/" + std::to_string(cfg.trials);
    r.checks.push_back(c);
  };
  add("jacobian-rate", b.a3_zero);
  add("inverse-jacobian-rate", b.a4_zero);
  add("kinetic-energy-gradient", b.a5_zero);
  add("curl-pullback", b.prop_a1_zero);
  add("vector-identity", b.vector_identity_zero);
  r.config.emplace_back("singular_draws_resampled", std::to_string(b.resampled));
  return r;
}

Report cmd_action(const RunConfig& cfg) {
  const Problem p = build_problem(cfg, cfg.dt.empty() ? std::nullopt : std::optional<double>(cfg.dt.front()));
  const auto& f = p.fx.field;
  const auto& m = p.fx.material;
  const bool all = !cfg.scan && !cfg.weak && !cfg.rt;
  const TimeWindow w{p.times.front(), p.times.back(), 4, 2};
  Report r;
  r.command = "action";
  r.config = p.provenance;
  r.config.emplace_back("generator", cfg.generator);
  r.config.emplace_back("eps", join(kDefaultEpsList));
  const auto gen = make_generator(cfg.generator, p);

  CheckResult s;
  s.name = "action";
  s.value = action(f, m, w, p.fx.grid);
  s.pass = std::isfinite(s.value);
  r.checks.push_back(s);

  if (all || cfg.scan) {
    const auto scan = relabeling_invariance_scan(f, m, gen, w, p.fx.grid);
    CheckResult c;
    c.name = "relabeling-scan";
    c.value = std::isnan(scan.slope) ? 0.0 : scan.slope;
    const bool divfree = gen.form != RelabelGenerator::Form::direct;
    c.tolerance = divfree ? 1.9 : 1.2;
    // a divergence-free generator must leave the action invariant to first
    // order; the deliberately divergent one must be caught
    c.pass = divfree ? !scan.flagged : scan.flagged;
    c.detail["slope"] = std::isnan(scan.slope) ? "exact (no change at any eps)" : format_number(scan.slope);
    c.detail["flagged_non_symmetry"] = bool_text(scan.flagged);
    c.detail["max_divergence"] = format_number(scan.max_divergence);
    for (const auto& row : scan.rows) c.detail["diff_eps_" + format_number(row.eps)] = format_number(row.diff);
    r.checks.push_back(c);
  }
  if (all || cfg.weak) {
    if (gen.form == RelabelGenerator::Form::direct) throw UsageError("the weak form needs a curl-form generator");
    const auto grid = grid_periodic(p.fx.grid) ? p.fx.grid : LabelGrid::box_gauss(grid_lo(p.fx.grid), grid_hi(p.fx.grid), 6, 2);
    const auto wf = weak_form_integral(f, m, p.fx.pressure, gen, w, grid);
    const double gap = std::abs(wf.lhs - wf.rhs);
    const double rel = gap / (std::abs(wf.lhs) + std::abs(wf.rhs) + 1e-300);
    CheckResult c;
    c.name = "weak-form";
    c.value = std::max(std::abs(wf.lhs), std::abs(wf.rhs)) <= p.tol ? gap : rel;
    c.tolerance = std::max(std::abs(wf.lhs), std::abs(wf.rhs)) <= p.tol ? p.tol : 1e-6;
    c.pass = c.value <= c.tolerance;
    c.detail["lhs"] = format_number(wf.lhs);
    c.detail["rhs"] = format_number(wf.rhs);
    c.detail["relative_gap"] = format_number(rel);
    r.checks.push_back(c);
  }
  if (all || cfg.rt) {
    const auto region = grid_periodic(p.fx.grid) ? LabelRegion::periodic_cell(p.fx.grid)
                                                 : LabelRegion::box_gauss(grid_lo(p.fx.grid), grid_hi(p.fx.grid), 4);
    const double scale = std::abs(action(f, m, w, region.grid)) + 1.0;
    for (const auto& v : {VariationTriple::relabeling(gen), VariationTriple::time_translation()}) {
      std::vector<double> disc;
      CheckResult c;
      c.name = "rund-trautman:" + v.name;
      for (double e : kDefaultEpsList) {
        const auto rt = rund_trautman_check(f, m, p.fx.pressure, v, w, region, e);
        disc.push_back(std::abs(rt.discrepancy()));
        c.detail["eps_" + format_number(e)] = "total=" + format_number(rt.total) + " el=" + format_number(rt.el_part) +
                                              " bd=" + format_number(rt.bd_part);
      }
      const double slope = loglog_slope(kDefaultEpsList, disc);
      const bool floor = *std::max_element(disc.begin(), disc.end()) <= 1e-12 * scale;
      c.value = std::isnan(slope) ? 0.0 : slope;
      c.tolerance = 0.9;
      // the identity holds if the discrepancy is O(eps), or exactly zero
      c.pass = slope >= 0.9 || floor;
      c.detail["discrepancy_slope"] = std::isnan(slope) ? "n/a" : format_number(slope);
      c.detail["at_rounding_floor"] = bool_text(floor);
      r.checks.push_back(c);
    }
    const double bd = noether_boundary_term(f, m, p.fx.pressure, VariationTriple::relabeling(gen), w, region);
    auto c = threshold("noether-boundary", std::abs(bd), p.tol * scale);
    c.detail["generator"] = gen.name;
    r.checks.push_back(c);
  }
  return r;
}

Report cmd_drift(const RunConfig& cfg) {
  Report r;
  r.command = "drift";
  static const std::vector<std::string> theorems{"cauchy", "circulation", "helicity", "ertel"};
  if (std::find(theorems.begin(), theorems.end(), cfg.theorem) == theorems.end())
    throw UsageError("unknown theorem '" + cfg.theorem + "' (cauchy, circulation, helicity, ertel)");
  std::vector<std::optional<double>> steps;
  if (cfg.dt.empty()) steps.push_back(std::nullopt);
  for (double d : cfg.dt) {
    if (!(d > 0)) throw UsageError("--dt values must be positive");
    steps.push_back(d);
  }
  std::vector<double> maxima;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const Problem p = build_problem(cfg, steps[k]);
    if (k == 0) {
      r.config = p.provenance;
      r.config.emplace_back("theorem", cfg.theorem);
      if (!cfg.dt.empty()) r.config.emplace_back("dt", join(cfg.dt));
    }
    const auto& f = p.fx.field;
    DriftReport rep;
    double tol = p.tol;
    if (cfg.theorem == "cauchy") {
      rep = cauchy_drift(f, p.fx.grid, p.times);
    } else if (cfg.theorem == "circulation") {
      rep = circulation_drift(f, default_loop(p), p.times);
      tol *= std::max(1.0, std::abs(rep.rows.front().value));
    } else if (cfg.theorem == "helicity") {
      rep = helicity_drift(f, default_region(p), p.times);
      tol *= std::max(1.0, std::abs(rep.rows.front().value));
    } else {
      rep = ertel_drift(f, p.fx.material, ScalarField::from_polynomial(Polynomial::variable(2)), p.fx.grid, p.times);
    }
    maxima.push_back(rep.max_drift());
    std::string name = cfg.theorem + "-drift";
    if (steps[k]) name += "@dt=" + format_number(*steps[k]);
    r.checks.push_back(from_drift(name, rep, tol));
  }
  if (cfg.dt.size() >= 2) {
    // fourth-order integrator: drift ratio (dt1/dt2)^4, 16 when halving
    const double q = cfg.dt[0] / cfg.dt[1];
    const double ratio = maxima[0] / maxima[1];
    const double expected = std::pow(q, 4);
    CheckResult c;
    c.name = "integrator-order";
    c.value = ratio;
    c.tolerance = expected;
    c.pass = ratio >= 0.75 * expected && ratio <= 1.25 * expected;
    c.detail["observed_order"] = format_number(std::log(ratio) / std::log(q));
    c.detail["expected_ratio"] = format_number(expected);
    c.detail["accepted_ratio"] = "[" + format_number(0.75 * expected) + ", " + format_number(1.25 * expected) + "]";
    r.checks.push_back(c);
  }
  return r;
}

Report cmd_export(const RunConfig& cfg) {
  if (cfg.out.empty()) throw UsageError("export needs --out");
  if (cfg.format != "csv" && cfg.format != "binary") throw UsageError("export --format must be csv or binary");
  const Problem p = build_problem(cfg, cfg.dt.empty() ? std::nullopt : std::optional<double>(cfg.dt.front()));
  auto s = grid_io::sample(p.fx.field, p.fx.grid, p.times, cfg.fd_order);
  grid_io::save(s, cfg.out, cfg.format == "csv" ? grid_io::Format::csv : grid_io::Format::binary);
  Report r;
  r.command = "export";
  r.config = p.provenance;
  CheckResult c;
  c.name = "export";
  c.value = static_cast<double>(s.grid.size() * s.times.size());
  c.pass = true;
  c.detail["path"] = cfg.out;
  c.detail["format"] = cfg.format;
  r.checks.push_back(c);
  return r;
}

// ---- argument parsing -----------------------------------------------------------------

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig cfg;
  CLI::App app{"Numerical verification of Cauchy's invariants and the vorticity theorems", "cauchy"};
  app.set_config("--config", "", "key=value configuration file (command-line flags win)");
  app.require_subcommand(1, 1);
  app.add_option("--fixture", cfg.fixture, "fixture, e.g. rigid-rotation or abc:A=1,n=16");
  app.add_option("--grid", cfg.grid, "label nodes per axis (default: fixture's)");
  app.add_option("--grid-file", cfg.grid_file, "sampled trajectories (CSV or binary grid file)");
  app.add_option("--t0", cfg.t0, "start of the time window");
  app.add_option("--t1", cfg.t1, "end of the time window");
  app.add_option("--nt", cfg.nt, "number of time samples");
  app.add_option("--fd-order", cfg.fd_order, "finite-difference order for sampled fields (2 or 4)");
  app.add_option("--tol", cfg.tol, "tolerance override");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--format", cfg.format, "json | csv (export: csv | binary)");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--dt", cfg.dt, "integrator step(s), comma separated")->delimiter(',');
  app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");

  auto* verify = app.add_subcommand("verify", "full invariant suite on a fixture");
  auto* ident = app.add_subcommand("identities", "kinematic identities on random polynomial maps");
  ident->add_option("--trials", cfg.trials, "number of random fields");
  auto* act = app.add_subcommand("action", "relabelling symmetry, weak form and Rund-Trautman checks");
  act->add_flag("--scan", cfg.scan, "relabelling invariance scan");
  act->add_flag("--weak", cfg.weak, "weak-form equivalence");
  act->add_flag("--rt", cfg.rt, "Rund-Trautman identity and Noether boundary term");
  act->add_option("--generator", cfg.generator, "bump | xy | dilating");
  auto* drift = app.add_subcommand("drift", "drift of one invariant, optionally for several integrator steps");
  drift->add_option("--theorem", cfg.theorem, "cauchy | circulation | helicity | ertel");
  auto* exp = app.add_subcommand("export", "write fixture trajectories to a grid file");
  for (auto* sc : {verify, ident, act, drift, exp}) sc->fallthrough();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::CallForAllHelp&) {
    throw HelpRequested(app.help("", CLI::AppFormatMode::All));
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command != "export" && cfg.format != "json" && cfg.format != "csv")
    throw UsageError("--format must be json or csv");
  if (cfg.command == "export" && cfg.format == "json") cfg.format = "csv";
  if (cfg.threads < 0) throw UsageError("--threads must be nonnegative");
  return cfg;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kPass;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun 'cauchy --help' for the options\n";
    return kUsageError;
  }
  if (cfg.threads > 0) set_worker_count(cfg.threads);
  Report rep;
  try {
    if (cfg.command == "verify") rep = cmd_verify(cfg);
    else if (cfg.command == "identities") rep = cmd_identities(cfg);
    else if (cfg.command == "action") rep = cmd_action(cfg);
    else if (cfg.command == "drift") rep = cmd_drift(cfg);
    else rep = cmd_export(cfg);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kToleranceFailure;
  }
  const std::string text = cfg.command == "export" || cfg.format == "json" ? rep.to_json() : rep.to_csv();
  if (cfg.out.empty() || cfg.command == "export") {
    out << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      err << "cannot open '" << cfg.out << "' for writing\n";
      return kUsageError;
    }
    file << text;
  }
  for (const auto& c : rep.checks)
    err << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_number(c.value)
        << " tol=" << format_number(c.tolerance) << "\n";
  return rep.pass() ? kPass : kToleranceFailure;
}

}  // namespace cauchy::cli
