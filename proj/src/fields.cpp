#include "cauchy/fields.hpp"

#include <memory>
#include <string>
#include <vector>

#include "cauchy/finite_difference.hpp"

namespace cauchy {

namespace {

struct CentralStencil {
  std::vector<double> offsets;  // in units of the step
  std::vector<double> weights;  // first derivative, unit step
};

CentralStencil first_derivative_stencil(int order) {
  if (order != 2 && order != 4) throw ConfigError("finite-difference order must be 2 or 4");
  const int half = fd::central_size(1, order) / 2;
  CentralStencil s;
  for (int k = -half; k <= half; ++k) s.offsets.push_back(k);
  s.weights = fd::weights(0.0, s.offsets, 1);
  return s;
}

void check_neighborhood(const std::optional<Box>& domain, const Vec3d& p, double reach) {
  if (!domain) return;
  Box shrunk{domain->lo, domain->hi};
  for (int d = 0; d < 3; ++d) {
    shrunk.lo[d] += reach;
    shrunk.hi[d] -= reach;
  }
  if (!shrunk.contains(p)) throw DomainError("finite-difference neighborhood leaves the field domain");
}

template <class Eval>
auto fd_partial(const Eval& eval, const Vec3d& p, double t, int axis, const FdSettings& fd) {
  const auto st = first_derivative_stencil(fd.order);
  Vec3d q = p;
  q[axis] = p[axis] + st.offsets[0] * fd.step;
  auto acc = eval(q, t);
  acc = st.weights[0] * acc;
  for (std::size_t k = 1; k < st.offsets.size(); ++k) {
    q[axis] = p[axis] + st.offsets[k] * fd.step;
    acc = acc + st.weights[k] * eval(q, t);
  }
  return (1.0 / fd.step) * acc;
}

double fd_reach(const FdSettings& fd) { return (fd::central_size(1, fd.order) / 2) * fd.step; }

}  // namespace

// ---------------------------------------------------------------- ScalarField

ScalarField ScalarField::from_polynomial(Polynomial poly) {
  ScalarField s;
  auto shared = std::make_shared<const Polynomial>(poly);
  s.jet_ = [shared](const JetVec<double>& p, const DJet& t) {
    return shared->evaluate<DJet>({p[0], p[1], p[2], t});
  };
  s.exact_ = [shared](const JetVec<Rational>& p, const RJet& t) {
    return shared->evaluate<RJet>({p[0], p[1], p[2], t});
  };
  s.value_ = [shared](const Vec3d& p, double t) { return shared->evaluate<double>({p[0], p[1], p[2], t}); };
  s.poly_ = std::move(poly);
  return s;
}

ScalarField ScalarField::from_function(ValueFn fn, FdSettings fd) {
  if (fd.order != 2 && fd.order != 4) throw ConfigError("finite-difference order must be 2 or 4");
  if (!(fd.step > 0)) throw ConfigError("finite-difference step must be positive");
  ScalarField s;
  s.value_ = std::move(fn);
  s.fd_ = fd;
  return s;
}

ScalarField ScalarField::constant(double c) {
  return from_polynomial(Polynomial(Rational(c)));
}

DJet ScalarField::jet(const JetVec<double>& p, const DJet& t) const {
  if (!jet_) throw std::logic_error("scalar field has no jet evaluator");
  return jet_(p, t);
}

RJet ScalarField::exact_jet(const JetVec<Rational>& p, const RJet& t) const {
  if (!exact_) throw std::logic_error("scalar field has no exact evaluator");
  return exact_(p, t);
}

// ---------------------------------------------------------------- VectorField

VectorField VectorField::from_polynomials(std::array<Polynomial, 3> polys) {
  VectorField s;
  auto shared = std::make_shared<const std::array<Polynomial, 3>>(std::move(polys));
  s.jet_ = [shared](const JetVec<double>& p, const DJet& t) {
    JetVec<double> r;
    for (int i = 0; i < 3; ++i) r[i] = (*shared)[i].evaluate<DJet>({p[0], p[1], p[2], t});
    return r;
  };
  s.exact_ = [shared](const JetVec<Rational>& p, const RJet& t) {
    JetVec<Rational> r;
    for (int i = 0; i < 3; ++i) r[i] = (*shared)[i].evaluate<RJet>({p[0], p[1], p[2], t});
    return r;
  };
  s.value_ = [shared](const Vec3d& p, double t) {
    Vec3d r;
    for (int i = 0; i < 3; ++i) r[i] = (*shared)[i].evaluate<double>({p[0], p[1], p[2], t});
    return r;
  };
  bool steady = true;
  for (const auto& q : *shared) steady = steady && q.degree_in(3) == 0;
  s.steady_ = steady;
  return s;
}

VectorField VectorField::from_function(ValueFn fn, FdSettings fd, bool steady) {
  if (fd.order != 2 && fd.order != 4) throw ConfigError("finite-difference order must be 2 or 4");
  if (!(fd.step > 0)) throw ConfigError("finite-difference step must be positive");
  VectorField s;
  s.value_ = std::move(fn);
  s.fd_ = fd;
  s.steady_ = steady;
  return s;
}

VectorField VectorField::gradient_of(const ScalarField& f) {
  VectorField s;
  if (f.has_jet()) {
    s.jet_ = [f](const JetVec<double>& p, const DJet& t) { return gradient(f.jet(p, t)); };
    s.value_ = [f](const Vec3d& p, double t) { return grad_label(f, p, t); };
  } else {
    s.value_ = [f](const Vec3d& p, double t) { return grad_label(f, p, t); };
  }
  if (f.has_exact())
    s.exact_ = [f](const JetVec<Rational>& p, const RJet& t) { return gradient(f.exact_jet(p, t)); };
  s.fd_ = f.fd();
  return s;
}

VectorField VectorField::zero() {
  return from_polynomials({Polynomial(), Polynomial(), Polynomial()});
}

JetVec<double> VectorField::jet(const JetVec<double>& p, const DJet& t) const {
  if (!jet_) throw std::logic_error("vector field has no jet evaluator");
  return jet_(p, t);
}

JetVec<Rational> VectorField::exact_jet(const JetVec<Rational>& p, const RJet& t) const {
  if (!exact_) throw std::logic_error("vector field has no exact evaluator");
  return exact_(p, t);
}

// ----------------------------------------------------------------- operators

Vec3d grad_label(const ScalarField& f, const Vec3d& a, double t) {
  if (f.has_jet()) {
    auto [p, tj] = coordinate_jets(a, t);
    return gradient_value(f.jet(p, tj));
  }
  check_neighborhood(f.domain(), a, fd_reach(f.fd()));
  auto eval = [&f](const Vec3d& q, double s) { return f.value(q, s); };
  return {fd_partial(eval, a, t, 0, f.fd()), fd_partial(eval, a, t, 1, f.fd()),
          fd_partial(eval, a, t, 2, f.fd())};
}

Vec3<Rational> grad_label_exact(const ScalarField& f, const Vec3<Rational>& a, const Rational& t) {
  auto [p, tj] = coordinate_jets(a, t);
  return gradient_value(f.exact_jet(p, tj));
}

Mat3d gradient_matrix(const VectorField& v, const Vec3d& p, double t) {
  if (v.has_jet()) {
    auto [pj, tj] = coordinate_jets(p, t);
    return jacobian_values(v.jet(pj, tj));
  }
  check_neighborhood(v.domain(), p, fd_reach(v.fd()));
  auto eval = [&v](const Vec3d& q, double s) { return v.value(q, s); };
  Mat3d g;
  for (int j = 0; j < 3; ++j) {
    const Vec3d col = fd_partial(eval, p, t, j, v.fd());
    for (int i = 0; i < 3; ++i) g(i, j) = col[i];
  }
  return g;
}

Vec3d curl_label(const VectorField& v, const Vec3d& a, double t) {
  const Mat3d g = gradient_matrix(v, a, t);
  return {g(2, 1) - g(1, 2), g(0, 2) - g(2, 0), g(1, 0) - g(0, 1)};
}

double div_label(const VectorField& v, const Vec3d& a, double t) { return trace(gradient_matrix(v, a, t)); }

Vec3<Rational> curl_label_exact(const VectorField& v, const Vec3<Rational>& a, const Rational& t) {
  auto [p, tj] = coordinate_jets(a, t);
  return values(curl(v.exact_jet(p, tj)));
}

Rational div_label_exact(const VectorField& v, const Vec3<Rational>& a, const Rational& t) {
  auto [p, tj] = coordinate_jets(a, t);
  return divergence(v.exact_jet(p, tj)).value();
}

}  // namespace cauchy
