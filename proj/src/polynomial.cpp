#include "cauchy/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cauchy {

Polynomial::Polynomial(const Rational& c) {
  if (sgn(c) != 0) terms_.emplace(Exponents{0, 0, 0, 0}, c);
}

Polynomial Polynomial::variable(int v) {
  if (v < 0 || v > 3) throw std::out_of_range("polynomial: variable index");
  Exponents e{0, 0, 0, 0};
  e[v] = 1;
  return monomial(e, Rational(1));
}

Polynomial Polynomial::monomial(const Exponents& e, const Rational& c) {
  Polynomial p;
  p.add_term(e, c);
  return p;
}

void Polynomial::add_term(const Exponents& e, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2] + e[3]);
  return d;
}

int Polynomial::degree_in(int v) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

Polynomial Polynomial::derivative(int v) const {
  Polynomial r;
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Exponents f = e;
    f[v] -= 1;
    r.add_term(f, Rational(c * e[v]));
  }
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, Rational(-c));
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  Polynomial r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Exponents e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2], e1[3] + e2[3]};
      r.add_term(e, Rational(c1 * c2));
    }
  *this = std::move(r);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, Rational(-c));
  return r;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  static const char* names[4] = {"v1", "v2", "v3", "t"};
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")";
    for (int v = 0; v < 4; ++v)
      if (e[v] > 0) os << "*" << names[v] << (e[v] > 1 ? "^" + std::to_string(e[v]) : "");
  }
  return os.str();
}

Polynomial random_polynomial(std::mt19937_64& rng, int max_degree, int n_terms, int max_num,
                             int max_den, std::array<bool, 4> active) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::uniform_int_distribution<int> var(0, 3);
  Polynomial p;
  for (int n = 0; n < n_terms; ++n) {
    Exponents e{0, 0, 0, 0};
    const int d = deg(rng);
    for (int k = 0; k < d; ++k) {
      int v = var(rng);
      if (!active[v]) continue;
      e[v] += 1;
    }
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p += Polynomial::monomial(e, c);
  }
  return p;
}

}  // namespace cauchy
