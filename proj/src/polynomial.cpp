#include "qsp/polynomial.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qsp {

namespace {

int reserved_rank(std::string_view v) {
  if (v == "h") return 0;
  if (v == "E") return 1;
  return 2;
}

std::string rational_to_string(const Rational& c) {
  return c.get_str();
}

}  // namespace

bool variable_precedes(std::string_view a, std::string_view b) {
  const int ra = reserved_rank(a);
  const int rb = reserved_rank(b);
  if (ra != rb) return ra < rb;
  return a < b;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::string name, unsigned exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(std::move(name), exponent);
    m.degree_ = exponent;
  }
  return m;
}

unsigned Monomial::exponent(std::string_view var) const {
  for (const auto& [name, e] : factors_)
    if (name == var) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + other.factors_.size());
  std::size_t i = 0, j = 0;
  while (i < factors_.size() || j < other.factors_.size()) {
    if (j == other.factors_.size() ||
        (i < factors_.size() && variable_precedes(factors_[i].first, other.factors_[j].first))) {
      r.factors_.push_back(factors_[i++]);
    } else if (i == factors_.size() ||
               variable_precedes(other.factors_[j].first, factors_[i].first)) {
      r.factors_.push_back(other.factors_[j++]);
    } else {
      r.factors_.emplace_back(factors_[i].first, factors_[i].second + other.factors_[j].second);
      ++i;
      ++j;
    }
  }
  r.degree_ = degree_ + other.degree_;
  return r;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (const auto& [name, e] : factors_)
    if (other.exponent(name) < e) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r;
  for (const auto& [name, e] : factors_) {
    const unsigned d = divisor.exponent(name);
    assert(d <= e);
    if (e > d) r.factors_.emplace_back(name, e - d);
  }
  r.degree_ = degree_ - divisor.degree_;
  return r;
}

Monomial Monomial::without(std::string_view var) const {
  Monomial r;
  for (const auto& f : factors_) {
    if (f.first == var) continue;
    r.factors_.push_back(f);
    r.degree_ += f.second;
  }
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (const auto& [name, e] : a.factors_) {
    const unsigned m = std::min(e, b.exponent(name));
    if (m > 0) {
      r.factors_.emplace_back(name, m);
      r.degree_ += m;
    }
  }
  return r;
}

std::string Monomial::to_string() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [name, e] : factors_) {
    if (!s.empty()) s += '*';
    s += name;
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  std::size_t i = 0;
  while (i < fa.size() && i < fb.size()) {
    if (fa[i].first == fb[i].first) {
      if (fa[i].second != fb[i].second) return fa[i].second > fb[i].second;
      ++i;
      continue;
    }
    return variable_precedes(fa[i].first, fb[i].first);
  }
  return false;
}

// -------------------------------------------------------------- Polynomial

Polynomial::Polynomial(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

Polynomial Polynomial::variable(const std::string& name, unsigned exponent) {
  return term(Monomial::variable(name, exponent), 1);
}

Polynomial Polynomial::term(const Monomial& m, const Rational& c) {
  Polynomial p;
  if (c != 0) p.terms_.emplace(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Polynomial::constant_value() const {
  assert(is_constant());
  return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

unsigned Polynomial::degree_in(std::string_view var) const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(var));
  return d;
}

VariableSet Polynomial::variables() const {
  VariableSet vs;
  for (const auto& [m, c] : terms_)
    for (const auto& f : m.factors()) vs.insert(f.first);
  return vs;
}

bool Polynomial::mentions(std::string_view var) const {
  for (const auto& [m, c] : terms_)
    if (m.exponent(var) > 0) return true;
  return false;
}

Polynomial Polynomial::coefficient(std::string_view var, unsigned k) const {
  Polynomial r;
  for (const auto& [m, c] : terms_)
    if (m.exponent(var) == k) r.terms_.emplace(m.without(var), c);
  return r;
}

std::map<unsigned, Polynomial> Polynomial::coefficients_in(std::string_view var) const {
  std::map<unsigned, Polynomial> out;
  for (const auto& [m, c] : terms_) out[m.exponent(var)].terms_.emplace(m.without(var), c);
  return out;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  const Rational lc = leading_coefficient();
  if (lc == 1) return *this;
  Polynomial r = *this;
  const Rational inv = 1 / lc;
  for (auto& [m, c] : r.terms_) c *= inv;
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(1);
  Polynomial base = *this;
  while (n > 0) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n > 0) base *= base;
  }
  return result;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::add_scaled(const Polynomial& other, const Rational& c, const Monomial& m) {
  if (c == 0) return;
  for (const auto& [om, oc] : other.terms_) add_term(om * m, oc * c);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial r;
  if (a.is_zero() || b.is_zero()) return r;
  if (b.is_constant()) return Polynomial(a) *= b.constant_value();
  if (a.is_constant()) return Polynomial(b) *= a.constant_value();
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  assert(!divisor.is_zero());
  if (divisor.is_constant()) return Polynomial(*this) *= (1 / divisor.constant_value());
  Polynomial quotient;
  Polynomial rest = *this;
  const Monomial& lm = divisor.leading_monomial();
  const Rational lc = divisor.leading_coefficient();
  while (!rest.is_zero()) {
    const Monomial m = rest.leading_monomial();
    if (!lm.divides(m)) return std::nullopt;
    const Monomial qm = m / lm;
    const Rational qc = rest.leading_coefficient() / lc;
    quotient.add_term(qm, qc);
    rest.add_scaled(divisor, -qc, qm);
  }
  return quotient;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      os << rational_to_string(mag);
    } else if (mag == 1) {
      os << m.to_string();
    } else {
      os << rational_to_string(mag) << '*' << m.to_string();
    }
  }
  return os.str();
}

// --------------------------------------------------------------------- gcd

namespace {

/// gcd of a polynomial with one monomial: the largest monomial dividing all terms
/// of p and m.
Polynomial gcd_with_monomial(const Monomial& m, const Polynomial& p) {
  Monomial g = m;
  for (const auto& [pm, c] : p.terms()) {
    g = Monomial::gcd(g, pm);
    if (g.is_one()) break;
  }
  return Polynomial::term(g, 1);
}

Polynomial primitive_part(const Polynomial& p, std::string_view var) {
  const Polynomial c = content_in(p, var);
  if (c.is_constant()) return p.monic();
  auto q = p.divide_exact(c);
  assert(q);
  return q->monic();
}

/// gcd of b with every coefficient of a taken w.r.t. the variables of a that
/// b does not mention. Such a gcd cannot involve those variables.
Polynomial gcd_by_coefficients(const Polynomial& a, const Polynomial& b, const VariableSet& extra) {
  std::map<Monomial, Polynomial, GrlexGreater> coeffs;
  for (const auto& [m, c] : a.terms()) {
    Monomial outer, inner;
    for (const auto& [name, e] : m.factors()) {
      if (extra.count(name))
        outer = outer * Monomial::variable(name, e);
      else
        inner = inner * Monomial::variable(name, e);
    }
    coeffs[outer] += Polynomial::term(inner, c);
  }
  Polynomial g = b;
  for (const auto& [m, c] : coeffs) {
    g = gcd(g, c);
    if (g.is_constant()) return Polynomial(1);
  }
  return g.monic();
}

}  // namespace

Polynomial content_in(const Polynomial& p, std::string_view var) {
  Polynomial g;
  for (const auto& [k, c] : p.coefficients_in(var)) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) return Polynomial(1);
  }
  return g;
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::string_view var) {
  const unsigned db = b.degree_in(var);
  const Polynomial lcb = b.coefficient(var, db);
  Polynomial r = a;
  while (!r.is_zero()) {
    const unsigned dr = r.degree_in(var);
    if (dr < db) break;
    const Polynomial lcr = r.coefficient(var, dr);
    Polynomial shifted = b * Polynomial::variable(std::string(var), dr - db);
    r = lcb * r - lcr * shifted;
  }
  return r;
}

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Polynomial(1);
  if (a.is_monomial()) return gcd_with_monomial(a.leading_monomial(), b);
  if (b.is_monomial()) return gcd_with_monomial(b.leading_monomial(), a);
  if (a == b) return a.monic();

  const VariableSet va = a.variables();
  const VariableSet vb = b.variables();
  VariableSet only_a, only_b, shared;
  for (const auto& v : va) (vb.count(v) ? shared : only_a).insert(v);
  for (const auto& v : vb)
    if (!va.count(v)) only_b.insert(v);
  if (shared.empty()) return Polynomial(1);
  if (!only_a.empty()) return gcd_by_coefficients(a, b, only_a);
  if (!only_b.empty()) return gcd_by_coefficients(b, a, only_b);

  // Same variable set: primitive PRS in the variable of least degree.
  std::string var;
  unsigned best = ~0u;
  for (const auto& v : shared) {
    const unsigned d = std::max(a.degree_in(v), b.degree_in(v));
    if (d < best) {
      best = d;
      var = v;
    }
  }
  const Polynomial ca = content_in(a, var);
  const Polynomial cb = content_in(b, var);
  const Polynomial gc = gcd(ca, cb);
  Polynomial pa = primitive_part(a, var);
  Polynomial pb = primitive_part(b, var);
  if (pa.degree_in(var) < pb.degree_in(var)) std::swap(pa, pb);
  while (true) {
    const Polynomial r = pseudo_remainder(pa, pb, var);
    if (r.is_zero()) break;
    if (r.degree_in(var) == 0) {
      pb = Polynomial(1);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, var);
  }
  return (gc * primitive_part(pb, var)).monic();
}

}  // namespace qsp
