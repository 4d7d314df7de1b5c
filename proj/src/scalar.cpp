#include "qsp/scalar.hpp"

#include "qsp/error.hpp"

namespace qsp {

Scalar Scalar::ratio(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw ArithmeticError("division by zero");
  Scalar s;
  s.num_ = num;
  s.den_ = den;
  s.canonicalize();
  return s;
}

void Scalar::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (!den_.is_constant()) {
    const Polynomial g = gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  const Rational lc = den_.leading_coefficient();
  if (lc != 1) {
    const Rational inv = 1 / lc;
    num_ *= inv;
    den_ *= inv;
  }
}

VariableSet Scalar::variables() const {
  VariableSet vs = num_.variables();
  for (const auto& v : den_.variables()) vs.insert(v);
  return vs;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ArithmeticError("division by zero");
  return ratio(den_, num_);
}

Scalar Scalar::pow(int n) const {
  if (n < 0) return inverse().pow(-n);
  Scalar r;
  r.num_ = num_.pow(static_cast<unsigned>(n));
  r.den_ = den_.pow(static_cast<unsigned>(n));
  // powers of coprime polynomials stay coprime; only the leading coefficient can drift
  r.canonicalize();
  return r;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) return *this = other;
  if (den_.is_constant() && other.den_.is_constant()) {
    num_ += other.num_;
    if (num_.is_zero()) den_ = Polynomial(1);
    return *this;
  }
  if (den_ == other.den_) {
    num_ += other.num_;
  } else {
    num_ = num_ * other.den_ + other.num_ * den_;
    den_ = den_ * other.den_;
  }
  canonicalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  if (is_zero() || other.is_zero()) return *this = Scalar();
  if (den_.is_constant() && other.den_.is_constant()) {
    num_ = num_ * other.num_;
    return *this;
  }
  num_ = num_ * other.num_;
  den_ = den_ * other.den_;
  canonicalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) { return *this *= other.inverse(); }

Scalar substitute(const Polynomial& p, const std::map<std::string, Scalar>& bindings) {
  Scalar total;
  for (const auto& [m, c] : p.terms()) {
    Scalar term(c);
    Monomial rest;
    for (const auto& [name, e] : m.factors()) {
      auto it = bindings.find(name);
      if (it == bindings.end())
        rest = rest * Monomial::variable(name, e);
      else
        term *= it->second.pow(static_cast<int>(e));
    }
    total += term * Scalar(Polynomial::term(rest, 1));
  }
  return total;
}

Scalar Scalar::substitute(const std::map<std::string, Scalar>& bindings) const {
  const Scalar den = qsp::substitute(den_, bindings);
  if (den.is_zero()) throw ArithmeticError("substitution makes a denominator vanish");
  return qsp::substitute(num_, bindings) / den;
}

bool Scalar::needs_parentheses() const {
  return !den_.is_constant() || num_.size() > 1;
}

std::string Scalar::to_string() const {
  if (den_.is_constant()) return num_.to_string();
  const std::string n = num_.size() > 1 ? "(" + num_.to_string() + ")" : num_.to_string();
  const bool bare = den_.size() == 1 && den_.leading_monomial().factors().size() == 1;
  const std::string d = bare ? den_.to_string() : "(" + den_.to_string() + ")";
  return n + "/" + d;
}

}  // namespace qsp
