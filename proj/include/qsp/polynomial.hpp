#pragma once

// Sparse multivariate polynomials with exact rational coefficients.
//
// Variables are plain names. The global variable order puts the reserved
// deformation symbols first ("h", then "E") and all other names after them
// in lexicographic order; monomials are compared graded-lexicographically
// under that order. Every printed form and every normalization (monic,
// canonical rational functions) depends only on this order, never on the
// order in which variables were first seen.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qsp {

using Rational = mpq_class;
using Integer = mpz_class;

/// True when variable `a` is more significant than `b`.
bool variable_precedes(std::string_view a, std::string_view b);

struct VariableLess {
  bool operator()(const std::string& a, const std::string& b) const {
    return variable_precedes(a, b);
  }
};

using VariableSet = std::set<std::string, VariableLess>;

class Monomial {
 public:
  using Factor = std::pair<std::string, unsigned>;

  Monomial() = default;
  static Monomial variable(std::string name, unsigned exponent = 1);

  bool is_one() const { return factors_.empty(); }
  unsigned degree() const { return degree_; }
  unsigned exponent(std::string_view var) const;
  const std::vector<Factor>& factors() const { return factors_; }

  Monomial operator*(const Monomial& other) const;
  bool divides(const Monomial& other) const;
  /// Requires `divisor.divides(*this)`.
  Monomial operator/(const Monomial& divisor) const;
  /// The monomial with `var` removed.
  Monomial without(std::string_view var) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.factors_ == b.factors_;
  }

  std::string to_string() const;

 private:
  std::vector<Factor> factors_;  // sorted by variable_precedes, exponents > 0
  unsigned degree_ = 0;
};

/// Graded lexicographic order, largest first.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational, GrlexGreater>;

  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT: implicit by design of the field
  Polynomial(long constant) : Polynomial(Rational(constant)) {}  // NOLINT
  static Polynomial variable(const std::string& name, unsigned exponent = 1);
  static Polynomial term(const Monomial& m, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  /// Requires is_constant().
  Rational constant_value() const;
  std::size_t size() const { return terms_.size(); }
  const Terms& terms() const { return terms_; }

  /// Leading term under GrlexGreater. Requires !is_zero().
  const Monomial& leading_monomial() const { return terms_.begin()->first; }
  const Rational& leading_coefficient() const { return terms_.begin()->second; }

  unsigned total_degree() const;
  unsigned degree_in(std::string_view var) const;
  VariableSet variables() const;
  bool mentions(std::string_view var) const;

  /// Coefficient of var^k, as a polynomial in the remaining variables.
  Polynomial coefficient(std::string_view var, unsigned k) const;
  /// All non-zero coefficients w.r.t. var, keyed by exponent.
  std::map<unsigned, Polynomial> coefficients_in(std::string_view var) const;

  Polynomial monic() const;
  Polynomial pow(unsigned n) const;
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

  /// Adds c * m * other to *this.
  void add_scaled(const Polynomial& other, const Rational& c, const Monomial& m);

 private:
  void add_term(const Monomial& m, const Rational& c);

  Terms terms_;
};

/// Greatest common divisor over Q, normalized to be monic (gcd(0, 0) = 0).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// gcd of the coefficients of p viewed as a polynomial in `var`.
Polynomial content_in(const Polynomial& p, std::string_view var);

/// Sparse pseudo-remainder of a by b in `var`; b must mention var.
Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::string_view var);

}  // namespace qsp
