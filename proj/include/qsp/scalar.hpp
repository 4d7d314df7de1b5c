#pragma once

#include <map>
#include <string>

#include "qsp/polynomial.hpp"

namespace qsp {

/// Element of the rational function field Q(h, E, ...).
///
/// Always stored in canonical form: numerator and denominator are coprime
/// and the denominator's leading coefficient is 1. Two Scalars are equal
/// exactly when their canonical forms coincide.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}                       // NOLINT
  Scalar(const Rational& c) : num_(c), den_(1) {}            // NOLINT
  Scalar(const Polynomial& p) : num_(p), den_(1) {}          // NOLINT
  /// num / den, canonicalized. Throws ArithmeticError if den is zero.
  static Scalar ratio(const Polynomial& num, const Polynomial& den);
  static Scalar variable(const std::string& name) { return Scalar(Polynomial::variable(name)); }

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_constant() && num_.is_constant() && num_.constant_value() == 1; }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  /// Requires is_constant().
  Rational constant_value() const { return num_.constant_value(); }
  VariableSet variables() const;

  Scalar inverse() const;
  Scalar pow(int n) const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Simultaneous substitution of variables by Scalars, then canonicalization.
  Scalar substitute(const std::map<std::string, Scalar>& bindings) const;

  /// `num` or `(num)/(den)`; parses back to the same Scalar.
  std::string to_string() const;
  /// True when to_string() needs parentheses to be used as a factor.
  bool needs_parentheses() const;

 private:
  void canonicalize();

  Polynomial num_;
  Polynomial den_;
};

/// Substitution into a bare polynomial.
Scalar substitute(const Polynomial& p, const std::map<std::string, Scalar>& bindings);

}  // namespace qsp
