#pragma once

// n-fold tensor powers of a graded algebra with the Koszul product
//   (a1 @ ... @ an)(b1 @ ... @ bn) = (-1)^s (a1 b1) @ ... @ (an bn),
//   s = sum_{i > j} |a_i| |b_j|.

#include <map>
#include <string>
#include <vector>

#include "qsp/algebra.hpp"

namespace qsp {

using Legs = std::vector<Word>;

struct LegsLess {
  bool operator()(const Legs& a, const Legs& b) const;
};

class Tensor {
 public:
  using Terms = std::map<Legs, Scalar, LegsLess>;

  explicit Tensor(std::size_t arity = 2) : arity_(arity) {}
  /// a1 @ a2 @ ... expanded multilinearly.
  static Tensor product(const std::vector<Element>& factors);
  static Tensor unit(std::size_t arity) { return pure(Legs(arity), Scalar(1)); }
  static Tensor pure(const Legs& legs, const Scalar& c = Scalar(1));

  std::size_t arity() const { return arity_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(const Legs& legs) const;

  void add_term(const Legs& legs, const Scalar& c);

  Tensor& operator+=(const Tensor& other);
  Tensor& operator-=(const Tensor& other);
  Tensor& operator*=(const Scalar& c);
  Tensor operator-() const;
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, const Scalar& c) { return a *= c; }
  friend Tensor operator*(const Scalar& c, Tensor a) { return a *= c; }
  friend bool operator==(const Tensor& a, const Tensor& b) {
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

 private:
  std::size_t arity_;
  Terms terms_;
};

/// Koszul-signed product, every leg normalized in rs. Arity must match.
Tensor tensor_mul(const Tensor& a, const Tensor& b, const RewriteSystem& rs);
/// Leg-wise normalization.
Tensor normalize(const Tensor& t, const RewriteSystem& rs);
/// Concatenates the legs of a and b (arity adds up).
Tensor tensor_concat(const Tensor& a, const Tensor& b);

/// Terms like `-h*eta @ u`, largest first; parses back to the same tensor.
std::string to_string(const Tensor& t, const Alphabet& alphabet);

}  // namespace qsp
