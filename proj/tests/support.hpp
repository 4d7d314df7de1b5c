#pragma once

// Hand-rolled generators for the property tests. Every test seeds its own
// engine so failures reproduce exactly.

#include <random>
#include <string>
#include <vector>

#include "qsp/algebra.hpp"
#include "qsp/scalar.hpp"
#include "qsp/tensor.hpp"

namespace qsp::testing {

class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }

  Rational rational() {
    Rational r(integer(-5, 5), integer(1, 3));
    r.canonicalize();
    return r;
  }

  /// Up to `terms` terms of total degree <= max_degree in vars.
  Polynomial polynomial(const std::vector<std::string>& vars, int terms = 3, int max_degree = 2) {
    Polynomial p;
    const int n = integer(1, terms);
    for (int i = 0; i < n; ++i) {
      Monomial m;
      const int deg = integer(0, max_degree);
      for (int k = 0; k < deg; ++k) m = m * Monomial::variable(pick(vars));
      p += Polynomial::term(m, rational());
    }
    return p;
  }

  Scalar scalar(const std::vector<std::string>& vars = {"h", "E", "A"}) {
    Polynomial den = polynomial(vars, 2, 1);
    if (den.is_zero()) den = Polynomial(1);
    return Scalar::ratio(polynomial(vars), den);
  }

  /// Small coefficient in h and E, never zero.
  Scalar coefficient() {
    Scalar c(Rational(integer(1, 3) * (coin() ? 1 : -1)));
    if (coin()) c *= Scalar::variable(coin() ? "h" : "E");
    return c;
  }

  /// Raw word over the non-inverse letters of `ab`.
  Word word(const Alphabet& ab, int max_length) {
    Word w;
    const int n = integer(0, max_length);
    for (int i = 0; i < n; ++i) w.push_back(static_cast<char>(letter_of(static_cast<std::size_t>(integer(0, static_cast<int>(ab.size()) - 1)))));
    return w;
  }

  /// Unnormalized linear combination of raw words.
  Element element(const Alphabet& ab, int max_length, int terms = 3) {
    Element e;
    const int n = integer(1, terms);
    for (int i = 0; i < n; ++i) e.add_term(word(ab, max_length), coefficient());
    return e;
  }

  Tensor tensor(const Alphabet& ab, int max_length, int terms = 2) {
    Tensor t(2);
    const int n = integer(1, terms);
    for (int i = 0; i < n; ++i) t.add_term({word(ab, max_length), word(ab, max_length)}, coefficient());
    return t;
  }

  std::mt19937& engine() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace qsp::testing
