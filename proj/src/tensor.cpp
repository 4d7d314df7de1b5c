#include "qsp/tensor.hpp"

#include <sstream>

#include "qsp/error.hpp"

namespace qsp {

bool LegsLess::operator()(const Legs& a, const Legs& b) const {
  WordLess less;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (less(a[i], b[i])) return true;
    if (less(b[i], a[i])) return false;
  }
  return a.size() < b.size();
}

Tensor Tensor::pure(const Legs& legs, const Scalar& c) {
  Tensor t(legs.size());
  t.add_term(legs, c);
  return t;
}

Tensor Tensor::product(const std::vector<Element>& factors) {
  Tensor t = unit(0);
  for (const auto& f : factors) {
    Tensor next(t.arity_ + 1);
    for (const auto& [legs, c] : t.terms_)
      for (const auto& [w, cw] : f.terms()) {
        Legs l = legs;
        l.push_back(w);
        next.add_term(l, c * cw);
      }
    t = std::move(next);
  }
  return t;
}

Scalar Tensor::coefficient(const Legs& legs) const {
  auto it = terms_.find(legs);
  return it == terms_.end() ? Scalar() : it->second;
}

void Tensor::add_term(const Legs& legs, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(legs, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Tensor& Tensor::operator+=(const Tensor& other) {
  if (other.arity_ != arity_ && !other.is_zero()) throw DomainError("adding tensors of different arity");
  for (const auto& [l, c] : other.terms_) add_term(l, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) { return *this += -other; }

Tensor& Tensor::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [l, v] : terms_) v *= c;
  return *this;
}

Tensor Tensor::operator-() const {
  Tensor r = *this;
  for (auto& [l, c] : r.terms_) c = -c;
  return r;
}

Tensor tensor_mul(const Tensor& a, const Tensor& b, const RewriteSystem& rs) {
  if (a.arity() != b.arity()) throw DomainError("multiplying tensors of different arity");
  const Alphabet& ab = rs.alphabet();
  const std::size_t n = a.arity();
  Tensor out(n);
  for (const auto& [la, ca] : a.terms()) {
    std::vector<int> pa(n);
    for (std::size_t i = 0; i < n; ++i) pa[i] = is_odd(ab.parity(la[i]));
    for (const auto& [lb, cb] : b.terms()) {
      int sign = 0;
      int odd_a_after = 0;  // parity of a_{j+1} ... a_n
      for (std::size_t j = n; j-- > 0;) {
        if (is_odd(ab.parity(lb[j]))) sign ^= odd_a_after;
        odd_a_after ^= pa[j];
      }
      Tensor part = Tensor::unit(0);
      for (std::size_t i = 0; i < n; ++i)
        part = tensor_concat(part, Tensor::product({rs.normalize(Element::word(la[i] + lb[i]))}));
      part *= sign ? -(ca * cb) : ca * cb;
      out += part;
    }
  }
  return out;
}

Tensor normalize(const Tensor& t, const RewriteSystem& rs) {
  Tensor out(t.arity());
  for (const auto& [legs, c] : t.terms()) {
    std::vector<Element> factors;
    factors.reserve(legs.size());
    for (const auto& w : legs) factors.push_back(rs.normalize(Element::word(w)));
    out += Tensor::product(factors) * c;
  }
  return out;
}

Tensor tensor_concat(const Tensor& a, const Tensor& b) {
  Tensor out(a.arity() + b.arity());
  for (const auto& [la, ca] : a.terms())
    for (const auto& [lb, cb] : b.terms()) {
      Legs l = la;
      l.insert(l.end(), lb.begin(), lb.end());
      out.add_term(l, ca * cb);
    }
  return out;
}

std::string to_string(const Tensor& t, const Alphabet& alphabet) {
  if (t.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = t.terms().rbegin(); it != t.terms().rend(); ++it) {
    const auto& [legs, c] = *it;
    const bool negative = c.numerator().size() == 1 && c.numerator().leading_coefficient() < 0;
    const Scalar mag = negative ? -c : c;
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    for (std::size_t i = 0; i < legs.size(); ++i) {
      if (i > 0) os << " @ ";
      const std::string w = alphabet.word_to_string(legs[i]);
      if (i > 0 || mag.is_one()) {
        os << w;
      } else if (legs[i].empty()) {
        os << (mag.needs_parentheses() ? "(" + mag.to_string() + ")" : mag.to_string());
      } else {
        os << (mag.needs_parentheses() ? "(" + mag.to_string() + ")" : mag.to_string()) << '*' << w;
      }
    }
  }
  return os.str();
}

}  // namespace qsp
