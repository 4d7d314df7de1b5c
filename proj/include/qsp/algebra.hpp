#pragma once

// Z2-graded presented associative algebras.
//
// A word is a string of letters; letter 2*i is generator i and letter 2*i+1
// its inverse (only for invertible generators). Words are compared
// degree-lexicographically, which is compatible with concatenation, so a
// relation oriented towards its largest word gives a terminating rewrite
// rule. Normal words are exactly the words without a reducible adjacent pair.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qsp/parallel.hpp"
#include "qsp/scalar.hpp"

namespace qsp {

enum class Parity : unsigned char { even = 0, odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<unsigned char>(a) ^ static_cast<unsigned char>(b));
}
inline bool is_odd(Parity p) { return p == Parity::odd; }
const char* to_string(Parity p);

struct Generator {
  std::string name;
  Parity parity = Parity::even;
  bool invertible = false;
};

using Letter = unsigned char;
using Word = std::string;

constexpr Letter letter_of(std::size_t generator, bool inverse = false) {
  return static_cast<Letter>(2 * generator + (inverse ? 1 : 0));
}
constexpr std::size_t generator_of(Letter l) { return l / 2; }
constexpr bool is_inverse(Letter l) { return (l & 1u) != 0; }
constexpr Letter inverse_letter(Letter l) { return static_cast<Letter>(l ^ 1u); }

inline Letter letter_at(const Word& w, std::size_t i) { return static_cast<Letter>(w[i]); }
inline Word word_of(std::initializer_list<Letter> letters) {
  Word w;
  for (Letter l : letters) w.push_back(static_cast<char>(l));
  return w;
}

/// Degree first, then lexicographic on letters.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Generator> generators);

  std::size_t size() const { return generators_.size(); }
  const Generator& operator[](std::size_t i) const { return generators_[i]; }
  const std::vector<Generator>& generators() const { return generators_; }

  std::optional<std::size_t> find(std::string_view name) const;
  /// Throws NameError for unknown generators.
  std::size_t index(std::string_view name) const;
  Letter letter(std::string_view name) const { return letter_of(index(name)); }

  Parity parity(Letter l) const { return generators_[generator_of(l)].parity; }
  Parity parity(const Word& w) const;
  /// Generator runs with signed exponents, e.g. x^-2*theta.
  std::vector<std::pair<std::size_t, int>> runs(const Word& w) const;
  std::string word_to_string(const Word& w) const;

 private:
  std::vector<Generator> generators_;
};

/// Finite linear combination of words with Scalar coefficients.
class Element {
 public:
  using Terms = std::map<Word, Scalar, WordLess>;

  Element() = default;
  explicit Element(const Scalar& c);
  static Element word(const Word& w, const Scalar& c = Scalar(1));
  static Element letter(Letter l, const Scalar& c = Scalar(1)) { return word(Word(1, static_cast<char>(l)), c); }

  bool is_zero() const { return terms_.empty(); }
  /// True for c*1 (including 0).
  bool is_scalar() const;
  Scalar scalar_part() const;
  Scalar coefficient(const Word& w) const;
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  std::size_t max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first.size(); }

  void add_term(const Word& w, const Scalar& c);

  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element& operator*=(const Scalar& c);
  Element operator-() const;

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(Element a, const Scalar& c) { return a *= c; }
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

  /// Coefficient-wise substitution of scalar variables.
  Element substitute(const std::map<std::string, Scalar>& bindings) const;

 private:
  Terms terms_;
};

/// Unnormalized product: concatenation of words.
Element concat(const Element& a, const Element& b);

std::string to_string(const Element& e, const Alphabet& alphabet);

struct Relation {
  std::string label;
  Element value;  // asserted equal to zero
};

struct Presentation {
  std::string name;
  Alphabet alphabet;
  std::vector<Relation> relations;
  std::vector<std::string> params;

  const Relation& relation(std::string_view label) const;
  /// The same algebra with generators listed in `order` (all names, once each).
  Presentation reordered(const std::vector<std::string>& order) const;
};

/// The subalgebra presentation on the named generators: relations that
/// mention only those generators.
Presentation restrict(const Presentation& p, const std::vector<std::string>& generators, const std::string& name);

/// Re-encodes an element between alphabets that share generator names.
Element translate(const Element& e, const Alphabet& from, const Alphabet& to);

enum class Strategy { leftmost, rightmost };

struct Rule {
  Word lhs;  // two letters
  Element rhs;
  std::string source;  // relation label, or "inverse" for x*x^-1 rules
};

class RewriteSystem {
 public:
  RewriteSystem() = default;

  const Alphabet& alphabet() const { return alphabet_; }
  const std::string& name() const { return name_; }
  const std::vector<Rule>& rules() const { return rules_; }

  const Element* rule(Letter a, Letter b) const;
  bool reducible(Letter a, Letter b) const { return rule(a, b) != nullptr; }
  bool is_normal(const Word& w) const;
  /// Position of the first (or last) reducible pair.
  std::optional<std::size_t> redex(const Word& w, Strategy strategy = Strategy::leftmost) const;

  /// One rewrite step at position pos (which must be a redex).
  Element rewrite_at(const Word& w, std::size_t pos) const;

  Element normalize(const Element& e, Strategy strategy = Strategy::leftmost) const;
  Element normalize(const Word& w) const { return normalize(Element::word(w)); }
  Element multiply(const Element& a, const Element& b) const { return normalize(concat(a, b)); }
  Element power(const Element& a, unsigned n) const;

  /// Every normal word of degree <= max_degree, ascending in WordLess.
  std::vector<Word> basis(std::size_t max_degree) const;

  /// Letters of nilpotent generators (those with a g*g rule).
  bool nilpotent(std::size_t generator) const;

 private:
  friend RewriteSystem compile(const Presentation& p);

  std::string name_;
  Alphabet alphabet_;
  std::vector<Rule> rules_;
  std::vector<int> table_;  // letter pair -> index into rules_, or -1
};

/// Orients every relation towards its largest word. Throws PresentationError
/// when a relation's largest word is not an out-of-order adjacent pair or a
/// square, when an invertible generator occurs in a relation that is not a
/// pure skew-commutation, or when two relations rewrite the same pair
/// differently.
RewriteSystem compile(const Presentation& p);

struct Mismatch {
  Word overlap;
  Element via_left;   // first pair rewritten first
  Element via_right;  // second pair rewritten first
};

struct ConfluenceReport {
  std::size_t overlaps = 0;
  std::vector<Mismatch> mismatches;
  bool confluent() const { return mismatches.empty(); }
};

/// Resolves every overlap l1 l2 l3 where both l1 l2 and l2 l3 are reducible.
ConfluenceReport check_confluence(const RewriteSystem& rs, Execution exec = Execution::parallel);

/// Relations whose words do not all share one parity.
std::vector<std::string> inhomogeneous_relations(const Presentation& p);

}  // namespace qsp
