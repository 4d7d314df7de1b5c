#pragma once

// Graded derivations, canonical partial derivatives and operator identities.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsp/algebra.hpp"

namespace qsp {

struct DerivationSpec {
  Parity parity = Parity::odd;
  std::map<std::string, Element> images;  // missing generators map to 0
  std::map<std::string, Element> twist;   // missing generators are fixed
};

/// d(l1 ... ln) = sum_i (-1)^{|d| |l1..l(i-1)|} s(l1..l(i-1)) d(li) l(i+1)..ln
/// with s the twist automorphism. Inverse letters use d(x^-1) = -x^-1 d(x) x^-1,
/// which requires x to be fixed by the twist.
class Derivation {
 public:
  Derivation() = default;
  Derivation(Alphabet alphabet, DerivationSpec spec);

  const Alphabet& alphabet() const { return alphabet_; }
  const DerivationSpec& spec() const { return spec_; }
  Parity parity() const { return spec_.parity; }

  /// Leibniz expansion on raw words; nothing is normalized.
  Element expand(const Element& f) const;
  Element apply(const Element& f, const RewriteSystem& rs) const { return rs.normalize(expand(f)); }

  /// Relations r with normalize(d r) != 0, paired with that normal form.
  std::vector<std::pair<std::string, Element>> defects(const Presentation& p, const RewriteSystem& rs) const;

 private:
  Element image(Letter l) const;
  Element twisted(const Word& prefix) const;

  Alphabet alphabet_;
  DerivationSpec spec_;
  std::vector<Element> images_;  // by letter
  std::vector<std::optional<Element>> twist_;  // by generator, nullopt = identity
};

/// Algebra map defined on generators (by name), extended to raw words and
/// normalized in `target`. Unlisted generators map to themselves.
Element substitute_generators(const Element& e, const Alphabet& from,
                              const std::map<std::string, Element>& images, const RewriteSystem& target);

/// An algebra of functions and one-forms with its differential, in two
/// normal orders: the presentation's own (forms right) and forms-left,
/// where partial derivatives are read off as left coefficients.
class Calculus {
 public:
  /// Throws PresentationError when d does not respect the relations.
  Calculus(const Presentation& p, const DerivationSpec& spec);

  const Presentation& presentation() const { return presentation_; }
  const RewriteSystem& rules() const { return rules_; }
  const RewriteSystem& left_rules() const { return left_; }
  const Derivation& derivation() const { return d_; }

  /// Function generators that d maps to a form generator.
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  const std::vector<std::string>& forms() const { return forms_; }
  bool is_function(const Element& f) const;

  Element d(const Element& f) const { return d_.apply(f, rules_); }
  /// d f written as sum_i form_i * c_i in forms-left order (alphabet of left_rules()).
  Element d_left(const Element& f) const;
  /// (c_1, ..., c_n) with d f = sum_i d(x_i) c_i, in the presentation's alphabet.
  /// Throws DomainError when f contains forms.
  std::vector<Element> partials(const Element& f) const;
  /// Normal words built from function generators only.
  std::vector<Word> function_basis(std::size_t max_degree) const;

 private:
  Presentation presentation_;
  RewriteSystem rules_;
  Presentation left_presentation_;
  RewriteSystem left_;
  Derivation d_;
  Derivation d_left_;
  std::vector<std::string> coordinates_;
  std::vector<std::string> forms_;
  std::vector<bool> is_form_;  // by generator index in presentation_
};

/// Relations of `p` that do not map to zero under the generator images.
std::vector<std::string> embedding_defects(const Presentation& p, const std::map<std::string, Element>& images,
                                           const RewriteSystem& target);

/// phi = (E^2 - 1)/(2h) du and V = E deta in the alphabet of `gamma`.
std::pair<Element, Element> cartan_maurer(const Calculus& gamma);

// ------------------------------------------------------------- operators

struct LinearMap {
  std::string name;
  Parity parity = Parity::even;
  std::function<Element(const Element&)> apply;
};

/// Sum of scalar multiples of compositions of left multiplications and
/// named linear maps. Atoms in a term are applied right to left.
class OperatorExpr {
 public:
  struct Atom {
    bool named = false;
    std::string name;
    Element element;  // left multiplication when !named
  };
  struct Term {
    Scalar coefficient;
    std::vector<Atom> atoms;
  };

  static OperatorExpr identity();
  static OperatorExpr zero() { return {}; }
  static OperatorExpr mul(const Element& e);
  static OperatorExpr op(const std::string& name);

  const std::vector<Term>& terms() const { return terms_; }

  OperatorExpr& operator+=(const OperatorExpr& o);
  OperatorExpr& operator-=(const OperatorExpr& o);
  friend OperatorExpr operator+(OperatorExpr a, const OperatorExpr& b) { return a += b; }
  friend OperatorExpr operator-(OperatorExpr a, const OperatorExpr& b) { return a -= b; }
  /// Composition: (a * b)(f) = a(b(f)).
  friend OperatorExpr operator*(const OperatorExpr& a, const OperatorExpr& b);
  friend OperatorExpr operator*(const Scalar& c, OperatorExpr a);

 private:
  std::vector<Term> terms_;
};

OperatorExpr comm(const OperatorExpr& a, const OperatorExpr& b);
OperatorExpr acomm(const OperatorExpr& a, const OperatorExpr& b);

struct OperatorEnv {
  const RewriteSystem* rules = nullptr;
  std::map<std::string, LinearMap> maps;
};

/// `scale` multiplies every occurrence of the named map (used for rescaling).
Element apply(const OperatorExpr& op, const Element& f, const OperatorEnv& env,
              const std::map<std::string, Scalar>& scale = {});

struct WordFailure {
  Word word;
  Element lhs;
  Element rhs;
};

struct IdentityReport {
  std::string label;
  bool holds = false;
  std::size_t words_checked = 0;
  std::vector<WordFailure> failures;  // at most a few witnesses
  std::size_t failure_count = 0;
  /// Set when a rescale target was requested: the unique c with
  /// op -> c*op making the identity exact, verified on the same words.
  std::string rescaled;
  std::optional<Scalar> rescale;
  bool rescale_any = false;  // the identity does not involve the map at all
};

IdentityReport operator_relation_check(const std::string& label, const OperatorExpr& lhs, const OperatorExpr& rhs,
                                       const OperatorEnv& env, const std::vector<Word>& words,
                                       const std::optional<std::string>& rescale_target = std::nullopt,
                                       Execution exec = Execution::parallel);

/// u^k du = du (u+2h)^k and u^k deta = deta (u+h)^k for k = 1..n in `gamma`.
IdentityReport conjugation_identity(const RewriteSystem& gamma, unsigned n);

struct VariableSolution {
  bool any = false;              // nothing depends on the variable and everything vanishes
  std::optional<Scalar> value;   // the unique root, when the common factor is linear in it
};

/// Finds the value of `var` that makes every expression vanish, by taking the
/// gcd of the numerators; the root is verified by substitution.
VariableSolution solve_for(const std::vector<Scalar>& must_vanish, const std::string& var);

/// Action of an operator algebra on its function/form part: the normal form
/// of op*w with every term still containing an operator letter dropped.
Element vacuum_action(const RewriteSystem& ops, const std::vector<bool>& is_operator, const Word& op, const Element& w);

}  // namespace qsp
