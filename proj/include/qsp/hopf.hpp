#pragma once

// Costructures on presented graded algebras and the Hopf axioms.
//
// The coproduct and counit extend multiplicatively; the antipode extends as
// a graded anti-homomorphism, kappa(ab) = (-1)^{|a||b|} kappa(b) kappa(a).
// Inverse letters take the inverse of the generator's image, which must be
// a single invertible term.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsp/algebra.hpp"
#include "qsp/tensor.hpp"

namespace qsp {

struct CostructureSpec {
  std::string name;
  std::map<std::string, Tensor> coproduct;
  std::map<std::string, Scalar> counit;
  std::map<std::string, Element> antipode;  // empty: bialgebra only
};

class HopfStructure {
 public:
  /// Throws PresentationError when a generator lacks an image, an odd
  /// generator has a nonzero counit, or an inverse image is not invertible.
  HopfStructure(const Presentation& p, CostructureSpec spec);

  const std::string& name() const { return spec_.name; }
  const Presentation& presentation() const { return presentation_; }
  const RewriteSystem& rules() const { return rules_; }
  const CostructureSpec& spec() const { return spec_; }
  bool has_antipode() const { return !spec_.antipode.empty(); }

  /// Extensions to arbitrary (not necessarily normal) elements; outputs normalized.
  Tensor coproduct(const Element& f) const;
  Scalar counit(const Element& f) const;
  Element antipode(const Element& f) const;

 private:
  Tensor coproduct(const Word& w) const;
  Element antipode(const Word& w) const;

  Presentation presentation_;
  RewriteSystem rules_;
  CostructureSpec spec_;
  std::vector<Tensor> delta_;    // by letter
  std::vector<Scalar> eps_;      // by letter
  std::vector<Element> kappa_;   // by letter
};

struct AxiomResult {
  std::string axiom;
  bool holds = true;
  std::size_t words_checked = 0;
  std::optional<Word> witness;
  std::string detail;  // both sides at the witness
};

struct AxiomReport {
  std::string name;
  std::vector<AxiomResult> axioms;
  bool passed() const;
  std::size_t passed_count() const;
};

/// Coassociativity, both counit laws and both antipode laws on every
/// normal word of degree <= cutoff.
AxiomReport check_hopf_axioms(const HopfStructure& hs, std::size_t cutoff, Execution exec = Execution::parallel);

struct CompatFailure {
  std::string relation;
  std::string map;  // "Delta", "eps" or "kappa"
  std::string value;
};

struct CompatReport {
  std::string name;
  std::size_t relations = 0;
  std::vector<CompatFailure> failures;
  bool passed() const { return failures.empty(); }
};

/// Delta(r), eps(r) and kappa(r) vanish for every defining relation r.
CompatReport check_relation_compatibility(const HopfStructure& hs);

/// Every tensor term of Delta(w) has the parity of w, for normal words <= cutoff.
bool coproduct_preserves_parity(const HopfStructure& hs, std::size_t cutoff);

}  // namespace qsp
