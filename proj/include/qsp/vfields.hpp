#pragma once

// Operators given by commutation data, the vector fields X and Nabla on the
// function algebra, twist inference, the operator T = I + (E^2 - 1) X with
// its exact inverse square root, and chi = Nabla T^{-1/2}.

#include <map>
#include <string>
#include <vector>

#include "qsp/calculus.hpp"

namespace qsp {

/// op(g f) = sum_k coefficient_k * op_k(f) + constant * f.
struct CommutationRule {
  std::vector<std::pair<Element, std::string>> through;
  Element constant;
};

struct CommutationOperator {
  std::string name;
  Parity parity = Parity::even;
  std::map<std::string, CommutationRule> rules;  // by generator
  Element on_one;
};

/// Mutually recursive operators acting on normal words of `rules`.
class OperatorFamily {
 public:
  OperatorFamily(const RewriteSystem& rules, std::vector<CommutationOperator> ops);

  const RewriteSystem& rules() const { return rules_; }
  Element apply(const std::string& name, const Element& f) const;
  LinearMap map(const std::string& name) const;

 private:
  Element apply_word(std::size_t op, const Word& w) const;
  std::size_t index(const std::string& name) const;

  RewriteSystem rules_;
  std::vector<CommutationOperator> ops_;
  // [op][letter] -> (coefficient, operator index) pairs, constant
  std::vector<std::vector<std::vector<std::pair<Element, std::size_t>>>> through_;
  std::vector<std::vector<Element>> constant_;
  std::vector<std::vector<bool>> defined_;
};

/// X and Nabla on the algebra generated by u and eta:
///   X(u f) = (u + 2h) X f + f,   X(eta f) = eta X f,
///   Nabla(u f) = (u + h) Nabla f,   Nabla(eta f) = f - eta Nabla f.
OperatorFamily realize_vector_fields(const RewriteSystem& functions);

struct TwistResidual {
  Word f, g;
  Element defect;
};

struct TwistWitness {
  std::string op;
  std::map<std::string, Element> twist;  // by generator name
  std::vector<TwistResidual> residual;
  std::size_t products_checked = 0;
  bool automorphism = false;  // twist respects products on the same range
};

/// Solves op(g w) - op(g) w = (-1)^{|op||g|} s(g) op(w) for s(g) in the span of
/// normal words of degree <= 2, then checks
///   op(f g) = op(f) g + (-1)^{|op||f|} s(f) op(g)
/// for all normal f, g with deg f + deg g <= cutoff.
/// Throws InferenceError when the twist is not uniquely determined.
TwistWitness infer_twist(const LinearMap& op, const RewriteSystem& rules, std::size_t cutoff,
                         Execution exec = Execution::parallel);

/// The vector fields together with T, its powers and chi.
class VectorFields {
 public:
  explicit VectorFields(const RewriteSystem& functions);

  const RewriteSystem& rules() const { return family_.rules(); }
  Element X(const Element& f) const { return family_.apply("X", f); }
  Element nabla(const Element& f) const { return family_.apply("Nabla", f); }
  /// I + (E^2 - 1) X
  Element T(const Element& f) const;
  /// Binomial series of (I + (E^2 - 1) X)^alpha; terminates because X
  /// lowers the u-degree.
  Element T_power(const Element& f, const Rational& alpha) const;
  Element chi(const Element& f) const { return nabla(T_power(f, Rational(-1, 2))); }

  /// X, Nabla, T, T^-1/2 and chi as named maps.
  OperatorEnv env() const;
  /// Normal words in u and eta only.
  std::vector<Word> domain(std::size_t max_degree) const;
  const OperatorFamily& family() const { return family_; }

 private:
  OperatorFamily family_;
};

/// [X, Nabla] = 0 and Nabla^2 = 0.
std::vector<IdentityReport> check_vf_algebra(const VectorFields& vf, std::size_t cutoff,
                                             Execution exec = Execution::parallel);
/// chi^2 = 0, T chi = chi T and T^-1/2 T^-1/2 T = I.
std::vector<IdentityReport> check_dual_relations(const VectorFields& vf, std::size_t cutoff,
                                                 Execution exec = Execution::parallel);

struct ReconciliationLine {
  std::string key;
  std::string value;
  bool verified = true;  // the engine confirmed the stated value or verdict
};

/// Structured comparison of the vector fields with the canonical partials
/// of `gamma`, with the operator T and with the decomposition d = phi X + V Nabla.
std::vector<ReconciliationLine> normalization_report(const Calculus& gamma, std::size_t cutoff,
                                                     Execution exec = Execution::parallel);

}  // namespace qsp
