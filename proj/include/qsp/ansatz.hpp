#pragma once

// Template relations with unknown coefficients, the constraint systems that
// consistency requirements impose on them, and a case-splitting solver.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qsp/calculus.hpp"

namespace qsp {

struct Requirement {
  enum class Kind { d_kills, right_mul, confluent } kind;
  std::string relation;   // d_kills, right_mul
  std::string generator;  // right_mul
  std::string presentation;  // confluent
  std::string label() const;
};

struct AnsatzProblem {
  std::string name;
  Presentation base;               // known relations; its alphabet fixes the word order
  std::vector<Relation> templates; // coefficients may mention the unknowns
  std::vector<std::string> unknowns;
  DerivationSpec derivation;       // used by d_kills
  std::vector<Requirement> requirements;
  std::map<std::string, Scalar> point;        // reference solution, unlisted unknowns are 0
  std::optional<Presentation> target;         // relations the reference solution should give
  std::size_t cutoff = 6;

  /// Base relations followed by the templates.
  Presentation combined() const;
};

struct ConstraintSet {
  std::vector<Polynomial> constraints;
  std::vector<std::string> origins;  // requirement that first produced each constraint
};

/// Numerator with its content over the non-unknown variables removed, made
/// monic; zero stays zero and a pure parameter expression becomes 1.
Polynomial reduce_constraint(const Scalar& s, const std::vector<std::string>& unknowns);

/// Normalizes each requirement's expression with the templates as rules and
/// collects the coefficient of every normal word.
ConstraintSet derive_constraints(const AnsatzProblem& p, Execution exec = Execution::parallel);

struct SolutionFamily {
  std::map<std::string, Scalar> bindings;  // by unknown name, in terms of free unknowns
  std::vector<std::string> free;
  std::vector<Polynomial> nonzero;         // case conditions assumed nonzero
  std::vector<Polynomial> residual;        // constraints the solver could not resolve
  bool verified = false;                   // every constraint vanishes after substitution
};

struct SolveResult {
  std::vector<SolutionFamily> families;
  std::size_t splits = 0;
  bool complete = true;  // false when the split budget ran out or residuals remain
};

SolveResult solve(const ConstraintSet& cs, const std::vector<std::string>& unknowns, std::size_t max_splits = 64);

/// True when every point of `a` lies in `b`.
bool contained(const SolutionFamily& a, const SolutionFamily& b);
/// True when the full assignment `point` lies in the family.
bool member(const std::map<std::string, Scalar>& point, const SolutionFamily& f, const std::vector<std::string>& unknowns);

/// point with unlisted unknowns set to 0.
std::map<std::string, Scalar> complete_point(const std::map<std::string, Scalar>& point,
                                             const std::vector<std::string>& unknowns);

struct VerificationReport {
  std::vector<Relation> instantiated;  // templates with the bindings substituted
  std::vector<Relation> derived;       // nonzero d(r) for the instantiated relations
  bool compiled = false;
  std::string compile_error;
  bool confluent = false;
  bool differential_ok = false;   // d respects every relation, derived ones included
  bool d_squared_zero = false;    // on normal words <= cutoff
  std::optional<bool> matches_target;
  std::vector<std::string> target_mismatches;
  bool passed() const;
};

VerificationReport verify_solution(const AnsatzProblem& p, const std::map<std::string, Scalar>& bindings,
                                   Execution exec = Execution::parallel);

/// e divided by the coefficient of its largest word.
Element monic(const Element& e);

}  // namespace qsp
