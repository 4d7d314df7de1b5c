#pragma once

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <variant>

#include "qsp/algebra.hpp"
#include "qsp/syntax.hpp"
#include "qsp/tensor.hpp"

namespace qsp {

using Value = std::variant<Scalar, Element, Tensor>;

struct EvalContext {
  /// Generators that may appear; null for pure scalar expressions.
  const Alphabet* alphabet = nullptr;
  /// Products are normalized here; null keeps raw concatenations.
  const RewriteSystem* rules = nullptr;
  /// Accepted scalar symbols besides h, E and q (= E).
  std::set<std::string> scalar_names;
  bool allow_any_scalar_name = false;
  std::function<Element(const Element&)> derivation;                        // D(...)
  std::function<std::pair<Element, Element>(const Element&)> partials;      // P_u, P_eta
};

/// Throws NameError for unknown symbols and DomainError for ill-typed
/// operations (e.g. dividing by a generator).
Value evaluate(const SyntaxTree& t, const EvalContext& ctx);

Scalar evaluate_scalar(const SyntaxTree& t, const EvalContext& ctx);
/// Scalars are promoted to multiples of the empty word.
Element evaluate_element(const SyntaxTree& t, const EvalContext& ctx);
/// Elements are promoted to 1-fold tensors.
Tensor evaluate_tensor(const SyntaxTree& t, const EvalContext& ctx);

Scalar parse_scalar(std::string_view text, const EvalContext& ctx = {});
Element parse_element(std::string_view text, const EvalContext& ctx);

std::string to_string(const Value& v, const Alphabet* alphabet);

}  // namespace qsp
