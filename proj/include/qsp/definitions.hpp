#pragma once

// Loader for definition files: algebras, derivations, costructures and
// ansatz problems. The grammar is documented in docs/grammar.md.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qsp/algebra.hpp"
#include "qsp/ansatz.hpp"
#include "qsp/calculus.hpp"
#include "qsp/hopf.hpp"

namespace qsp {

struct AlgebraDefinition {
  Presentation presentation;
  std::optional<DerivationSpec> derivation;
};

struct CostructureDefinition {
  std::string algebra;
  CostructureSpec spec;
};

struct Definitions {
  std::vector<AlgebraDefinition> algebras;
  std::vector<CostructureDefinition> costructures;
  std::vector<AnsatzProblem> ansatze;

  const AlgebraDefinition* algebra(std::string_view name) const;
};

/// Looks up algebras defined outside the file (builtins, earlier loads).
using AlgebraResolver = std::function<const AlgebraDefinition*(const std::string&)>;

/// Throws ParseError whose message starts with "source:line:" and whose
/// offset is the byte offset of the offending line.
Definitions parse_definitions(std::string_view text, const std::string& source,
                              const AlgebraResolver& resolve = {});

/// Builtin definition texts, keyed by file name.
std::string_view builtin_text(std::string_view file);
std::vector<std::string> builtin_files();

}  // namespace qsp
