#pragma once

// Named presentations, calculi, Hopf structures and ansatz problems, with
// compiled forms cached until the next load.

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qsp/definitions.hpp"
#include "qsp/evaluate.hpp"
#include "qsp/parallel.hpp"

namespace qsp {

class Session {
 public:
  /// Preloads the builtin definitions.
  Session();

  /// Returns the names defined by the text, in file order.
  std::vector<std::string> load_text(std::string_view text, const std::string& source);
  /// Reads a file from disk, falling back to a builtin file of that name.
  std::vector<std::string> load_file(const std::string& path);

  const AlgebraDefinition& algebra(const std::string& name) const;
  const RewriteSystem& rules(const std::string& name);
  const Calculus& calculus(const std::string& name);
  const HopfStructure& hopf(const std::string& name);
  const AnsatzProblem& ansatz(const std::string& name) const;
  /// The ansatz problems a file defines (loading it first).
  std::vector<const AnsatzProblem*> ansatz_file(const std::string& path);

  /// Evaluation context for expressions over the named algebra; D(...) and
  /// the partials are available when the algebra carries a derivation.
  EvalContext context(const std::string& name);

  const Definitions& definitions() const { return defs_; }

  std::size_t cutoff = 6;
  std::size_t split_budget = 64;
  Execution exec = Execution::parallel;

 private:
  void merge(Definitions d);

  Definitions defs_;
  std::map<std::string, std::unique_ptr<RewriteSystem>> rules_;
  std::map<std::string, std::unique_ptr<Calculus>> calculi_;
  std::map<std::string, std::unique_ptr<HopfStructure>> hopf_;
};

}  // namespace qsp
