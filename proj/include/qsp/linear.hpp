#pragma once

#include <optional>
#include <vector>

#include "qsp/scalar.hpp"

namespace qsp {

struct LinearSolution {
  enum class Status { unique, underdetermined, inconsistent } status;
  std::vector<Scalar> values;  // when unique
  std::size_t rank = 0;
};

/// Gauss-Jordan elimination of rows (a_1 .. a_n | b) over the Scalar field.
LinearSolution solve_linear(std::vector<std::vector<Scalar>> rows, std::size_t unknowns);

}  // namespace qsp
