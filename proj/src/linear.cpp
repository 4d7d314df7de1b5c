#include "qsp/linear.hpp"

namespace qsp {

LinearSolution solve_linear(std::vector<std::vector<Scalar>> rows, std::size_t unknowns) {
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t col = 0; col < unknowns && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    // prefer the simplest pivot so intermediate expressions stay small
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (!rows[r][col].is_zero() && (rows[pivot][col].is_zero() || (rows[r][col].is_constant() && !rows[pivot][col].is_constant())))
        pivot = r;
    if (rows[pivot][col].is_zero()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Scalar inv = rows[rank][col].inverse();
    for (auto& v : rows[rank]) v *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      const Scalar f = rows[r][col];
      for (std::size_t k = col; k <= unknowns; ++k) rows[r][k] -= f * rows[rank][k];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  LinearSolution out{LinearSolution::Status::unique, {}, rank};
  for (std::size_t r = rank; r < rows.size(); ++r)
    if (!rows[r][unknowns].is_zero()) {
      out.status = LinearSolution::Status::inconsistent;
      return out;
    }
  if (rank < unknowns) {
    out.status = LinearSolution::Status::underdetermined;
    return out;
  }
  out.values.assign(unknowns, Scalar());
  for (std::size_t r = 0; r < rank; ++r) out.values[pivot_col[r]] = rows[r][unknowns];
  return out;
}

}  // namespace qsp
