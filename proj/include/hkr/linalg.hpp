#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hkr/cyclo.hpp"

namespace hkr {

using SparseRow = std::vector<std::pair<uint32_t, CycNum>>;

// Incremental row echelon form over k with sparse rows. Each pivot row is
// normalized to 1 at its pivot column and has support at columns >= pivot.
class Echelon {
 public:
  explicit Echelon(uint32_t ncols) : ncols_(ncols), pivot_of_col_(ncols, -1) {}

  // Reduces row against the current pivots; adds it as a pivot if nonzero.
  // Returns true when the row was independent.
  bool add(const SparseRow& row);
  // Reduces a row against the pivots without inserting it.
  SparseRow reduce(const SparseRow& row) const;

  uint32_t ncols() const { return ncols_; }
  size_t rank() const { return rows_.size(); }
  const std::vector<SparseRow>& rows() const { return rows_; }
  int pivot_row(uint32_t col) const { return pivot_of_col_[col]; }

  // Basis of {x : every added row · x = 0}, as dense vectors.
  std::vector<std::vector<CycNum>> null_space() const;

 private:
  uint32_t ncols_;
  std::vector<SparseRow> rows_;
  std::vector<uint32_t> pivot_col_;
  std::vector<int> pivot_of_col_;
};

// Solves rows · x = rhs; free variables are set to zero. nullopt when
// inconsistent.
std::optional<std::vector<CycNum>> solve_linear(const std::vector<SparseRow>& rows,
                                                const std::vector<CycNum>& rhs, uint32_t ncols);

std::vector<std::vector<CycNum>> null_space(const std::vector<SparseRow>& rows, uint32_t ncols);

// Dense helpers for small matrices.
using Matrix = std::vector<std::vector<CycNum>>;
std::optional<Matrix> invert_matrix(const Matrix& m);
Matrix mat_mul(const Matrix& a, const Matrix& b);

}  // namespace hkr
