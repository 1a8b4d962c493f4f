#ifndef RECTADEL_LINALG_HPP
#define RECTADEL_LINALG_HPP

#include "rectadel/rational.hpp"

#include <optional>
#include <vector>

namespace rectadel {

/// Dense exact matrix over Q. Sized for desk-scale rank and kernel
/// computations; no pivoting heuristics beyond first-nonzero.
class QMatrix {
public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, Scalar(0)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Scalar& at(int r, int c) { return a_[size_t(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const { return a_[size_t(r) * cols_ + c]; }

  int rank() const;
  Scalar det() const;
  /// Basis of the right kernel, one column vector per entry.
  std::vector<std::vector<Scalar>> kernel_basis() const;
  /// Solve A x = b; empty optional when inconsistent.
  std::optional<std::vector<Scalar>> solve(const std::vector<Scalar>& b) const;
  /// Indices of a maximal independent subset of the rows.
  std::vector<int> independent_rows() const;

private:
  int rows_ = 0, cols_ = 0;
  std::vector<Scalar> a_;
};

} // namespace rectadel

#endif
