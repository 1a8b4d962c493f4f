#include "rectadel/linalg.hpp"

#include <stdexcept>

namespace rectadel {

namespace {

// Row echelon in place; returns pivot columns. Tracks row ops on an
// optional companion (for solve).
std::vector<int> echelon(std::vector<std::vector<Scalar>>& m)
{
  std::vector<int> pivots;
  size_t rows = m.size();
  if (rows == 0) return pivots;
  size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    Scalar inv = 1 / m[r][c];
    for (size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Scalar f = m[i][c];
      for (size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  return pivots;
}

std::vector<std::vector<Scalar>> to_rows(const QMatrix& m)
{
  std::vector<std::vector<Scalar>> rows(m.rows(), std::vector<Scalar>(m.cols(), Scalar(0)));
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) rows[r][c] = m.at(r, c);
  return rows;
}

} // namespace

int QMatrix::rank() const
{
  auto rows = to_rows(*this);
  return static_cast<int>(echelon(rows).size());
}

Scalar QMatrix::det() const
{
  if (rows_ != cols_) throw std::invalid_argument("det of non-square matrix");
  auto m = to_rows(*this);
  Scalar d(1);
  int n = rows_;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return Scalar(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    Scalar inv = 1 / m[c][c];
    for (int i = c + 1; i < n; ++i) {
      if (m[i][c] == 0) continue;
      Scalar f = m[i][c] * inv;
      for (int k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return d;
}

std::vector<std::vector<Scalar>> QMatrix::kernel_basis() const
{
  auto m = to_rows(*this);
  auto pivots = echelon(m);
  std::vector<bool> is_pivot(cols_, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Scalar>> basis;
  for (int fc = 0; fc < cols_; ++fc) {
    if (is_pivot[fc]) continue;
    std::vector<Scalar> v(cols_, Scalar(0));
    v[fc] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<std::vector<Scalar>> QMatrix::solve(const std::vector<Scalar>& b) const
{
  if (static_cast<int>(b.size()) != rows_) throw std::invalid_argument("solve: size mismatch");
  std::vector<std::vector<Scalar>> m(rows_, std::vector<Scalar>(cols_ + 1, Scalar(0)));
  for (int r = 0; r < rows_; ++r) {
    for (int c = 0; c < cols_; ++c) m[r][c] = at(r, c);
    m[r][cols_] = b[r];
  }
  auto pivots = echelon(m);
  for (int c : pivots)
    if (c == cols_) return std::nullopt;
  std::vector<Scalar> x(cols_, Scalar(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols_];
  return x;
}

std::vector<int> QMatrix::independent_rows() const
{
  std::vector<int> keep;
  // incremental RREF: rref[lead column] = normalized row with that lead
  std::vector<std::optional<std::vector<Scalar>>> rref(cols_);
  for (int r = 0; r < rows_; ++r) {
    std::vector<Scalar> v(cols_);
    for (int c = 0; c < cols_; ++c) v[c] = at(r, c);
    int lead = -1;
    for (int c = 0; c < cols_; ++c) {
      if (v[c] == 0) continue;
      if (rref[c]) {
        Scalar f = v[c];
        for (int k = c; k < cols_; ++k) v[k] -= f * (*rref[c])[k];
      } else {
        lead = c;
        break;
      }
    }
    if (lead < 0) continue;
    Scalar inv = 1 / v[lead];
    for (int k = lead; k < cols_; ++k) v[k] *= inv;
    rref[lead] = std::move(v);
    keep.push_back(r);
  }
  return keep;
}

} // namespace rectadel
