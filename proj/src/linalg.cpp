#include "spinh/linalg.hpp"

#include <algorithm>

namespace spinh {

SolveResult solve_exact(std::vector<std::vector<Rat>> m, std::vector<Rat> b) {
  const std::size_t rows = m.size();
  if (b.size() != rows) throw std::domain_error("solve_exact: shape mismatch");
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (const auto& row : m)
    if (row.size() != cols) throw std::domain_error("solve_exact: ragged matrix");

  std::vector<std::size_t> pivot_row_of_col(cols, SIZE_MAX);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = SIZE_MAX;
    for (std::size_t row = rank; row < rows; ++row)
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot == SIZE_MAX) continue;
    std::swap(m[pivot], m[rank]);
    std::swap(b[pivot], b[rank]);
    const Rat inv = Rat(1) / m[rank][col];
    for (std::size_t j = col; j < cols; ++j) m[rank][j] *= inv;
    b[rank] *= inv;
    for (std::size_t row = 0; row < rows; ++row) {
      if (row == rank || m[row][col] == 0) continue;
      const Rat f = m[row][col];
      for (std::size_t j = col; j < cols; ++j) m[row][j] -= f * m[rank][j];
      b[row] -= f * b[rank];
    }
    pivot_row_of_col[col] = rank;
    ++rank;
  }
  for (std::size_t row = rank; row < rows; ++row)
    if (b[row] != 0) return {SolveStatus::inconsistent, {}};
  for (std::size_t col = 0; col < cols; ++col)
    if (pivot_row_of_col[col] == SIZE_MAX) return {SolveStatus::underdetermined, {}};
  std::vector<Rat> x(cols);
  for (std::size_t col = 0; col < cols; ++col) x[col] = b[pivot_row_of_col[col]];
  return {SolveStatus::unique_solution, std::move(x)};
}

namespace {

using Mat = std::vector<std::vector<mpz_class>>;

bool find_nonzero(const Mat& m, std::size_t t, std::size_t& oi, std::size_t& oj) {
  bool found = false;
  for (std::size_t i = t; i < m.size(); ++i)
    for (std::size_t j = t; j < m[i].size(); ++j)
      if (m[i][j] != 0 &&
          (!found || cmp(abs(m[i][j]), abs(m[oi][oj])) < 0)) {
        oi = i;
        oj = j;
        found = true;
      }
  return found;
}

}  // namespace

std::vector<mpz_class> smith_diagonal(Mat m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<mpz_class> diag;
  std::size_t t = 0;
  while (t < rows && t < cols) {
    std::size_t pi = t, pj = t;
    if (!find_nonzero(m, t, pi, pj)) break;
    std::swap(m[pi], m[t]);
    for (auto& row : m) std::swap(row[pj], row[t]);
    // Reduce row and column below/right of the pivot until it divides them.
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (m[i][t] == 0) continue;
        mpz_class q = m[i][t] / m[t][t];
        for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
        if (m[i][t] != 0) {  // remainder smaller than pivot: swap up and restart
          std::swap(m[i], m[t]);
          dirty = true;
        }
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (m[t][j] == 0) continue;
        mpz_class q = m[t][j] / m[t][t];
        for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
        if (m[t][j] != 0) {
          for (std::size_t i = 0; i < rows; ++i) std::swap(m[i][j], m[i][t]);
          dirty = true;
        }
      }
    }
    // Ensure the pivot divides the rest of the submatrix.
    bool fixed = false;
    for (std::size_t i = t + 1; i < rows && !fixed; ++i)
      for (std::size_t j = t + 1; j < cols && !fixed; ++j)
        if (m[i][j] % m[t][t] != 0) {
          for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
          fixed = true;
        }
    if (fixed) continue;  // redo the reduction at the same t
    diag.push_back(abs(m[t][t]));
    ++t;
  }
  while (t < std::min(rows, cols)) {
    diag.push_back(0);
    ++t;
  }
  return diag;
}

}  // namespace spinh
