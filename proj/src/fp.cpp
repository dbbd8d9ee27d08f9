#include "pswaring/fp.hpp"

#include <omp.h>

namespace pswaring {

namespace {

// Shared echelon core; `parallel` gates the row-update pragma.
int echelon_rank(const FpField& F, FpMatrix& m, bool parallel) {
  const std::uint64_t p = F.prime();
  const int rows = m.rows, cols = m.cols;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i) {
      if (m.at(i, col) != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != rank) {
      std::uint32_t* a = m.row(rank);
      std::uint32_t* b = m.row(pivot);
      for (int j = col; j < cols; ++j) std::swap(a[j], b[j]);
    }
    const std::uint32_t inv = F.inv(m.at(rank, col));
    std::uint32_t* rp = m.row(rank);
    for (int j = col; j < cols; ++j) rp[j] = F.mul(rp[j], inv);

#pragma omp parallel for schedule(static) if (parallel && rows - rank > 64)
    for (int i = rank + 1; i < rows; ++i) {
      std::uint32_t* ri = m.row(i);
      const std::uint32_t f = ri[col];
      if (f == 0) continue;
      const std::uint64_t fneg = p - f;
      for (int j = col; j < cols; ++j)
        ri[j] = std::uint32_t((ri[j] + fneg * rp[j]) % p);
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int fp_rank(const FpField& F, FpMatrix m) { return echelon_rank(F, m, true); }

int fp_rank_single_thread(const FpField& F, FpMatrix m) { return echelon_rank(F, m, false); }

int fp_rank_reference(const FpField& F, FpMatrix m) {
  // Independent of the production kernel on purpose: straight elimination
  // without normalization, eliminating with explicit pivot inverses.
  const int rows = m.rows, cols = m.cols;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (m.at(i, col) != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    for (int j = 0; j < cols; ++j) std::swap(m.at(rank, j), m.at(pivot, j));
    const std::uint32_t pv = m.at(rank, col);
    for (int i = rank + 1; i < rows; ++i) {
      if (m.at(i, col) == 0) continue;
      const std::uint32_t f = F.mul(m.at(i, col), F.inv(pv));
      for (int j = col; j < cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(rank, j)));
    }
    ++rank;
  }
  return rank;
}

std::vector<std::vector<std::uint32_t>> fp_nullspace(const FpField& F, FpMatrix m) {
  const int rows = m.rows, cols = m.cols;
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (m.at(i, col) != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int j = 0; j < cols; ++j) std::swap(m.at(rank, j), m.at(pivot, j));
    const std::uint32_t inv = F.inv(m.at(rank, col));
    for (int j = col; j < cols; ++j) m.at(rank, j) = F.mul(m.at(rank, j), inv);
    for (int i = 0; i < rows; ++i) {
      if (i == rank || m.at(i, col) == 0) continue;
      const std::uint32_t f = m.at(i, col);
      for (int j = col; j < cols; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(f, m.at(rank, j)));
    }
    pivot_col.push_back(col);
    ++rank;
  }

  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<std::uint32_t>> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<std::uint32_t> v(cols, 0);
    v[free] = 1;
    for (int i = 0; i < rank; ++i)
      v[pivot_col[i]] = F.neg(m.at(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

int rational_rank(const std::vector<std::vector<long long>>& m, int size_guard) {
  const int rows = int(m.size());
  const int cols = rows ? int(m[0].size()) : 0;
  if (rows > size_guard || cols > size_guard)
    throw std::invalid_argument("rational_rank: system too large for exact Q elimination");

  std::vector<std::vector<BigRat>> a(rows, std::vector<BigRat>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = BigRat(m[i][j]);

  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][col] != 0) { pivot = i; break; }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    const BigRat pv = a[rank][col];
    for (int i = rank + 1; i < rows; ++i) {
      if (a[i][col] == 0) continue;
      const BigRat f = a[i][col] / pv;
      for (int j = col; j < cols; ++j) a[i][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace pswaring
