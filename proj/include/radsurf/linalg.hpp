#pragma once

#include <optional>
#include <vector>

#include "radsurf/ratfunc.hpp"

namespace radsurf {

using RfVec = std::vector<RatFunc>;
using RfMat = std::vector<RfVec>;

// Reduced row echelon form in place; returns the pivot column of each kept
// row. Pivoting scans columns left to right, rows top-down: deterministic.
inline std::vector<std::size_t> rref(RfMat& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  std::size_t ncols = m[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && m[sel][col].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    RatFunc inv = m[row][col].inv();
    for (std::size_t j = col; j < ncols; ++j) m[row][j] = m[row][j] * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][col].is_zero()) continue;
      RatFunc f = m[i][col];
      for (std::size_t j = col; j < ncols; ++j)
        m[i][j] = m[i][j] - f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  m.resize(row);  // drop zero rows
  return pivots;
}

// Basis of the solution space of the homogeneous system rows * x = 0.
inline std::vector<RfVec> nullspace(RfMat rows, std::size_t ncols) {
  for (auto& r : rows) r.resize(ncols);
  auto pivots = rref(rows);
  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<RfVec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    RfVec v(ncols);
    v[f] = RatFunc(Rat(1));
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -rows[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Canonical basis of the span of the given vectors: RREF rows, ordered by
// pivot column.
inline std::vector<RfVec> canonical_span(std::vector<RfVec> vecs) {
  rref(vecs);
  return vecs;
}

// Unique solution of a square-ish system A x = b, if any.
inline std::optional<RfVec> solve_unique(RfMat a, const RfVec& b) {
  std::size_t ncols = a.empty() ? 0 : a[0].size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto pivots = rref(a);
  RfVec x(ncols);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == ncols) return std::nullopt;  // inconsistent
    x[pivots[r]] = a[r][ncols];
  }
  if (pivots.size() < ncols) return std::nullopt;  // underdetermined
  return x;
}

}  // namespace radsurf
