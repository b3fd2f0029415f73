#pragma once

#include <utility>
#include <vector>

#include "radsurf/mpoly_gcd.hpp"

namespace radsurf {

// Fraction-free Bareiss determinant of a square MPoly matrix.
inline MPoly bareiss_det(std::vector<std::vector<MPoly>> m) {
  std::size_t n = m.size();
  if (n == 0) return MPoly(1);
  int sign = 1;
  MPoly prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return MPoly();
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
    prev = m[k][k];
  }
  return sign < 0 ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

// Sylvester matrix of (a, b) in v; requires positive degree on both sides.
inline std::vector<std::vector<MPoly>> sylvester_matrix(const MPoly& a,
                                                        const MPoly& b, Sym v) {
  unsigned da = a.degree(v), db = b.degree(v);
  auto ca = a.coeffs_in(v), cb = b.coeffs_in(v);
  std::size_t n = da + db;
  std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n));
  for (unsigned r = 0; r < db; ++r)
    for (unsigned j = 0; j <= da; ++j) m[r][r + j] = ca[da - j];
  for (unsigned r = 0; r < da; ++r)
    for (unsigned j = 0; j <= db; ++j) m[db + r][r + j] = cb[db - j];
  return m;
}

inline MPoly resultant_bareiss(const MPoly& a, const MPoly& b, Sym v) {
  unsigned da = a.degree(v), db = b.degree(v);
  if (da == 0 && db == 0)
    throw ArgumentError("resultant of two v-free polynomials");
  if (a.is_zero() || b.is_zero()) return MPoly();
  if (da == 0) return a.pow(db);
  if (db == 0) return b.pow(da);
  return bareiss_det(sylvester_matrix(a, b, v));
}

// Resultant via the subresultant PRS; equals the Sylvester determinant
// exactly, sign included. Falls back to Bareiss if a division degenerates.
inline MPoly resultant(const MPoly& a0, const MPoly& b0, Sym v) {
  unsigned da0 = a0.degree(v), db0 = b0.degree(v);
  if (da0 == 0 && db0 == 0)
    throw ArgumentError("resultant of two v-free polynomials");
  if (a0.is_zero() || b0.is_zero()) return MPoly();
  if (da0 == 0) return a0.pow(db0);
  if (db0 == 0) return b0.pow(da0);

  MPoly A = a0, B = b0;
  int sign = 1;
  if (A.degree(v) < B.degree(v)) {
    if ((A.degree(v) & 1u) && (B.degree(v) & 1u)) sign = -sign;
    std::swap(A, B);
  }
  MPoly ca = content_in(A, v), cb = content_in(B, v);
  A = A.exact_div(ca);
  B = B.exact_div(cb);
  MPoly t = ca.pow(B.degree(v)) * cb.pow(A.degree(v));

  try {
    MPoly g(1), h(1);
    while (true) {
      unsigned dA = A.degree(v), dB = B.degree(v);
      unsigned delta = dA - dB;
      if ((dA & 1u) && (dB & 1u)) sign = -sign;
      MPoly R = prem(A, B, v, /*exact_power=*/true);
      A = std::move(B);
      MPoly divisor = g * h.pow(delta);
      B = R.is_zero() ? MPoly() : R.exact_div(divisor);
      if (B.is_zero()) return MPoly();
      g = A.coeff_of(v, A.degree(v));
      if (delta == 0) {
        // h unchanged
      } else if (delta == 1) {
        h = g;
      } else {
        h = g.pow(delta).exact_div(h.pow(delta - 1));
      }
      if (B.degree(v) == 0) break;
    }
    unsigned q = A.degree(v);
    MPoly res = B.pow(q);
    if (q >= 1) res = res.exact_div(h.pow(q - 1));
    res = res * t;
    return sign < 0 ? -res : res;
  } catch (const DivisionError&) {
    MPoly res = resultant_bareiss(a0, b0, v);
    return res;
  }
}

}  // namespace radsurf
