#pragma once

// Test-only oracles, kept independent of the implementation paths they check.

#include <random>
#include <vector>

#include "radsurf/interval.hpp"
#include "radsurf/mpoly.hpp"

namespace oracles {

using namespace radsurf;

inline Rat random_rat(std::mt19937_64& rng, long num_range = 10,
                      long den_range = 1) {
  long n = static_cast<long>(rng() % (2 * num_range + 1)) - num_range;
  long d = 1 + static_cast<long>(rng() % den_range);
  return Rat(n, d);
}

// Sparse random polynomial: each variable exponent up to maxdeg, small
// integer coefficients, ~2*maxdeg terms.
inline MPoly random_poly(std::mt19937_64& rng, const std::vector<Sym>& vars,
                         unsigned maxdeg, unsigned nterms_scale = 2,
                         long height = 10) {
  MPoly p;
  unsigned nterms = 1 + static_cast<unsigned>(rng() % (nterms_scale * maxdeg + 1));
  for (unsigned t = 0; t < nterms; ++t) {
    Mono m;
    for (Sym v : vars)
      m.e[idx(v)] = static_cast<std::uint16_t>(rng() % (maxdeg + 1));
    long c = static_cast<long>(rng() % (2 * height + 1)) - height;
    p.add_term(m, Rat(c));
  }
  return p;
}

// Dense Bareiss determinant over Q: the independent route for resultants.
inline Rat det_rat(std::vector<std::vector<Rat>> m) {
  std::size_t n = m.size();
  if (n == 0) return Rat(1);
  int sign = 1;
  Rat prev(1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t p = k + 1;
      while (p < n && m[p][k].is_zero()) ++p;
      if (p == n) return Rat(0);
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  Rat d = m[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

// Sylvester determinant of two univariate rational polynomials in v.
inline Rat sylvester_det_rat(const MPoly& a, const MPoly& b, Sym v) {
  unsigned da = a.degree(v), db = b.degree(v);
  auto lift = [&](const MPoly& p) {
    std::vector<Rat> c(p.degree(v) + 1);
    for (auto& [mono, coeff] : p.terms()) {
      Mono rest = mono;
      unsigned k = rest.e[idx(v)];
      rest.e[idx(v)] = 0;
      if (!rest.is_unit()) throw ArgumentError("not univariate");
      c[k] += coeff;
    }
    return c;
  };
  auto ca = lift(a), cb = lift(b);
  std::size_t n = da + db;
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n, Rat(0)));
  for (unsigned r = 0; r < db; ++r)
    for (unsigned j = 0; j <= da; ++j) m[r][r + j] = ca[da - j];
  for (unsigned r = 0; r < da; ++r)
    for (unsigned j = 0; j <= db; ++j) m[db + r][r + j] = cb[db - j];
  return det_rat(std::move(m));
}

// Midpoint of a ball as a double (test diagnostics only).
inline double mid(const RInt& r) {
  double lo = mpfr_get_d(r.lo.p(), MPFR_RNDN);
  double hi = mpfr_get_d(r.hi.p(), MPFR_RNDN);
  return (lo + hi) / 2;
}

}  // namespace oracles
