#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "radsurf/mpoly.hpp"

namespace radsurf {

MPoly gcd_poly(const MPoly& a, const MPoly& b);

// Pseudo-remainder of a by b in v. With exact_power, the result is
// lc(b)^(deg a - deg b + 1) * a mod b precisely, as the subresultant
// algorithm requires; otherwise trailing powers of lc(b) are dropped.
inline MPoly prem(const MPoly& a, const MPoly& b, Sym v, bool exact_power = false) {
  unsigned db = b.degree(v);
  if (db == 0) throw ArgumentError("prem by v-free divisor");
  MPoly lcb = b.coeff_of(v, db);
  MPoly r = a;
  unsigned da = a.degree(v);
  if (da < db) {
    if (exact_power) return r;  // zero reductions performed
    return r;
  }
  unsigned budget = da - db + 1, used = 0;
  while (!r.is_zero() && r.degree(v) >= db) {
    unsigned dr = r.degree(v);
    MPoly lcr = r.coeff_of(v, dr);
    r = r * lcb - b * lcr * MPoly::var(v, dr - db);
    ++used;
  }
  if (exact_power) {
    for (; used < budget; ++used) r = r * lcb;
  }
  return r;
}

// Content of p with respect to v: full gcd of the v-coefficients, scaled so
// that p / content is integer-primitive with positive leading coefficient.
inline MPoly content_in(const MPoly& p, Sym v) {
  if (p.is_zero()) return MPoly();
  MPoly c;
  for (auto& coeff : p.coeffs_in(v)) {
    if (coeff.is_zero()) continue;
    c = gcd_poly(c, coeff);
    if (c.is_constant()) break;
  }
  MPoly q = p.exact_div(c);
  return c * q.content_rat();
}

MPoly primitive_part(const MPoly& p, Sym v);

// Full multivariate gcd over Q, normalized integer-primitive, positive lead.
inline MPoly gcd_poly(const MPoly& a0, const MPoly& b0) {
  MPoly a = a0.is_zero() ? a0 : a0.primitive_rat();
  MPoly b = b0.is_zero() ? b0 : b0.primitive_rat();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_constant() || b.is_constant()) return MPoly(1);

  // Main variable: first symbol used by both.
  std::optional<Sym> main;
  std::uint32_t ma = a.vars_mask(), mb = b.vars_mask();
  for (std::size_t i = 0; i < kSymCount; ++i) {
    if ((ma & (1u << i)) && (mb & (1u << i))) { main = static_cast<Sym>(i); break; }
  }
  if (!main) {
    // Disjoint variable sets: reduce one side to its full content.
    Sym v = static_cast<Sym>(__builtin_ctz(ma));
    return gcd_poly(content_in(a, v), b);
  }
  Sym v = *main;

  MPoly ca = content_in(a, v), cb = content_in(b, v);
  MPoly g0 = gcd_poly(ca, cb);
  MPoly A = a.exact_div(ca), B = b.exact_div(cb);
  if (A.degree(v) < B.degree(v)) std::swap(A, B);

  // Primitive PRS.
  while (true) {
    if (B.is_zero()) break;
    if (B.degree(v) == 0) { B = MPoly(1); break; }
    MPoly r = prem(A, B, v);
    A = std::move(B);
    if (r.is_zero()) { B = MPoly(); break; }
    B = r.exact_div(content_in(r, v));
  }
  MPoly pp_gcd = B.is_zero() ? A : B;  // B==0: A is the last nonzero remainder
  if (pp_gcd.degree(v) > 0) pp_gcd = pp_gcd.exact_div(content_in(pp_gcd, v));
  return (g0 * pp_gcd).primitive_rat();
}

inline MPoly primitive_part(const MPoly& p, Sym v) {
  if (p.is_zero()) throw ArgumentError("primitive part of zero");
  return p.exact_div(content_in(p, v));
}

inline MPoly gcd_poly(const MPoly& a, const MPoly& b, Sym v) {
  // gcd viewed in (coefficient field)[v], primitive in v, positive lead.
  MPoly g = gcd_poly(a, b);
  if (g.degree(v) == 0) return MPoly(1);
  return primitive_part(g, v);
}

// Yun squarefree decomposition with respect to v. Returns (factor, exponent)
// pairs with pairwise-coprime primitive factors; the product with exponents
// reconstructs p up to a unit of the coefficient ring.
inline std::vector<std::pair<MPoly, unsigned>> squarefree_decomposition(
    const MPoly& p0, Sym v) {
  if (p0.is_zero()) throw ArgumentError("squarefree decomposition of zero");
  std::vector<std::pair<MPoly, unsigned>> out;
  if (p0.degree(v) == 0) return out;
  MPoly p = primitive_part(p0, v);
  MPoly dp = p.derivative(v);
  MPoly g = gcd_poly(p, dp);
  MPoly c = p.exact_div(g);
  MPoly d = dp.exact_div(g) - c.derivative(v);
  unsigned i = 1;
  while (!(c.is_constant())) {
    MPoly ai = gcd_poly(c, d);
    if (ai.degree(v) > 0) out.emplace_back(ai, i);
    c = c.exact_div(ai);
    d = d.exact_div(ai) - c.derivative(v);
    ++i;
  }
  return out;
}

inline MPoly squarefree_part(const MPoly& p, Sym v) {
  MPoly r(1);
  for (auto& [f, e] : squarefree_decomposition(p, v)) r *= f;
  return r;
}

}  // namespace radsurf
