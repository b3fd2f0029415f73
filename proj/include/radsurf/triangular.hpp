#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "radsurf/ratfunc.hpp"

namespace radsurf {

// Squarefree univariate modulus m(var) over Q(s); the quotient ring
// Q(s)[var]/(m) is a product of fields, handled by dynamic evaluation:
// inverting a zero divisor splits the modulus and computation continues
// on each branch.
struct TriangularModulus {
  Sym var = Sym::alpha;
  UPolyF m;  // monic, squarefree, degree >= 1

  unsigned degree() const { return static_cast<unsigned>(m.degree()); }
};

// Ring element: residue class, reduced representative of degree < deg(m).
using AlgElem = UPolyF;

inline AlgElem reduce_mod(const AlgElem& e, const UPolyF& m) { return e.mod(m); }

struct InvOutcome {
  std::optional<AlgElem> inverse;  // set when the element is invertible
  UPolyF split_a, split_b;         // otherwise a nontrivial factorization of m
  bool is_split() const { return !inverse.has_value(); }
};

// Inverse of e modulo m, or a splitting of m exposing e as a zero divisor.
inline InvOutcome inv_mod(const AlgElem& e0, const UPolyF& m) {
  AlgElem e = reduce_mod(e0, m);
  if (e.is_zero()) {
    // zero on the whole branch; callers must not ask for its inverse
    throw DivisionError("inverse of zero residue");
  }
  UPolyF r0 = m, r1 = e;
  UPolyF t0, t1(RatFunc(Rat(1)));
  while (!r1.is_zero()) {
    auto [q, r2] = r0.divrem(r1);
    UPolyF t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.degree() == 0) {
    InvOutcome out;
    out.inverse = (t0 * r0.lead().inv()).mod(m);
    return out;
  }
  InvOutcome out;
  out.split_a = r0.monic();
  out.split_b = m.exact_div(out.split_a).monic();
  return out;
}

// Polynomial in a work variable with residue-class coefficients.
using APoly = std::vector<AlgElem>;  // ascending, may carry zero leads

inline APoly ap_reduce(const APoly& p, const UPolyF& m) {
  APoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = reduce_mod(p[i], m);
  while (!r.empty() && r.back().is_zero()) r.pop_back();
  return r;
}
inline bool ap_is_zero(const APoly& p) {
  for (auto& c : p)
    if (!c.is_zero()) return false;
  return true;
}
inline int ap_degree(const APoly& p) { return static_cast<int>(p.size()) - 1; }

inline APoly ap_mul(const APoly& a, const APoly& b, const UPolyF& m) {
  if (a.empty() || b.empty()) return {};
  APoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = r[i + j] + a[i] * b[j];
  return ap_reduce(r, m);
}
inline APoly ap_add(const APoly& a, const APoly& b, const UPolyF& m) {
  APoly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < r.size(); ++i) {
    AlgElem x = i < a.size() ? a[i] : AlgElem();
    AlgElem y = i < b.size() ? b[i] : AlgElem();
    r[i] = x + y;
  }
  return ap_reduce(r, m);
}
inline APoly ap_scale(const APoly& a, const AlgElem& k, const UPolyF& m) {
  APoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] * k).mod(m);
  while (!r.empty() && r.back().is_zero()) r.pop_back();
  return r;
}

template <typename T>
struct Branch {
  UPolyF modulus;
  T value;
};

// Monic gcd of p and q modulo each factor of a splitting of m. The split
// moduli are pairwise coprime and their product is m up to unit.
inline std::vector<Branch<APoly>> d5_gcd(const APoly& p0, const APoly& q0,
                                         const UPolyF& m0) {
  std::vector<Branch<APoly>> out;
  struct Item { UPolyF m; APoly a, b; };
  std::vector<Item> work{{m0, p0, q0}};
  while (!work.empty()) {
    auto [m, a, b] = std::move(work.back());
    work.pop_back();
    a = ap_reduce(a, m);
    b = ap_reduce(b, m);
    for (;;) {
      if (b.empty()) {
        if (a.empty()) {
          out.push_back({m, APoly{}});
          break;
        }
        // monic-normalize a; inversion of its lead may split
        InvOutcome inv = inv_mod(a.back(), m);
        if (inv.is_split()) {
          work.push_back({inv.split_a, a, b});
          work.push_back({inv.split_b, a, b});
          break;
        }
        out.push_back({m, ap_scale(a, *inv.inverse, m)});
        break;
      }
      InvOutcome inv = inv_mod(b.back(), m);
      if (inv.is_split()) {
        work.push_back({inv.split_a, a, b});
        work.push_back({inv.split_b, a, b});
        break;
      }
      // one division step: r = a mod b (b made monic on the fly)
      APoly bm = ap_scale(b, *inv.inverse, m);
      APoly r = a;
      while (!r.empty() && ap_degree(r) >= ap_degree(bm)) {
        AlgElem lead = r.back();
        std::size_t shift = r.size() - bm.size();
        // r -= lead * x^shift * bm
        for (std::size_t i = 0; i < bm.size(); ++i)
          r[i + shift] = (r[i + shift] - lead * bm[i]).mod(m);
        while (!r.empty() && r.back().is_zero()) r.pop_back();
      }
      a = std::move(bm);
      b = std::move(r);
    }
  }
  return out;
}

// Smallest level with a coefficient that does not vanish identically on the
// branch; splits when family members disagree. levels[d] lists the residue
// classes at level d; scanning past the last level yields no branch (callers
// treat that as an error).
inline std::vector<Branch<unsigned>> d5_first_nonzero_level(
    const std::vector<std::vector<AlgElem>>& levels, const UPolyF& m0) {
  std::vector<Branch<unsigned>> out;
  struct Item { UPolyF m; unsigned d; };
  std::vector<Item> work{{m0, 0}};
  while (!work.empty()) {
    auto [m, d] = std::move(work.back());
    work.pop_back();
    bool emitted = false;
    for (unsigned lvl = d; lvl < levels.size(); ++lvl) {
      // locus inside this branch where all level-lvl residues vanish
      UPolyF g = m;
      for (auto& c : levels[lvl]) {
        if (g.degree() == 0) break;
        g = gcd_upoly(g, reduce_mod(c, m));
      }
      if (g.degree() == 0) {  // some residue invertible on the whole branch
        out.push_back({m, lvl});
        emitted = true;
        break;
      }
      if (g.degree() == m.degree()) continue;  // all vanish: next level
      // split: on m/g some residue is nonzero; on g all vanish
      out.push_back({m.exact_div(g).monic(), lvl});
      work.push_back({g.monic(), lvl + 1});
      emitted = true;
      break;
    }
    if (!emitted)
      throw InternalError("vanishing to all inspected orders on a branch");
  }
  return out;
}

}  // namespace radsurf
