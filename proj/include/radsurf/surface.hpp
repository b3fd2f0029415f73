#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "radsurf/mpoly_gcd.hpp"
#include "radsurf/rad_solve.hpp"
#include "radsurf/verify.hpp"

namespace radsurf {

struct Surface {
  MPoly F;          // polynomial in x, y, z over Q
  unsigned degree;  // total degree

  static Surface from_poly(MPoly f) {
    if (f.is_zero() || f.is_constant())
      throw ArgumentError("surface polynomial must be nonconstant");
    std::uint32_t allowed =
        (1u << idx(Sym::x)) | (1u << idx(Sym::y)) | (1u << idx(Sym::z));
    if (f.vars_mask() & ~allowed)
      throw ArgumentError("surface polynomial must use only x, y, z");
    unsigned d = f.total_degree();
    return Surface{std::move(f), d};
  }
};

struct SurfacePoint {
  Rat a, b, c;
  unsigned multiplicity = 0;
};

// Multiplicity of a rational point: order of the lowest nonvanishing Taylor
// term at the translated origin.
inline unsigned multiplicity_at(const Surface& S, const Rat& a, const Rat& b,
                                const Rat& c) {
  MPoly shifted = S.F.substitute(
      {{Sym::x, MPoly::var(Sym::x) + MPoly(a)},
       {Sym::y, MPoly::var(Sym::y) + MPoly(b)},
       {Sym::z, MPoly::var(Sym::z) + MPoly(c)}});
  unsigned m = shifted.min_total_degree();
  if (m == 0) throw NotOnSurface("point does not lie on the surface");
  return m;
}
inline SurfacePoint surface_point(const Surface& S, const Rat& a, const Rat& b,
                                  const Rat& c) {
  return SurfacePoint{a, b, c, multiplicity_at(S, a, b, c)};
}

// The low z-degree / weighted-transform / binomial-in-z / polynomial-in-z^m
// special forms that solve directly by radicals.
struct SpecialFormTag {
  enum Kind { Case1, Case2, Case3, Case4 } kind;
  Sym var = Sym::z;           // Case1: variable solved for
  unsigned m = 0;             // Case3/Case4: root index
  unsigned s = 0;             // Case2: weight of the transform
  MPoly f, g;                 // Case3: F = f * z^m - g
  std::vector<unsigned> ms;   // Case2: homogeneous degrees by slot

  std::string str() const {
    switch (kind) {
      case Case1: return "case1(" + std::string(name_of(var)) + ")";
      case Case2: return "case2(s=" + std::to_string(s) + ")";
      case Case3: return "case3(m=" + std::to_string(m) + ")";
      case Case4: return "case4(m=" + std::to_string(m) + ")";
    }
    return "?";
  }
};

inline std::vector<SpecialFormTag> classify_special_form(const Surface& S) {
  std::vector<SpecialFormTag> tags;
  // case 1: partial degree at most 4 in some variable
  for (Sym v : {Sym::x, Sym::y, Sym::z}) {
    unsigned d = S.F.degree(v);
    if (d >= 1 && d <= 4) {
      SpecialFormTag t{SpecialFormTag::Case1};
      t.var = v;
      tags.push_back(std::move(t));
    }
  }
  // z-support data for cases 2..4
  unsigned dz = S.F.degree(Sym::z);
  std::vector<unsigned> support;
  for (unsigned k = 0; k <= dz; ++k)
    if (!S.F.coeff_of(Sym::z, k).is_zero()) support.push_back(k);

  // case 3: f * z^m - g
  if (support.size() == 2 && support[0] == 0 && support[1] >= 1) {
    SpecialFormTag t{SpecialFormTag::Case3};
    t.m = support[1];
    t.f = S.F.coeff_of(Sym::z, t.m);
    t.g = -S.F.coeff_of(Sym::z, 0);
    if (!t.g.is_zero()) tags.push_back(std::move(t));
  }
  // case 4: polynomial in z^m of degree <= 4, every admissible m listed
  {
    unsigned g = 0;
    for (unsigned e : support)
      if (e) g = std::gcd(g, e);
    if (g >= 2) {
      for (unsigned m = g; m >= 2; --m) {
        if (g % m != 0) continue;
        if (dz / m > 4) continue;
        SpecialFormTag t{SpecialFormTag::Case4};
        t.m = m;
        tags.push_back(std::move(t));
      }
    }
  }
  // case 2: weighted exponents s*m_i + (4..0) with homogeneous slices
  for (unsigned s = 1; s <= dz; ++s) {
    bool ok = true;
    std::map<unsigned, unsigned> slot_degree;  // k -> common xy-degree
    for (auto& [mono, coeff] : S.F.terms()) {
      unsigned e = mono.e[idx(Sym::z)];
      unsigned mdeg = mono.e[idx(Sym::x)] + mono.e[idx(Sym::y)];
      long k = static_cast<long>(e) - static_cast<long>(s) * mdeg;
      if (k < 0 || k > 4) { ok = false; break; }
      auto it = slot_degree.find(static_cast<unsigned>(k));
      if (it == slot_degree.end())
        slot_degree.emplace(static_cast<unsigned>(k), mdeg);
      else if (it->second != mdeg) { ok = false; break; }
    }
    if (!ok || slot_degree.size() < 2) continue;
    SpecialFormTag t{SpecialFormTag::Case2};
    t.s = s;
    for (unsigned k = 0; k <= 4; ++k) {
      auto it = slot_degree.find(k);
      t.ms.push_back(it == slot_degree.end() ? 0u : it->second);
    }
    tags.push_back(std::move(t));
  }
  return tags;
}

namespace detail {

// slot layout for a case-1 solve: the solved variable takes the root, the
// other two coordinates take t1, t2 in coordinate order
inline RadParam case1_triple(Sym solved, const Rx& R) {
  std::vector<Rx> slots;
  Rx pars[2] = {rx_var(Sym::t1), rx_var(Sym::t2)};
  int next = 0;
  for (Sym v : {Sym::x, Sym::y, Sym::z}) {
    if (v == solved)
      slots.push_back(R);
    else
      slots.push_back(pars[next++]);
  }
  return make_radparam(slots[0], slots[1], slots[2], Sym::t1, Sym::t2);
}

inline std::map<Sym, MPoly> case1_bindings(Sym solved) {
  std::map<Sym, MPoly> b;
  Sym pars[2] = {Sym::t1, Sym::t2};
  int next = 0;
  for (Sym v : {Sym::x, Sym::y, Sym::z})
    if (v != solved) b.emplace(v, MPoly::var(pars[next++]));
  return b;
}

inline RadParam certify_first(const MPoly& F, std::vector<RadParam> candidates,
                              const VerifyOptions& opt, const std::string& how) {
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    RadParam& P = candidates[i];
    Certificate cert = certify_radparam(F, P, opt);
    if (cert.ok()) {
      P.cert.note = how + ", root " + std::to_string(i);
      return P;
    }
  }
  throw DegenerateParametrization(
      "no candidate root yields a certified parametrization (" + how + ")");
}

}  // namespace detail

inline RadParam param_special_form(const Surface& S, const SpecialFormTag& tag,
                                   const VerifyOptions& opt = {}) {
  switch (tag.kind) {
    case SpecialFormTag::Case1: {
      MPoly g = S.F.substitute(detail::case1_bindings(tag.var));
      std::vector<RadParam> cands;
      for (auto& R : solve_mpoly(g, tag.var))
        cands.push_back(detail::case1_triple(tag.var, R));
      return detail::certify_first(S.F, std::move(cands), opt, tag.str());
    }
    case SpecialFormTag::Case3: {
      MPoly fs = tag.f.substitute(detail::case1_bindings(Sym::z));
      MPoly gs = tag.g.substitute(detail::case1_bindings(Sym::z));
      Rx R = rad_simplify(rx_root(rx_from_ratfunc(RatFunc(gs, fs)), tag.m, 0));
      return detail::certify_first(
          S.F, {detail::case1_triple(Sym::z, R)}, opt, tag.str());
    }
    case SpecialFormTag::Case4: {
      // F as a degree <= 4 polynomial in z^m
      MPoly inner;
      for (unsigned k = 0; k * tag.m <= S.F.degree(Sym::z); ++k)
        inner += S.F.coeff_of(Sym::z, k * tag.m) * MPoly::var(Sym::z, k);
      MPoly g = inner.substitute(detail::case1_bindings(Sym::z));
      std::vector<RadParam> cands;
      for (auto& R3 : solve_mpoly(g, Sym::z))
        cands.push_back(detail::case1_triple(
            Sym::z, rad_simplify(rx_root(R3, tag.m, 0))));
      return detail::certify_first(S.F, std::move(cands), opt, tag.str());
    }
    case SpecialFormTag::Case2: {
      // transform, solve the low-degree surface, post-compose the inverse
      MPoly ft;
      for (auto& [mono, coeff] : S.F.terms()) {
        unsigned mdeg = mono.e[idx(Sym::x)] + mono.e[idx(Sym::y)];
        unsigned k = mono.e[idx(Sym::z)] - tag.s * mdeg;
        Mono mm = mono;
        mm.e[idx(Sym::z)] = static_cast<std::uint16_t>(k);
        ft.add_term(mm, coeff);
      }
      MPoly g = ft.substitute(detail::case1_bindings(Sym::z));
      std::vector<RadParam> cands;
      for (auto& R : solve_mpoly(g, Sym::z)) {
        Rx inv_pow = rx_inv(rx_ipow(R, tag.s));
        cands.push_back(make_radparam(
            rx_mul({rx_var(Sym::t1), inv_pow}),
            rx_mul({rx_var(Sym::t2), inv_pow}), R, Sym::t1, Sym::t2));
      }
      return detail::certify_first(S.F, std::move(cands), opt, tag.str());
    }
  }
  throw InternalError("unreachable special-form kind");
}

// The by-lines construction: project from a point of multiplicity n - r,
// r <= 4, along the line family L(h) = P + h*(t1-a, t2-b, lambda-c).
inline MPoly line_family_poly(const Surface& S, const SurfacePoint& P,
                              const Rat& lambda) {
  MPoly h = MPoly::var(Sym::h);
  MPoly L1 = MPoly(P.a) + h * (MPoly::var(Sym::t1) - MPoly(P.a));
  MPoly L2 = MPoly(P.b) + h * (MPoly::var(Sym::t2) - MPoly(P.b));
  MPoly L3 = MPoly(P.c) + h * (MPoly(lambda) - MPoly(P.c));
  MPoly FL = S.F.substitute({{Sym::x, L1}, {Sym::y, L2}, {Sym::z, L3}});
  return FL.exact_div(MPoly::var(Sym::h, P.multiplicity));
}

inline RadParam param_by_lines(const Surface& S, const SurfacePoint& P,
                               const Rat& lambda, const VerifyOptions& opt = {}) {
  if (lambda == P.c)
    throw ArgumentError("lambda must differ from the point's z-coordinate");
  if (P.multiplicity + 4 < S.degree)
    throw ArgumentError("point multiplicity must be at least degree - 4");
  MPoly g = line_family_poly(S, P, lambda);
  if (g.degree(Sym::h) == 0)
    throw LineFamilyDegenerate("line family polynomial is h-free");
  std::vector<RadParam> cands;
  for (auto& R : solve_mpoly(g, Sym::h)) {
    Rx t1 = rx_var(Sym::t1), t2 = rx_var(Sym::t2);
    Rx c0 = rx_add({rx_const(P.a), rx_mul({R, rx_sub(t1, rx_const(P.a))})});
    Rx c1 = rx_add({rx_const(P.b), rx_mul({R, rx_sub(t2, rx_const(P.b))})});
    Rx c2 = rx_add({rx_const(P.c), rx_mul({R, rx_const(lambda - P.c)})});
    cands.push_back(make_radparam(c0, c1, c2, Sym::t1, Sym::t2));
  }
  return detail::certify_first(S.F, std::move(cands), opt, "lines");
}

// Retry policy for the free parameter: c+1, then c+2, c-1, c+3.
inline RadParam param_by_lines_auto(const Surface& S, const SurfacePoint& P,
                                    const VerifyOptions& opt = {}) {
  const Rat offsets[4] = {Rat(1), Rat(2), Rat(-1), Rat(3)};
  std::string last = "line family degenerate for every lambda tried";
  for (auto& off : offsets) {
    try {
      return param_by_lines(S, P, P.c + off, opt);
    } catch (const LineFamilyDegenerate& e) {
      last = e.what();
    }
  }
  throw LineFamilyDegenerate(last);
}

}  // namespace radsurf
