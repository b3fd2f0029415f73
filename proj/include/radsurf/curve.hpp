#pragma once

#include <string>
#include <vector>

#include "radsurf/resultant.hpp"
#include "radsurf/triangular.hpp"

namespace radsurf {

// Affine charts of the projective plane. Chart coordinates:
//   W: (x, y) at (x : y : 1),  Y: (x, w) at (x : 1 : w),  X: (y, w) at (1 : y : w)
enum class Chart : int { W = 0, Y = 1, X = 2 };

inline const char* chart_name(Chart c) {
  switch (c) {
    case Chart::W: return "w=1";
    case Chart::Y: return "y=1";
    case Chart::X: return "x=1";
  }
  return "?";
}

// Plane projective curve over Q(s): homogeneous squarefree form in (x, y, w)
// whose coefficients may involve the pencil parameter s.
struct PlaneCurve {
  MPoly G;     // homogeneous of degree d in (x, y, w)
  unsigned d;

  static PlaneCurve from_affine(const MPoly& g) {
    unsigned d = 0;
    for (auto& [m, c] : g.terms())
      d = std::max<unsigned>(d, m.e[idx(Sym::x)] + m.e[idx(Sym::y)]);
    if (d == 0) throw ArgumentError("curve polynomial must be nonconstant");
    MPoly G = g.homogenize(Sym::w, {Sym::x, Sym::y}, d);
    return PlaneCurve{std::move(G), d};
  }

  MPoly affine(Chart c) const {
    switch (c) {
      case Chart::W: return G.substitute(Sym::w, MPoly(1));
      case Chart::Y: return G.substitute(Sym::y, MPoly(1));
      case Chart::X: return G.substitute(Sym::x, MPoly(1));
    }
    throw InternalError("bad chart");
  }
  // the two coordinate symbols of a chart, in order
  static std::pair<Sym, Sym> chart_vars(Chart c) {
    switch (c) {
      case Chart::W: return {Sym::x, Sym::y};
      case Chart::Y: return {Sym::x, Sym::w};
      case Chart::X: return {Sym::y, Sym::w};
    }
    throw InternalError("bad chart");
  }
};

// A family of conjugate points: coordinates are residue classes modulo a
// squarefree modulus in alpha; a rational point is the degree-1 case.
struct PointFamily {
  Chart chart = Chart::W;
  UPolyF modulus;  // monic over Q(s), squarefree, degree >= 1
  AlgElem ca, cb;  // chart coordinates
  unsigned multiplicity = 1;
  bool ordinary = true;

  unsigned size() const { return static_cast<unsigned>(modulus.degree()); }

  // human-readable projective rendering (single points print their values)
  std::string str() const {
    auto comp = [&](const AlgElem& e) -> std::string {
      if (e.is_zero()) return "0";
      if (e.degree() == 0) return e[0].str();
      return "(" + e.str("alpha") + ")";
    };
    std::string coords;
    switch (chart) {
      case Chart::W: coords = comp(ca) + " : " + comp(cb) + " : 1"; break;
      case Chart::Y: coords = comp(ca) + " : 1 : " + comp(cb); break;
      case Chart::X: coords = "1 : " + comp(ca) + " : " + comp(cb); break;
    }
    std::string out = "(" + coords + ")";
    if (size() > 1)
      out += " mod " + modulus.str("alpha");
    out += " x" + std::to_string(multiplicity);
    return out;
  }
};

struct SingularLocus {
  std::vector<PointFamily> families;  // multiplicity >= 2 only

  unsigned delta_bound() const {
    unsigned acc = 0;
    for (auto& f : families)
      acc += f.size() * f.multiplicity * (f.multiplicity - 1) / 2;
    return acc;
  }
};

// residue-class product
inline AlgElem ap_modmul(const AlgElem& a, const AlgElem& b, const UPolyF& m) {
  return (a * b).mod(m);
}

namespace detail {

// g(ca + X, cb + Y) modulo m, grouped by total degree: levels[d] lists the
// coefficients of the X^i Y^j with i + j = d.
struct TaylorData {
  std::vector<std::vector<AlgElem>> levels;
  std::map<std::pair<unsigned, unsigned>, AlgElem> coeffs;
};

inline TaylorData translate_mod(const MPoly& g, Sym vx, Sym vy,
                                const AlgElem& ca, const AlgElem& cb,
                                const UPolyF& m) {
  TaylorData out;
  unsigned dx = g.degree(vx), dy = g.degree(vy);
  // powers of the base point coordinates in the quotient ring
  std::vector<AlgElem> pa{AlgElem(RatFunc(Rat(1)))}, pb{AlgElem(RatFunc(Rat(1)))};
  for (unsigned i = 1; i <= dx; ++i) pa.push_back(ap_modmul(pa.back(), ca, m));
  for (unsigned j = 1; j <= dy; ++j) pb.push_back(ap_modmul(pb.back(), cb, m));
  // binomial table
  unsigned n = std::max(dx, dy) + 1;
  std::vector<std::vector<Rat>> binom(n + 1, std::vector<Rat>(n + 1, Rat(0)));
  for (unsigned i = 0; i <= n; ++i) {
    binom[i][0] = Rat(1);
    for (unsigned j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : Rat(0));
  }
  for (auto& [mono, c] : g.terms()) {
    unsigned a = mono.e[idx(vx)], b = mono.e[idx(vy)];
    // the remaining part of the monomial (s powers)
    Mono rest = mono;
    rest.e[idx(vx)] = 0;
    rest.e[idx(vy)] = 0;
    RatFunc scalar(MPoly::term(c, rest));
    for (unsigned i = 0; i <= a; ++i) {
      for (unsigned j = 0; j <= b; ++j) {
        AlgElem contrib = ap_modmul(pa[a - i], pb[b - j], m) *
                          (scalar * RatFunc(binom[a][i] * binom[b][j]));
        contrib = reduce_mod(contrib, m);
        auto key = std::make_pair(i, j);
        auto it = out.coeffs.find(key);
        if (it == out.coeffs.end())
          out.coeffs.emplace(key, contrib);
        else
          it->second = reduce_mod(it->second + contrib, m);
      }
    }
  }
  unsigned maxlvl = 0;
  for (auto& [ij, e] : out.coeffs) maxlvl = std::max(maxlvl, ij.first + ij.second);
  out.levels.resize(maxlvl + 1);
  for (auto& [ij, e] : out.coeffs)
    if (!e.is_zero()) out.levels[ij.first + ij.second].push_back(e);
  // levels must stay index-aligned even when empty
  for (auto& l : out.levels)
    if (l.empty()) l.push_back(AlgElem());
  return out;
}

// multiplicity and ordinariness of a point family, with D5 splitting
struct MultOrd {
  UPolyF modulus;
  unsigned multiplicity;
  bool ordinary;
};

inline std::vector<MultOrd> family_mult_ord(const MPoly& g, Sym vx, Sym vy,
                                            const AlgElem& ca, const AlgElem& cb,
                                            const UPolyF& m) {
  std::vector<MultOrd> out;
  TaylorData td = translate_mod(g, vx, vy, ca, cb, m);
  auto coeff_at = [&](unsigned i, unsigned j, const UPolyF& mod) {
    auto it = td.coeffs.find({i, j});
    return it == td.coeffs.end() ? AlgElem() : reduce_mod(it->second, mod);
  };
  for (auto& br : d5_first_nonzero_level(td.levels, m)) {
    unsigned mu = br.value;
    if (mu == 0)
      throw InternalError("family claims a point off the curve");
    if (mu == 1) {
      out.push_back({br.modulus, 1, true});
      continue;
    }
    if (mu == 2) {
      // double point: a node when the tangent form is squarefree. With a
      // repeated tangent the point is still simple-adjoint-manageable
      // (delta = 1, one vanishing condition) exactly when it is a plain
      // cusp: the cubic term along the doubled tangent direction survives.
      AlgElem q20 = coeff_at(2, 0, br.modulus);
      AlgElem q11 = coeff_at(1, 1, br.modulus);
      AlgElem q02 = coeff_at(0, 2, br.modulus);
      AlgElem disc = reduce_mod(
          ap_modmul(q11, q11, br.modulus) -
              ap_modmul(AlgElem(RatFunc(Rat(4))), ap_modmul(q20, q02, br.modulus),
                        br.modulus),
          br.modulus);
      // split the branch by the vanishing locus of the discriminant
      UPolyF node_part = br.modulus, cusp_part;
      if (!disc.is_zero()) {
        UPolyF gdisc = gcd_upoly(disc, br.modulus);
        if (gdisc.degree() > 0) {
          cusp_part = gdisc.monic();
          node_part = br.modulus.exact_div(cusp_part).monic();
        }
      } else {
        cusp_part = br.modulus;
        node_part = UPolyF();
      }
      if (!node_part.is_zero() && node_part.degree() > 0)
        out.push_back({node_part, 2, true});
      if (!cusp_part.is_zero() && cusp_part.degree() > 0) {
        // repeated tangent: a*X + b*Y doubled; rotate and read the pure
        // cubic coefficient along the tangent direction
        const UPolyF& mc = cusp_part;
        AlgElem c30 = coeff_at(3, 0, mc), c21 = coeff_at(2, 1, mc);
        AlgElem c12 = coeff_at(1, 2, mc), c03 = coeff_at(0, 3, mc);
        AlgElem q20c = coeff_at(2, 0, mc);
        struct Item { UPolyF m; };
        std::vector<Branch<AlgElem>> cusp_coeffs;
        if (q20c.is_zero()) {
          // tangent form proportional to Y^2: branches run along X
          cusp_coeffs.push_back({mc, reduce_mod(c30, mc)});
        } else {
          // T = q20 (X + c Y)^2 with c = q11/(2 q20); inversion may split
          InvOutcome inv = inv_mod(
              reduce_mod(ap_modmul(AlgElem(RatFunc(Rat(2))), q20c, mc), mc), mc);
          if (inv.is_split()) {
            // handle each split branch recursively via the same analysis;
            // rare, treated as non-ordinary to stay conservative
            out.push_back({mc, 2, false});
            cusp_coeffs.clear();
          } else {
            AlgElem c = ap_modmul(coeff_at(1, 1, mc), *inv.inverse, mc);
            // f3(-c, 1) = -c^3 c30 + c^2 c21 - c c12 + c03
            AlgElem c2 = ap_modmul(c, c, mc), c3 = ap_modmul(c2, c, mc);
            AlgElem val = reduce_mod(
                c03 - ap_modmul(c, c12, mc) + ap_modmul(c2, c21, mc) -
                    ap_modmul(c3, c30, mc),
                mc);
            cusp_coeffs.push_back({mc, val});
          }
        }
        for (auto& cc : cusp_coeffs) {
          if (cc.value.is_zero()) {
            out.push_back({cc.modulus, 2, false});
            continue;
          }
          UPolyF gz = gcd_upoly(cc.value, cc.modulus);
          if (gz.degree() == 0) {
            out.push_back({cc.modulus, 2, true});  // plain cusp everywhere
          } else {
            out.push_back({gz.monic(), 2, false});
            out.push_back({cc.modulus.exact_div(gz).monic(), 2, true});
          }
        }
      }
      continue;
    }
    // multiplicity >= 3: require a squarefree tangent form
    APoly u;  // coefficients of X^0..X^mu in T(X, 1)
    u.resize(mu + 1);
    for (unsigned i = 0; i <= mu; ++i) u[i] = coeff_at(i, mu - i, br.modulus);
    while (!u.empty() && u.back().is_zero()) u.pop_back();
    unsigned ypow = mu - static_cast<unsigned>(ap_degree(u));
    if (ypow >= 2) {
      out.push_back({br.modulus, mu, false});
      continue;
    }
    APoly du;
    for (std::size_t i = 1; i < u.size(); ++i)
      du.push_back(u[i] * RatFunc(Rat(static_cast<long>(i))));
    for (auto& gb : d5_gcd(u, du, br.modulus)) {
      bool sq_free = ap_degree(gb.value) <= 0;
      out.push_back({gb.modulus, mu, sq_free});
    }
  }
  return out;
}

}  // namespace detail

// Eliminant of a coordinate of a family: the characteristic polynomial of the
// residue class, as a primitive polynomial in `var` over Q[s] (up to unit).
inline MPoly family_eliminant(const AlgElem& coord, const UPolyF& m, Sym var) {
  // Res_alpha(m(alpha), var - coord(alpha)); denominators cleared first
  UPolyF mc = m.clear_denominators();
  MPoly mp = mc.to_mpoly(Sym::alpha);
  UPolyF cc = coord.clear_denominators();
  RatFunc scale{Rat(1)};
  for (auto& c : coord.coeffs())
    if (!c.is_polynomial()) scale = scale * RatFunc(c.den());
  // var * scale - coord_cleared
  MPoly lin = scale.num() * MPoly::var(var) - cc.to_mpoly(Sym::alpha);
  if (lin.degree(Sym::alpha) == 0) {
    // constant coordinate: eliminant is linear
    return primitive_part(lin, var);
  }
  MPoly res = resultant(mp, lin, Sym::alpha);
  return primitive_part(res, var);
}

// Affine singular families of g in chart coordinates (vx, vy), found by a
// shear-robust triangular decomposition of {g, g_x, g_y}.
inline std::vector<PointFamily> affine_singular_families(const MPoly& g, Sym vx,
                                                         Sym vy, Chart chart) {
  if (!g.depends_on(vy)) throw ArgumentError("curve independent of a chart variable");
  const long shears[] = {0, 1, -1, 2, -2, 3};
  for (long c : shears) {
    MPoly gs = c == 0 ? g
                      : g.substitute(vx, MPoly::var(vx) +
                                             Rat(c) * MPoly::var(vy));
    MPoly gx = gs.derivative(vx), gy = gs.derivative(vy);
    if (gx.is_zero() && gy.is_zero()) throw ArgumentError("constant curve");
    MPoly r1 = gx.is_zero() ? MPoly() : resultant(gs, gx, vy);
    MPoly r2 = gy.is_zero() ? MPoly() : resultant(gs, gy, vy);
    MPoly cand = gcd_poly(r1, r2);
    if (cand.is_zero()) continue;  // degenerate elimination: try another shear
    if (cand.degree(vx) == 0) return {};
    cand = squarefree_part(primitive_part(cand, vx), vx);
    // work modulo each branch of the candidate x-locus
    UPolyF m0 = UPolyF::from_mpoly(cand.rename({{vx, Sym::alpha}}), Sym::alpha)
                    .monic();
    auto to_apoly = [&](const MPoly& f) {
      APoly out;
      for (auto& coeff : f.coeffs_in(vy))
        out.push_back(
            UPolyF::from_mpoly(coeff.rename({{vx, Sym::alpha}}), Sym::alpha));
      return out;
    };
    APoly pg = to_apoly(gs), pgx = to_apoly(gx), pgy = to_apoly(gy);
    std::vector<PointFamily> out;
    bool need_reshear = false;
    struct Item { UPolyF m; APoly h; };
    std::vector<Item> work;
    for (auto& b1 : d5_gcd(pg, pgx, m0))
      for (auto& b2 : d5_gcd(b1.value, pgy, b1.modulus))
        work.push_back({b2.modulus, b2.value});
    for (auto& item : work) {
      if (ap_degree(item.h) <= 0) continue;  // spurious candidate branch
      if (ap_degree(item.h) >= 2) { need_reshear = true; break; }
      // y = -h[0] (h monic linear)
      AlgElem alpha = AlgElem(std::vector<RatFunc>{RatFunc(), RatFunc(Rat(1))});
      AlgElem cb = reduce_mod(-item.h[0], item.m);
      AlgElem ca_sheared = reduce_mod(alpha, item.m);
      AlgElem ca = c == 0 ? ca_sheared
                          : reduce_mod(ca_sheared + cb * RatFunc(Rat(c)), item.m);
      for (auto& mo :
           detail::family_mult_ord(gs, vx, vy, ca_sheared, cb, item.m)) {
        if (mo.multiplicity < 2) continue;
        PointFamily f;
        f.chart = chart;
        f.modulus = mo.modulus;
        f.ca = reduce_mod(ca, mo.modulus);
        f.cb = reduce_mod(cb, mo.modulus);
        f.multiplicity = mo.multiplicity;
        f.ordinary = mo.ordinary;
        out.push_back(std::move(f));
      }
    }
    if (!need_reshear) return out;
  }
  throw InternalError("no shear separated the singular locus");
}

// Complete singular locus: affine chart plus the line at infinity. Throws
// NonOrdinarySingularity naming the offending family.
inline SingularLocus singular_locus(const PlaneCurve& C) {
  SingularLocus L;
  // affine part
  for (auto& f : affine_singular_families(C.affine(Chart::W), Sym::x, Sym::y,
                                          Chart::W))
    L.families.push_back(f);
  // infinity, chart y = 1 (w = 0): a univariate system in x
  {
    MPoly gy = C.affine(Chart::Y);
    MPoly p0 = gy.substitute(Sym::w, MPoly());
    MPoly p1 = gy.derivative(Sym::x).substitute(Sym::w, MPoly());
    MPoly p2 = gy.derivative(Sym::w).substitute(Sym::w, MPoly());
    MPoly cand = gcd_poly(gcd_poly(p0, p1), p2);
    if (cand.degree(Sym::x) >= 1) {
      cand = squarefree_part(primitive_part(cand, Sym::x), Sym::x);
      UPolyF m =
          UPolyF::from_mpoly(cand.rename({{Sym::x, Sym::alpha}}), Sym::alpha)
              .monic();
      AlgElem alpha = AlgElem(std::vector<RatFunc>{RatFunc(), RatFunc(Rat(1))});
      for (auto& mo : detail::family_mult_ord(gy, Sym::x, Sym::w,
                                              reduce_mod(alpha, m), AlgElem(),
                                              m)) {
        if (mo.multiplicity < 2) continue;
        PointFamily f;
        f.chart = Chart::Y;
        f.modulus = mo.modulus;
        f.ca = reduce_mod(alpha, mo.modulus);
        f.cb = AlgElem();
        f.multiplicity = mo.multiplicity;
        f.ordinary = mo.ordinary;
        L.families.push_back(std::move(f));
      }
    }
  }
  // the point (1 : 0 : 0), chart x = 1 at (y, w) = (0, 0)
  {
    MPoly gx = C.affine(Chart::X);
    bool on_curve = gx.coeff_of(Sym::y, 0).substitute(Sym::w, MPoly()).is_zero();
    if (on_curve) {
      UPolyF m(std::vector<RatFunc>{RatFunc(), RatFunc(Rat(1))});  // alpha
      for (auto& mo :
           detail::family_mult_ord(gx, Sym::y, Sym::w, AlgElem(), AlgElem(), m)) {
        if (mo.multiplicity < 2) continue;
        PointFamily f;
        f.chart = Chart::X;
        f.modulus = mo.modulus;
        f.multiplicity = mo.multiplicity;
        f.ordinary = mo.ordinary;
        L.families.push_back(std::move(f));
      }
    }
  }
  for (auto& f : L.families)
    if (!f.ordinary)
      throw NonOrdinarySingularity("non-ordinary singular family " + f.str());
  return L;
}

// Classical genus formula for curves with ordinary singularities.
inline int genus(const PlaneCurve& C, const SingularLocus& L) {
  int g = static_cast<int>((C.d - 1) * (C.d - 2) / 2) -
          static_cast<int>(L.delta_bound());
  return g;
}
inline int genus(const PlaneCurve& C) { return genus(C, singular_locus(C)); }

}  // namespace radsurf
