#pragma once

#include "radsurf/curve.hpp"
#include "radsurf/linalg.hpp"
#include "radsurf/radex.hpp"

namespace radsurf {

// Linear system of degree-k adjoints: forms with undetermined coefficients
// passing with multiplicity m-1 through every m-fold singular family, plus
// any additional point conditions imposed later. The basis is the canonical
// reduced row echelon basis of the solution space, ordered by pivot column,
// cleared to primitive integer-coefficient forms with positive pivot.
struct AdjointSystem {
  unsigned k = 0;
  std::vector<Mono> monos;   // column layout, grlex-descending
  RfMat rows;                // accumulated linear conditions
  std::vector<RfVec> basis_vecs;
  std::vector<MPoly> basis;  // one form per basis vector

  int dim() const { return static_cast<int>(basis.size()) - 1; }
};

namespace detail {

inline std::vector<Mono> degree_monomials_xyw(unsigned k) {
  std::vector<Mono> out;
  for (unsigned i = 0; i <= k; ++i)
    for (unsigned j = 0; j + i <= k; ++j) {
      Mono m;
      m.e[idx(Sym::x)] = static_cast<std::uint16_t>(i);
      m.e[idx(Sym::y)] = static_cast<std::uint16_t>(j);
      m.e[idx(Sym::w)] = static_cast<std::uint16_t>(k - i - j);
      out.push_back(m);
    }
  std::sort(out.begin(), out.end(),
            [](const Mono& a, const Mono& b) { return MonoGrlexGreater{}(a, b); });
  return out;
}

// chart exponents of a monomial: the two chart-variable exponents
inline std::pair<unsigned, unsigned> chart_exponents(const Mono& m, Chart c) {
  switch (c) {
    case Chart::W: return {m.e[idx(Sym::x)], m.e[idx(Sym::y)]};
    case Chart::Y: return {m.e[idx(Sym::x)], m.e[idx(Sym::w)]};
    case Chart::X: return {m.e[idx(Sym::y)], m.e[idx(Sym::w)]};
  }
  throw InternalError("bad chart");
}

inline Rat falling(unsigned e, unsigned p) {
  Rat r(1);
  for (unsigned i = 0; i < p; ++i) r *= Rat(static_cast<long>(e - i));
  return r;
}

// rows expressing: all partials of H of order <= ord vanish on the family
inline void append_family_rows(RfMat& rows, const std::vector<Mono>& monos,
                               const PointFamily& f, unsigned ord) {
  unsigned degm = f.size();
  // powers of the coordinates mod the modulus
  unsigned maxe = 0;
  for (auto& m : monos) {
    auto [e1, e2] = chart_exponents(m, f.chart);
    maxe = std::max({maxe, e1, e2});
  }
  std::vector<AlgElem> pa{AlgElem(RatFunc(Rat(1)))}, pb{AlgElem(RatFunc(Rat(1)))};
  for (unsigned i = 1; i <= maxe; ++i) {
    pa.push_back(ap_modmul(pa.back(), f.ca, f.modulus));
    pb.push_back(ap_modmul(pb.back(), f.cb, f.modulus));
  }
  for (unsigned p = 0; p <= ord; ++p) {
    for (unsigned q = 0; p + q <= ord; ++q) {
      std::vector<AlgElem> vals(monos.size());
      for (std::size_t n = 0; n < monos.size(); ++n) {
        auto [e1, e2] = chart_exponents(monos[n], f.chart);
        if (e1 < p || e2 < q) continue;  // derivative kills the monomial
        AlgElem v = ap_modmul(pa[e1 - p], pb[e2 - q], f.modulus);
        vals[n] = v * RatFunc(falling(e1, p) * falling(e2, q));
      }
      for (unsigned r = 0; r < degm; ++r) {
        RfVec row(monos.size());
        bool nonzero = false;
        for (std::size_t n = 0; n < monos.size(); ++n) {
          row[n] = vals[n][r];
          nonzero = nonzero || !row[n].is_zero();
        }
        if (nonzero) rows.push_back(std::move(row));
      }
    }
  }
}

inline void rebuild_basis(AdjointSystem& A) {
  A.basis_vecs = canonical_span(nullspace(A.rows, A.monos.size()));
  A.basis.clear();
  for (auto& v : A.basis_vecs) {
    // clear denominators, then normalize primitive with positive pivot
    MPoly den(1);
    for (auto& c : v)
      if (!c.is_polynomial()) {
        MPoly g = gcd_poly(den, c.den());
        den = den * c.den().exact_div(g);
      }
    MPoly form;
    std::size_t pivot = v.size();
    for (std::size_t n = 0; n < v.size(); ++n) {
      if (v[n].is_zero()) continue;
      if (pivot == v.size()) pivot = n;
      RatFunc scaled = v[n] * RatFunc(den);
      if (!scaled.is_polynomial())
        throw InternalError("denominator clearing failed");
      form += scaled.num() * MPoly::term(Rat(1), A.monos[n]);
    }
    if (form.is_zero()) continue;
    Rat content = form.content_rat();
    form = form * content.inv();
    // positive pivot coefficient
    MPoly pivot_coeff;
    for (auto& [m, c] : form.terms()) {
      Mono xyw = m;
      xyw.e[idx(Sym::s)] = 0;
      if (xyw == A.monos[pivot]) pivot_coeff.add_term(m, c);
    }
    if (!pivot_coeff.is_zero() && pivot_coeff.leading_coeff().sign() < 0)
      form = -form;
    A.basis.push_back(std::move(form));
  }
  if (A.basis.empty())
    throw AdjointSystemEmpty("adjoint system has no nonzero member");
}

}  // namespace detail

inline AdjointSystem adjoint_system(const PlaneCurve& C, unsigned k,
                                    const SingularLocus& L) {
  AdjointSystem A;
  A.k = k;
  A.monos = detail::degree_monomials_xyw(k);
  for (auto& f : L.families) {
    if (!f.ordinary)
      throw NonOrdinarySingularity("non-ordinary singular family " + f.str());
    detail::append_family_rows(A.rows, A.monos, f, f.multiplicity - 2);
  }
  detail::rebuild_basis(A);
  return A;
}
inline AdjointSystem adjoint_system(const PlaneCurve& C, unsigned k) {
  return adjoint_system(C, k, singular_locus(C));
}

// Rational-function view of a radical-free expression over the parameters.
inline RatFunc rx_to_ratfunc(const Rx& e) {
  switch (e->kind) {
    case RxKind::Const: return RatFunc(e->value);
    case RxKind::Var: return RatFunc(MPoly::var(e->var));
    case RxKind::Add: {
      RatFunc acc;
      for (auto& a : e->args) acc += rx_to_ratfunc(a);
      return acc;
    }
    case RxKind::Mul: {
      RatFunc acc{Rat(1)};
      for (auto& a : e->args) acc *= rx_to_ratfunc(a);
      return acc;
    }
    case RxKind::Neg: return -rx_to_ratfunc(e->args[0]);
    case RxKind::Inv: return rx_to_ratfunc(e->args[0]).inv();
    case RxKind::IPow: {
      RatFunc b = rx_to_ratfunc(e->args[0]), acc{Rat(1)};
      for (unsigned i = 0; i < e->n; ++i) acc *= b;
      return acc;
    }
    default:
      throw ArgumentError("expression is not in the rational function field");
  }
}

// A point with coordinates in Q(s) extended by a single radical, converted to
// a conjugate family: alpha stands for the root, with minimal polynomial
// alpha^k - radicand. Rational points become degree-1 families.
inline PointFamily radical_point_to_family(const Rx& cx, const Rx& cy,
                                           const Rx& cw) {
  std::vector<Rx> tower = tower_of({cx, cy, cw});
  UPolyF m;
  if (tower.empty()) {
    m = UPolyF::variable();  // alpha = 0
  } else if (tower.size() == 1) {
    RatFunc rad = rx_to_ratfunc(tower[0]->args[0]);
    if (rad.is_zero()) throw ArgumentError("radical point with zero radicand");
    std::vector<RatFunc> coeffs(tower[0]->k + 1);
    coeffs[0] = -rad;
    coeffs[tower[0]->k] = RatFunc(Rat(1));
    m = UPolyF(std::move(coeffs));
  } else {
    throw ArgumentError("point coordinates exceed one radical extension");
  }
  const Rx root = tower.empty() ? Rx() : tower[0];
  // convert an expression into a residue class modulo m
  std::function<AlgElem(const Rx&)> conv = [&](const Rx& e) -> AlgElem {
    if (root && e == root)
      return reduce_mod(AlgElem(std::vector<RatFunc>{RatFunc(), RatFunc(Rat(1))}), m);
    switch (e->kind) {
      case RxKind::Const: return AlgElem(RatFunc(e->value));
      case RxKind::Var: return AlgElem(RatFunc(MPoly::var(e->var)));
      case RxKind::Add: {
        AlgElem acc;
        for (auto& a : e->args) acc = reduce_mod(acc + conv(a), m);
        return acc;
      }
      case RxKind::Mul: {
        AlgElem acc{RatFunc(Rat(1))};
        for (auto& a : e->args) acc = ap_modmul(acc, conv(a), m);
        return acc;
      }
      case RxKind::Neg: return -conv(e->args[0]);
      case RxKind::Inv: {
        InvOutcome inv = inv_mod(conv(e->args[0]), m);
        if (inv.is_split())
          throw ArgumentError("radical point coordinates hit a zero divisor");
        return *inv.inverse;
      }
      case RxKind::IPow: {
        AlgElem b = conv(e->args[0]), acc{RatFunc(Rat(1))};
        for (unsigned i = 0; i < e->n; ++i) acc = ap_modmul(acc, b, m);
        return acc;
      }
      case RxKind::Root:
        throw ArgumentError("point coordinates exceed one radical extension");
    }
    throw InternalError("unreachable expression kind");
  };
  AlgElem vx = conv(cx), vy = conv(cy), vw = conv(cw);
  InvOutcome inv = inv_mod(vw, m);
  if (vw.is_zero() || inv.is_split())
    throw ArgumentError("radical point must be affine (w invertible)");
  PointFamily f;
  f.chart = Chart::W;
  f.modulus = m;
  f.ca = ap_modmul(vx, *inv.inverse, m);
  f.cb = ap_modmul(vy, *inv.inverse, m);
  f.multiplicity = 1;
  return f;
}

// Forcing the system through additional point families (one vanishing
// condition per family member).
inline AdjointSystem constrain_through_points(
    const AdjointSystem& A0, const std::vector<PointFamily>& pts,
    const PlaneCurve& C) {
  AdjointSystem A = A0;
  for (auto& f : pts) {
    // membership check: G vanishes on the family
    MPoly g = C.affine(f.chart);
    auto [vx, vy] = PlaneCurve::chart_vars(f.chart);
    detail::TaylorData td =
        detail::translate_mod(g, vx, vy, f.ca, f.cb, f.modulus);
    auto it = td.coeffs.find({0, 0});
    if (it != td.coeffs.end() && !reduce_mod(it->second, f.modulus).is_zero())
      throw ArgumentError("point family does not lie on the curve");
    detail::append_family_rows(A.rows, A.monos, f, 0);
  }
  detail::rebuild_basis(A);
  return A;
}

// Conjugate-family conditions from a rational line through a base point of
// multiplicity `mult`: m(X) is the residual intersection, and the remainder
// of H along the line modulo m(X) must vanish coefficient-wise.
struct ConjugateFamilyConditions {
  MPoly m_of_x;  // the residual polynomial m(X), over Q[s][X]
  AdjointSystem system;
};

inline ConjugateFamilyConditions constrain_conjugate_family(
    const AdjointSystem& A0, const MPoly& line, const PlaneCurve& C,
    const Rat& px, const Rat& py, unsigned mult) {
  // line = a*x + b*y + c with rational coefficients through (px, py)
  MPoly g = C.affine(Chart::W);
  Rat a = line.coeff_of(Sym::x, 1).constant_value();
  Rat b = line.coeff_of(Sym::y, 1).constant_value();
  if (line.degree(Sym::x) > 1 || line.degree(Sym::y) > 1 ||
      (a.is_zero() && b.is_zero()))
    throw ArgumentError("not a line");
  {
    std::map<Sym, Rat> at{{Sym::x, px}, {Sym::y, py}};
    if (!line.eval(at).is_zero())
      throw ArgumentError("line does not pass through the base point");
  }
  MPoly X = MPoly::var(Sym::X);
  MPoly lx = MPoly(px) + b * X;
  MPoly ly = MPoly(py) - a * X;
  MPoly cX = g.substitute({{Sym::x, lx}, {Sym::y, ly}});
  MPoly mX;
  {
    auto q = cX.try_exact_div(MPoly::var(Sym::X, mult));
    if (!q) throw TangentLine("line meets the base point with excess contact");
    mX = *q;
  }
  if (mX.coeff_of(Sym::X, 0).is_zero())
    throw TangentLine("line is tangent at the base point");
  {
    MPoly gg = gcd_poly(mX, mX.derivative(Sym::X));
    if (gg.degree(Sym::X) > 0)
      throw TangentLine("residual intersection is not squarefree");
  }
  // impose: remainder of H(l(X)) modulo m(X) vanishes
  UPolyF m = UPolyF::from_mpoly(mX.rename({{Sym::X, Sym::alpha}}), Sym::alpha)
                 .monic();
  AdjointSystem A = A0;
  std::vector<UPolyF> restricted(A.monos.size());
  for (std::size_t n = 0; n < A.monos.size(); ++n) {
    const Mono& mono = A.monos[n];
    MPoly val = lx.pow(mono.e[idx(Sym::x)]) * ly.pow(mono.e[idx(Sym::y)]);
    restricted[n] =
        UPolyF::from_mpoly(val.rename({{Sym::X, Sym::alpha}}), Sym::alpha)
            .mod(m);
  }
  unsigned degm = static_cast<unsigned>(m.degree());
  for (unsigned r = 0; r < degm; ++r) {
    RfVec row(A.monos.size());
    bool nonzero = false;
    for (std::size_t n = 0; n < A.monos.size(); ++n) {
      row[n] = restricted[n][r];
      nonzero = nonzero || !row[n].is_zero();
    }
    if (nonzero) A.rows.push_back(std::move(row));
  }
  detail::rebuild_basis(A);
  return ConjugateFamilyConditions{mX, std::move(A)};
}

}  // namespace radsurf
