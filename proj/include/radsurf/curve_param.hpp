#pragma once

#include "radsurf/adjoint.hpp"
#include "radsurf/rad_solve.hpp"
#include "radsurf/verify.hpp"

namespace radsurf {

// A curve parametrization pair (x(s,t), y(s,t)) with its pairing certificate
// and the intermediate data the pipeline produced (kept for reporting).
struct RadParamCurve {
  Rx x, y;
  std::vector<Rx> tower;
  Rat sample_s, sample_t;  // pairing sample
  long residual_width_log2 = 0;
  mpfr_prec_t precision = 0;
  MPoly s1, s2;       // eliminants solved in x resp. y
  MPoly hstar0, hstar1;  // the pencil H* = hstar0 + t*hstar1 (affine)
};

namespace detail {

// Certified combination of the x- and y-roots: pick the first pair whose
// residual encloses zero and shrinks, with every pair decided at the sample.
struct PairPick {
  std::size_t xi = 0, yj = 0;
  Rat s0, t0;
  long width_log2 = 0;
  mpfr_prec_t prec = 0;
};

inline PairPick pair_roots(const MPoly& g_aff, const std::vector<Rx>& xs,
                           const std::vector<Rx>& ys, std::uint64_t seed) {
  std::vector<Rx> all = xs;
  all.insert(all.end(), ys.begin(), ys.end());
  auto tower = tower_of(all);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 40; ++attempt) {
    Rat s0(static_cast<long>(rng() % 161) - 80, 1 + static_cast<long>(rng() % 9));
    Rat t0(static_cast<long>(rng() % 161) - 80, 1 + static_cast<long>(rng() % 9));
    std::map<Sym, Rat> pt{{Sym::s, s0}, {Sym::t, t0}};
    if (!sample_clears_radicands(tower, pt, 128)) continue;
    for (mpfr_prec_t prec = 192; prec <= 2048; prec *= 2) {
      bool undecided = false, eval_failed = false;
      std::optional<PairPick> pick;
      EvalCtx ctx, ctx2;
      ctx.prec = prec;
      ctx2.prec = 2 * prec;
      for (auto& [v, q] : pt) {
        ctx.vars.emplace(v, CBall::from_rat(q, prec));
        ctx2.vars.emplace(v, CBall::from_rat(q, 2 * prec));
      }
      try {
        std::unordered_map<const RxNode*, CBall> memo, memo2;
        std::vector<CBall> xv, yv, xv2, yv2;
        for (auto& r : xs) {
          xv.push_back(rad_eval_rec(r, ctx, memo));
          xv2.push_back(rad_eval_rec(r, ctx2, memo2));
        }
        for (auto& r : ys) {
          yv.push_back(rad_eval_rec(r, ctx, memo));
          yv2.push_back(rad_eval_rec(r, ctx2, memo2));
        }
        for (std::size_t i = 0; i < xv.size() && !pick; ++i) {
          for (std::size_t j = 0; j < yv.size() && !pick; ++j) {
            std::map<Sym, CBall> xy{{Sym::x, xv[i]}, {Sym::y, yv[j]},
                                    {Sym::s, ctx.vars[Sym::s]},
                                    {Sym::t, ctx.vars[Sym::t]}};
            CBall res = mpoly_eval_ball(g_aff, xy, prec);
            if (!res.contains_zero()) continue;  // decided: not a partner
            std::map<Sym, CBall> xy2{{Sym::x, xv2[i]}, {Sym::y, yv2[j]},
                                     {Sym::s, ctx2.vars[Sym::s]},
                                     {Sym::t, ctx2.vars[Sym::t]}};
            CBall res2 = mpoly_eval_ball(g_aff, xy2, 2 * prec);
            if (!res2.contains_zero()) continue;
            Mpf w1 = res.width(prec), w2 = res2.width(2 * prec);
            Mpf target(prec);
            mpfr_mul_2si(target.p(), w1.p(), -8, MPFR_RNDU);
            if (mpfr_zero_p(w2.p()) || mpfr_cmp(w2.p(), target.p()) < 0) {
              PairPick pp;
              pp.xi = i;
              pp.yj = j;
              pp.s0 = s0;
              pp.t0 = t0;
              pp.width_log2 = res2.width_log2(2 * prec);
              pp.prec = 2 * prec;
              pick = pp;
            } else {
              undecided = true;
            }
          }
        }
      } catch (const PrecisionError&) {
        eval_failed = true;
      }
      if (pick) return *pick;
      if (eval_failed && prec >= 1024) break;  // resample
      if (!undecided && !eval_failed) break;   // everything excluded: resample
    }
  }
  throw PrecisionError("could not certify a root pairing");
}

}  // namespace detail

// Steps shared by every pencil path: resultants, primitive parts, radical
// solving in x and y, certified pairing.
inline RadParamCurve param_from_pencil(const PlaneCurve& C, const MPoly& h0,
                                       const MPoly& h1, std::uint64_t seed) {
  MPoly g = C.affine(Chart::W);
  MPoly H = h0.substitute(Sym::w, MPoly(1)) +
            MPoly::var(Sym::t) * h1.substitute(Sym::w, MPoly(1));
  if (H.is_zero()) throw ArgumentError("empty pencil");
  MPoly r1 = resultant(g, H, Sym::y);
  MPoly r2 = resultant(g, H, Sym::x);
  if (r1.is_zero() || r2.is_zero())
    throw TheoryViolation("pencil resultant vanished identically");
  MPoly s1 = primitive_part(r1, Sym::t);
  MPoly s2 = primitive_part(r2, Sym::t);
  unsigned dx = s1.degree(Sym::x), dy = s2.degree(Sym::y);
  if (dx < 1 || dx > 4 || dy < 1 || dy > 4)
    throw TheoryViolation("pencil eliminant degrees " + std::to_string(dx) +
                          ", " + std::to_string(dy) + " outside 1..4");
  auto xs = solve_mpoly(s1, Sym::x);
  auto ys = solve_mpoly(s2, Sym::y);
  detail::PairPick pick = detail::pair_roots(g, xs, ys, seed);
  RadParamCurve out;
  out.x = xs[pick.xi];
  out.y = ys[pick.yj];
  out.tower = tower_of({out.x, out.y});
  out.sample_s = pick.s0;
  out.sample_t = pick.t0;
  out.residual_width_log2 = pick.width_log2;
  out.precision = pick.prec;
  out.s1 = s1;
  out.s2 = s2;
  out.hstar0 = h0;
  out.hstar1 = h1;
  return out;
}

inline RadParamCurve param_from_system(const PlaneCurve& C,
                                       const AdjointSystem& A,
                                       std::uint64_t seed) {
  if (A.dim() < 1)
    throw AdjointSystemEmpty("constrained adjoint system is empty");
  if (A.dim() > 1)
    throw DataError("constrained adjoint system has dimension " +
                    std::to_string(A.dim()) + ", expected a pencil");
  return param_from_pencil(C, A.basis[0], A.basis[1], seed);
}

// Algorithm for genus <= 3: adjoints of degree d-2 through (d-3)+g simple
// points.
inline RadParamCurve param_curve_g_le_3(const PlaneCurve& C,
                                        const SingularLocus& L,
                                        const std::vector<PointFamily>& pts,
                                        std::uint64_t seed) {
  int g = genus(C, L);
  if (g > 3) throw ArgumentError("genus exceeds 3");
  unsigned want = C.d - 3 + static_cast<unsigned>(g);
  unsigned have = 0;
  for (auto& f : pts) have += f.size();
  if (have != want)
    throw ArgumentError("expected " + std::to_string(want) +
                        " simple points, got " + std::to_string(have));
  AdjointSystem A = adjoint_system(C, C.d - 2, L);
  A = constrain_through_points(A, pts, C);
  return param_from_system(C, A, seed);
}

// Algorithm for 2 <= genus <= 4: adjoints of degree d-3 through g-2 simple
// points.
inline RadParamCurve param_curve_g_2_4(const PlaneCurve& C,
                                       const SingularLocus& L,
                                       const std::vector<PointFamily>& pts,
                                       std::uint64_t seed) {
  int g = genus(C, L);
  if (g < 2 || g > 4) throw ArgumentError("genus outside 2..4");
  unsigned want = static_cast<unsigned>(g) - 2;
  unsigned have = 0;
  for (auto& f : pts) have += f.size();
  if (have != want)
    throw ArgumentError("expected " + std::to_string(want) +
                        " simple points, got " + std::to_string(have));
  AdjointSystem A = adjoint_system(C, C.d - 3, L);
  if (!pts.empty()) A = constrain_through_points(A, pts, C);
  return param_from_system(C, A, seed);
}

// Radical simple points: intersect the curve with a member of the adjoint
// system, cross out every factor supported at the singular locus, and read
// the residual intersection off as conjugate families (the partner
// coordinate is computed modulo the residual factor).
struct SimplePointExtraction {
  std::vector<PointFamily> points;
  MPoly member;  // the adjoint member used
  MPoly a1, a2;  // the two eliminants before factor removal
};

inline SimplePointExtraction radical_simple_points(
    const PlaneCurve& C, const AdjointSystem& A, const SingularLocus& L,
    std::uint64_t seed, const MPoly* fixed_member = nullptr) {
  MPoly g = C.affine(Chart::W);
  std::mt19937_64 rng(seed);
  std::string why = "no adjoint member produced a low-degree residual";
  for (int attempt = 0; attempt < 5; ++attempt) {
    MPoly M;
    if (fixed_member && attempt == 0) {
      M = *fixed_member;
    } else {
      for (auto& b : A.basis) {
        long c = static_cast<long>(rng() % 5) - 2;
        M += Rat(c) * b;
      }
      if (M.is_zero()) continue;
    }
    MPoly m_aff = M.substitute(Sym::w, MPoly(1));
    if (m_aff.is_zero() || (!m_aff.depends_on(Sym::x) && !m_aff.depends_on(Sym::y)))
      continue;
    MPoly a1 = resultant(g, m_aff, Sym::y);
    MPoly a2 = resultant(g, m_aff, Sym::x);
    if (a1.is_zero() || a2.is_zero()) continue;
    // cross out factors supported at the singular families
    MPoly r1 = a1;
    for (auto& f : L.families) {
      if (f.chart != Chart::W) continue;
      MPoly ex = family_eliminant(f.ca, f.modulus, Sym::x);
      while (true) {
        auto q = r1.try_exact_div(ex);
        if (!q) break;
        r1 = *q;
      }
    }
    if (!r1.depends_on(Sym::x)) continue;
    r1 = squarefree_part(primitive_part(r1, Sym::x), Sym::x);
    if (r1.degree(Sym::x) > 4) {
      why = "residual degree " + std::to_string(r1.degree(Sym::x)) +
            " exceeds 4";
      continue;
    }
    // partner coordinates modulo each residual branch
    UPolyF m0 =
        UPolyF::from_mpoly(r1.rename({{Sym::x, Sym::alpha}}), Sym::alpha)
            .monic();
    auto to_apoly = [&](const MPoly& f) {
      APoly out;
      for (auto& coeff : f.coeffs_in(Sym::y))
        out.push_back(
            UPolyF::from_mpoly(coeff.rename({{Sym::x, Sym::alpha}}), Sym::alpha));
      return out;
    };
    bool good = true;
    std::vector<PointFamily> pts;
    AlgElem alpha = AlgElem(std::vector<RatFunc>{RatFunc(), RatFunc(Rat(1))});
    for (auto& br : d5_gcd(to_apoly(g), to_apoly(m_aff), m0)) {
      if (ap_degree(br.value) != 1) {
        good = false;
        why = "adjoint member meets the curve in a vertical pair";
        break;
      }
      PointFamily f;
      f.chart = Chart::W;
      f.modulus = br.modulus;
      f.ca = reduce_mod(alpha, br.modulus);
      f.cb = reduce_mod(-br.value[0], br.modulus);
      f.multiplicity = 1;
      pts.push_back(std::move(f));
    }
    if (!good || pts.empty()) continue;
    std::sort(pts.begin(), pts.end(), [](const PointFamily& a, const PointFamily& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a.str() < b.str();
    });
    return SimplePointExtraction{std::move(pts), M, a1, a2};
  }
  throw SimplePointExtractionFailed(why);
}

// ---------------------------------------------------------------------------
// Genus 4, trigonal route: the canonical image lies on a unique quadric in
// P^3; a ruling of that scroll gives the 3:1 map.
// ---------------------------------------------------------------------------

// The unique quadratic relation among the four degree d-3 adjoints, found by
// reducing the ten products modulo G and solving the linear system over Q(s).
inline MPoly canonical_quadric(const PlaneCurve& C,
                               const std::array<MPoly, 4>& basis) {
  static const Sym us[4] = {Sym::u0, Sym::u1, Sym::u2, Sym::u3};
  MPoly G = C.G;
  std::array<MPoly, 4> a = basis;
  // pseudo-division variable: y; make G monic-izable there (shear if needed)
  if (G.coeff_of(Sym::y, C.d).is_zero()) {
    bool done = false;
    for (long c : {1, -1, 2, -2, 3}) {
      MPoly sheared = G.substitute(Sym::x, MPoly::var(Sym::x) +
                                               Rat(c) * MPoly::var(Sym::y));
      if (!sheared.coeff_of(Sym::y, C.d).is_zero()) {
        G = sheared;
        for (auto& f : a)
          f = f.substitute(Sym::x, MPoly::var(Sym::x) +
                                       Rat(c) * MPoly::var(Sym::y));
        done = true;
        break;
      }
    }
    if (!done) throw DataError("could not shear the curve monic in y");
  }
  UPolyF Gy = UPolyF::from_mpoly(G, Sym::y).monic();
  // ten products, reduced
  std::vector<std::pair<unsigned, unsigned>> prs;
  std::vector<UPolyF> rems;
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = i; j < 4; ++j) {
      prs.emplace_back(i, j);
      MPoly prod = a[i] * a[j];
      UPolyF py = UPolyF::from_mpoly(prod, Sym::y);
      rems.push_back(py.degree() >= Gy.degree() ? py.mod(Gy) : py);
    }
  // linear system over Q(s): group by (x, y, w) monomials
  std::map<Mono, RfVec, MonoGrlexGreater> rows;
  for (std::size_t n = 0; n < rems.size(); ++n) {
    for (int yk = 0; yk <= rems[n].degree(); ++yk) {
      const RatFunc& coeff = rems[n][yk];
      if (coeff.is_zero()) continue;
      // coeff is a rational function whose numerator mixes x, w, s
      for (auto& [mono, c] : coeff.num().terms()) {
        Mono key = mono;
        key.e[idx(Sym::s)] = 0;
        key.e[idx(Sym::y)] = static_cast<std::uint16_t>(yk);
        Mono srest{};
        srest.e[idx(Sym::s)] = mono.e[idx(Sym::s)];
        auto it = rows.find(key);
        if (it == rows.end())
          it = rows.emplace(key, RfVec(rems.size())).first;
        it->second[n] += RatFunc(MPoly::term(c, srest), coeff.den());
      }
    }
  }
  RfMat mat;
  for (auto& [k, row] : rows) mat.push_back(row);
  auto ns = nullspace(std::move(mat), rems.size());
  if (ns.empty())
    throw HyperellipticOrDataError(
        "no quadratic relation among the adjoint coordinates");
  if (ns.size() > 1)
    throw DataError("quadratic relation space has dimension " +
                    std::to_string(ns.size()));
  // assemble Q, cleared and normalized with positive leading coefficient
  MPoly den(1);
  for (auto& c : ns[0])
    if (!c.is_polynomial()) {
      MPoly gg = gcd_poly(den, c.den());
      den = den * c.den().exact_div(gg);
    }
  MPoly Q;
  for (std::size_t n = 0; n < prs.size(); ++n) {
    if (ns[0][n].is_zero()) continue;
    RatFunc scaled = ns[0][n] * RatFunc(den);
    Q += scaled.num() * MPoly::var(us[prs[n].first]) * MPoly::var(us[prs[n].second]);
  }
  Q = Q * Q.content_rat().inv();
  if (Q.leading_coeff().sign() < 0) Q = -Q;
  return Q;
}

// A ruling of the scroll: a projective map (u0:..:u3) -> (alpha:beta) whose
// fibers are the lines of one family. Coefficients may involve one square
// root, carried as the symbol gamma with gamma^2 = gamma_square.
struct ScrollRuling {
  bool cone = false;
  std::array<MPoly, 2> map;  // linear forms in u0..u3 over Q(s)[gamma]
  MPoly gamma_square;        // zero when no extension was needed
  std::vector<RatFunc> vertex;  // cone case
};

namespace detail {

// quadratic-extension scalars a + b*gamma over Q(s), gamma^2 = d
struct QExt {
  RatFunc a, b;
};
inline QExt qx(const RatFunc& a) { return {a, RatFunc()}; }
inline QExt qx_add(const QExt& p, const QExt& q) { return {p.a + q.a, p.b + q.b}; }
inline QExt qx_sub(const QExt& p, const QExt& q) { return {p.a - q.a, p.b - q.b}; }
inline QExt qx_neg(const QExt& p) { return {-p.a, -p.b}; }
inline QExt qx_mul(const QExt& p, const QExt& q, const RatFunc& d) {
  return {p.a * q.a + p.b * q.b * d, p.a * q.b + p.b * q.a};
}
inline bool qx_zero(const QExt& p) { return p.a.is_zero() && p.b.is_zero(); }
inline QExt qx_inv(const QExt& p, const RatFunc& d) {
  RatFunc norm = p.a * p.a - p.b * p.b * d;
  if (norm.is_zero()) throw DataError("zero divisor in quadratic extension");
  RatFunc ninv = norm.inv();
  return {p.a * ninv, -(p.b * ninv)};
}

// square root of a rational function, when it exists
inline std::optional<RatFunc> ratfunc_sqrt(const RatFunc& r) {
  if (r.is_zero()) return RatFunc();
  auto sqrt_poly = [](const MPoly& p) -> std::optional<MPoly> {
    if (p.is_zero()) return MPoly();
    auto dec_content = p.content_rat();
    if (dec_content.sign() < 0) return std::nullopt;
    if (!dec_content.is_square()) return std::nullopt;
    MPoly pp = p.primitive_rat();
    // squarefree exponents must all be even
    MPoly root(1);
    MPoly rest = pp;
    std::uint32_t mask = pp.vars_mask();
    if (mask == 0) {
      return MPoly(*dec_content.exact_root(2));
    }
    Sym v = static_cast<Sym>(__builtin_ctz(mask));
    for (auto& [f, e] : squarefree_decomposition(pp, v)) {
      if (e % 2) return std::nullopt;
      root = root * f.pow(e / 2);
    }
    MPoly square = root * root;
    auto q = pp.try_exact_div(square);
    if (!q || !(q->is_constant())) return std::nullopt;
    Rat c = q->constant_value() * dec_content;
    if (!c.is_square()) return std::nullopt;
    return root * *c.exact_root(2);
  };
  auto sn = sqrt_poly(r.num());
  auto sd = sqrt_poly(r.den());
  if (sn && sd) return RatFunc(*sn, *sd);
  // also try after multiplying numerator and denominator
  auto sprod = sqrt_poly(r.num() * r.den());
  if (sprod) return RatFunc(*sprod, r.den());
  return std::nullopt;
}

}  // namespace detail

inline ScrollRuling scroll_ruling(const MPoly& Q,
                                  const std::optional<std::array<Rat, 4>>&
                                      fixture_point = std::nullopt) {
  using detail::QExt;
  using detail::qx;
  static const Sym us[4] = {Sym::u0, Sym::u1, Sym::u2, Sym::u3};
  if (Q.is_zero()) throw ArgumentError("zero quadric");
  // symmetric matrix of the form: Q(u) = u^T M u with M_ii = c_ii, M_ij = c_ij/2
  RfMat M(4, RfVec(4));
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Mono m;
      m.e[idx(us[i])] += 1;
      m.e[idx(us[j])] += 1;
      MPoly cij;
      for (auto& [mono, c] : Q.terms()) {
        Mono key = mono;
        key.e[idx(Sym::s)] = 0;
        if (key == m) {
          Mono srest{};
          srest.e[idx(Sym::s)] = mono.e[idx(Sym::s)];
          cij.add_term(srest, c);
        }
      }
      RatFunc v(cij);
      if (i == j) {
        M[i][i] = v;
      } else {
        M[i][j] = v / RatFunc(Rat(2));
        M[j][i] = M[i][j];
      }
    }
  auto kernel = nullspace(M, 4);
  if (kernel.size() >= 2) throw DegenerateScroll("quadric has rank at most 2");

  auto eval_Q = [&](const std::array<QExt, 4>& v, const RatFunc& d) {
    QExt acc = qx(RatFunc());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc = detail::qx_add(
            acc, detail::qx_mul(detail::qx_mul(v[i], v[j], d),
                                qx(M[i][j]), d));
    return acc;
  };

  if (kernel.size() == 1) {
    // cone: project from the vertex onto a coordinate 3-space
    ScrollRuling out;
    out.cone = true;
    out.vertex = kernel[0];
    // three coordinate directions completing the vertex to a basis
    int skip = -1;
    for (int i = 0; i < 4 && skip < 0; ++i)
      if (!kernel[0][i].is_zero()) skip = i;
    std::vector<int> dirs;
    for (int i = 0; i < 4; ++i)
      if (i != skip) dirs.push_back(i);
    // base conic q3 on the coordinates (c1, c2, c3)
    RfMat q3(3, RfVec(3));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q3[i][j] = M[dirs[i]][dirs[j]];
    // find a point on the conic: coordinate points, then coordinate pairs
    std::array<QExt, 3> p0{qx(RatFunc()), qx(RatFunc()), qx(RatFunc())};
    RatFunc d;  // gamma^2 when an extension appears
    bool have_ext = false, found = false;
    for (int i = 0; i < 3 && !found; ++i)
      if (q3[i][i].is_zero()) {
        p0[i] = qx(RatFunc(Rat(1)));
        found = true;
      }
    for (int i = 0; i < 3 && !found; ++i) {
      for (int j = i + 1; j < 3 && !found; ++j) {
        // a^2 q_ii + 2ab q_ij + b^2 q_jj = 0, b = 1
        RatFunc disc = q3[i][j] * q3[i][j] - q3[i][i] * q3[j][j];
        if (q3[i][i].is_zero()) continue;  // handled above
        auto sq = detail::ratfunc_sqrt(disc);
        if (sq) {
          p0[i] = qx((-q3[i][j] + *sq) / q3[i][i]);
          p0[j] = qx(RatFunc(Rat(1)));
          found = true;
        }
      }
    }
    if (!found) {
      // quadratic extension from the first usable pair
      for (int i = 0; i < 3 && !found; ++i)
        for (int j = i + 1; j < 3 && !found; ++j) {
          if (q3[i][i].is_zero()) continue;
          d = q3[i][j] * q3[i][j] - q3[i][i] * q3[j][j];
          if (d.is_zero()) continue;
          have_ext = true;
          RatFunc inv = q3[i][i].inv();
          p0[i] = QExt{-q3[i][j] * inv, inv};  // (-q_ij + gamma)/q_ii
          p0[j] = qx(RatFunc(Rat(1)));
          found = true;
        }
      if (!found) throw DegenerateScroll("no point found on the base conic");
    }
    // the pencil of lines through p0: two independent linear forms vanishing
    // at p0 on the 3-space
    std::array<std::array<QExt, 3>, 2> forms;
    int got = 0;
    for (int k = 0; k < 3 && got < 2; ++k) {
      // form: p0[k]*c_m - p0[m]*c_k pattern; use e_k-dual style rows
      std::array<QExt, 3> f{qx(RatFunc()), qx(RatFunc()), qx(RatFunc())};
      int m1 = (k + 1) % 3, m2 = (k + 2) % 3;
      f[m1] = p0[m2];
      f[m2] = detail::qx_neg(p0[m1]);
      if (qx_zero(f[0]) && qx_zero(f[1]) && qx_zero(f[2])) continue;
      // check vanishing at p0 (it does: antisymmetry) and independence
      if (got == 1) {
        // independence: cross of coefficient vectors nonzero
        bool prop = true;
        for (int a2 = 0; a2 < 3 && prop; ++a2)
          for (int b2 = 0; b2 < 3 && prop; ++b2) {
            QExt lhs = detail::qx_mul(forms[0][a2], f[b2], d);
            QExt rhs = detail::qx_mul(forms[0][b2], f[a2], d);
            if (!qx_zero(detail::qx_sub(lhs, rhs))) prop = false;
          }
        if (prop) continue;
      }
      forms[got++] = f;
    }
    if (got < 2) throw DegenerateScroll("degenerate base conic");
    // pull the forms back to u-coordinates; since dirs are coordinate axes,
    // the dual coordinates are just u_dirs[m]. Clear denominators jointly.
    MPoly den(1);
    for (int fi = 0; fi < 2; ++fi)
      for (int m = 0; m < 3; ++m)
        for (const RatFunc* part : {&forms[fi][m].a, &forms[fi][m].b})
          if (!part->is_polynomial()) {
            MPoly g = gcd_poly(den, part->den());
            den = den * part->den().exact_div(g);
          }
    for (int fi = 0; fi < 2; ++fi) {
      MPoly form;
      for (int m = 0; m < 3; ++m) {
        RatFunc ac = forms[fi][m].a * RatFunc(den);
        RatFunc bc = forms[fi][m].b * RatFunc(den);
        if (!ac.is_zero()) form += ac.num() * MPoly::var(us[dirs[m]]);
        if (!bc.is_zero())
          form += bc.num() * MPoly::var(us[dirs[m]]) * MPoly::var(Sym::gamma);
      }
      out.map[fi] = form;
    }
    if (have_ext) {
      // rescale gamma to a polynomial relation: with gamma' = den(d)*gamma,
      // gamma'^2 = num(d)*den(d); multiply gamma-free parts by den(d)
      out.gamma_square = d.num() * d.den();
      for (auto& f : out.map) {
        MPoly fixed;
        for (auto& [m, c] : f.terms()) {
          if (m.e[idx(Sym::gamma)])
            fixed.add_term(m, c);
          else
            fixed += MPoly::term(c, m) * d.den();
        }
        f = fixed;
      }
    }
    return out;
  }

  // regular scroll
  std::array<QExt, 4> P{qx(RatFunc()), qx(RatFunc()), qx(RatFunc()), qx(RatFunc())};
  RatFunc d;
  bool have_ext = false, found = false;
  if (fixture_point) {
    for (int i = 0; i < 4; ++i) P[i] = qx(RatFunc((*fixture_point)[i]));
    found = true;
  }
  for (int i = 0; i < 4 && !found; ++i)
    if (M[i][i].is_zero()) {
      P[i] = qx(RatFunc(Rat(1)));
      found = true;
    }
  for (int i = 0; i < 4 && !found; ++i)
    for (int j = i + 1; j < 4 && !found; ++j) {
      if (M[i][i].is_zero()) continue;
      RatFunc disc = M[i][j] * M[i][j] - M[i][i] * M[j][j];
      auto sq = detail::ratfunc_sqrt(disc);
      if (sq) {
        P[i] = qx((-M[i][j] + *sq) / M[i][i]);
        P[j] = qx(RatFunc(Rat(1)));
        found = true;
      }
    }
  if (!found) {
    for (int i = 0; i < 4 && !found; ++i)
      for (int j = i + 1; j < 4 && !found; ++j) {
        if (M[i][i].is_zero()) continue;
        d = M[i][j] * M[i][j] - M[i][i] * M[j][j];
        if (d.is_zero()) continue;
        have_ext = true;
        RatFunc inv = M[i][i].inv();
        P[i] = QExt{-M[i][j] * inv, inv};
        P[j] = qx(RatFunc(Rat(1)));
        found = true;
      }
    if (!found) throw DegenerateScroll("no point found on the scroll");
  }
  {
    QExt qp = eval_Q(P, d);
    if (!qx_zero(qp)) throw ArgumentError("scroll point is not on the quadric");
  }
  // tangent plane coefficients: l = 2 M P
  std::array<QExt, 4> ell;
  for (int i = 0; i < 4; ++i) {
    QExt acc = qx(RatFunc());
    for (int j = 0; j < 4; ++j)
      acc = detail::qx_add(acc, detail::qx_mul(qx(M[i][j]), P[j], d));
    ell[i] = acc;
  }
  int pivot = -1;
  for (int i = 0; i < 4 && pivot < 0; ++i)
    if (!qx_zero(ell[i])) pivot = i;
  if (pivot < 0) throw DegenerateScroll("scroll point is singular");
  // kernel directions of the tangent form: v_m = ell_pivot e_m - ell_m e_pivot
  std::vector<std::array<QExt, 4>> kerv;
  for (int m = 0; m < 4; ++m) {
    if (m == pivot) continue;
    std::array<QExt, 4> v{qx(RatFunc()), qx(RatFunc()), qx(RatFunc()),
                          qx(RatFunc())};
    v[m] = ell[pivot];
    v[pivot] = detail::qx_neg(ell[m]);
    kerv.push_back(v);
  }
  // two of them complementary to P: test 3x3 minors of [P; v1; v2]
  auto det3 = [&](const std::array<QExt, 4>& r0, const std::array<QExt, 4>& r1,
                  const std::array<QExt, 4>& r2, int c0, int c1, int c2) {
    auto mul = [&](const QExt& x, const QExt& y) { return detail::qx_mul(x, y, d); };
    QExt t0 = mul(r0[c0], detail::qx_sub(mul(r1[c1], r2[c2]), mul(r1[c2], r2[c1])));
    QExt t1 = mul(r0[c1], detail::qx_sub(mul(r1[c0], r2[c2]), mul(r1[c2], r2[c0])));
    QExt t2 = mul(r0[c2], detail::qx_sub(mul(r1[c0], r2[c1]), mul(r1[c1], r2[c0])));
    return detail::qx_add(detail::qx_sub(t0, t1), t2);
  };
  std::array<QExt, 4> v1, v2;
  bool pair_found = false;
  for (std::size_t i = 0; i < kerv.size() && !pair_found; ++i)
    for (std::size_t j = i + 1; j < kerv.size() && !pair_found; ++j) {
      for (int c0 = 0; c0 < 4 && !pair_found; ++c0)
        for (int c1 = c0 + 1; c1 < 4 && !pair_found; ++c1)
          for (int c2 = c1 + 1; c2 < 4 && !pair_found; ++c2) {
            if (!qx_zero(det3(P, kerv[i], kerv[j], c0, c1, c2))) {
              v1 = kerv[i];
              v2 = kerv[j];
              pair_found = true;
            }
          }
    }
  if (!pair_found) throw DegenerateScroll("tangent plane basis not found");
  // tangent conic in the plane coordinates (a, b): q20 a^2 + q11 ab + q02 b^2
  auto bilinear = [&](const std::array<QExt, 4>& x, const std::array<QExt, 4>& y) {
    QExt acc = qx(RatFunc());
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        acc = detail::qx_add(
            acc, detail::qx_mul(detail::qx_mul(x[i], y[j], d), qx(M[i][j]), d));
    return acc;
  };
  QExt q20 = bilinear(v1, v1), q02 = bilinear(v2, v2);
  QExt q11 = detail::qx_add(bilinear(v1, v2), bilinear(v2, v1));
  std::array<QExt, 4> w;
  if (qx_zero(q20)) {
    w = v1;  // the line b = 0
  } else {
    // roots of the binary form; may need the (single) extension
    QExt disc = detail::qx_sub(detail::qx_mul(q11, q11, d),
                               detail::qx_mul(detail::qx_mul(qx(RatFunc(Rat(4))), q20, d),
                                              q02, d));
    QExt sq{};
    bool have_sq = false;
    if (disc.b.is_zero()) {
      auto s0 = detail::ratfunc_sqrt(disc.a);
      if (s0) {
        sq = qx(*s0);
        have_sq = true;
      } else if (!have_ext) {
        d = disc.a;
        have_ext = !d.is_zero();
        if (have_ext) {
          sq = QExt{RatFunc(), RatFunc(Rat(1))};
          have_sq = true;
        }
      }
    }
    if (!have_sq)
      throw DegenerateScroll(
          "line splitting needs a second quadratic extension");
    // w = (-q11 + sq) v1 + 2 q20 v2
    QExt ca = detail::qx_add(detail::qx_neg(q11), sq);
    QExt cb = detail::qx_mul(qx(RatFunc(Rat(2))), q20, d);
    for (int i = 0; i < 4; ++i)
      w[i] = detail::qx_add(detail::qx_mul(ca, v1[i], d),
                            detail::qx_mul(cb, v2[i], d));
  }
  // linear forms vanishing on span{P, w}: for each k, the 3x3 determinant of
  // the rows (u, P, w) restricted to the columns other than k, expanded along
  // the u-row. Vanishing at P and w holds because the determinant has a
  // repeated row there.
  std::vector<std::array<QExt, 4>> forms;
  for (int k = 0; k < 4; ++k) {
    int cols[3], nc = 0;
    for (int c = 0; c < 4; ++c)
      if (c != k) cols[nc++] = c;
    std::array<QExt, 4> f{qx(RatFunc()), qx(RatFunc()), qx(RatFunc()),
                          qx(RatFunc())};
    bool nonzero = false;
    for (int pos = 0; pos < 3; ++pos) {
      // cyclic (pos+1, pos+2) indexing carries the alternating cofactor sign
      int m = cols[pos];
      int r0 = cols[(pos + 1) % 3], r1 = cols[(pos + 2) % 3];
      QExt minor = detail::qx_sub(detail::qx_mul(P[r0], w[r1], d),
                                  detail::qx_mul(P[r1], w[r0], d));
      f[m] = minor;
      nonzero = nonzero || !qx_zero(f[m]);
    }
    if (nonzero) forms.push_back(f);
  }
  // pick two independent forms, ordered by leading coordinate
  std::array<QExt, 4> la{}, lb{};
  bool has_la = false, has_lb = false;
  auto lead_index = [&](const std::array<QExt, 4>& f) {
    for (int i = 0; i < 4; ++i)
      if (!qx_zero(f[i])) return i;
    return 4;
  };
  std::sort(forms.begin(), forms.end(),
            [&](const std::array<QExt, 4>& f, const std::array<QExt, 4>& g) {
              return lead_index(f) < lead_index(g);
            });
  for (auto& f : forms) {
    if (!has_la) {
      la = f;
      has_la = true;
      continue;
    }
    // proportionality test
    bool prop = true;
    for (int i = 0; i < 4 && prop; ++i)
      for (int j = 0; j < 4 && prop; ++j)
        if (!qx_zero(detail::qx_sub(detail::qx_mul(la[i], f[j], d),
                                    detail::qx_mul(la[j], f[i], d))))
          prop = false;
    if (!prop) {
      lb = f;
      has_lb = true;
      break;
    }
  }
  if (!has_la || !has_lb) throw DegenerateScroll("line equations degenerate");
  // normalize each form: leading coefficient 1
  auto normalize = [&](std::array<QExt, 4>& f) {
    int li = lead_index(f);
    QExt inv = detail::qx_inv(f[li], d);
    for (int i = 0; i < 4; ++i) f[i] = detail::qx_mul(f[i], inv, d);
  };
  normalize(la);
  normalize(lb);

  // decompose Q = la * A + lb * B with the gauge: A has no component on the
  // leading coordinate of lb. Solve the linear system over the field.
  int jb = lead_index(lb);
  // unknowns: A0..A3, B0..B3
  std::vector<std::vector<QExt>> sys;  // rows: [coeffs | rhs]
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      std::vector<QExt> row(9, qx(RatFunc()));
      for (int m = 0; m < 4; ++m) {
        // coefficient of A_m in the (i,j) entry of la*A + A*la symmetrized
        // la*A contributes la_i A_j + la_j A_i on u_i u_j (i != j), la_i A_i on u_i^2
        if (m == j) row[m] = detail::qx_add(row[m], la[i]);
        if (i != j && m == i) row[m] = detail::qx_add(row[m], la[j]);
        if (m == j) row[4 + m] = detail::qx_add(row[4 + m], lb[i]);
        if (i != j && m == i) row[4 + m] = detail::qx_add(row[4 + m], lb[j]);
      }
      QExt rhs = qx(i == j ? M[i][i] : M[i][j] + M[i][j]);
      row[8] = rhs;
      sys.push_back(std::move(row));
    }
  {
    std::vector<QExt> gauge(9, qx(RatFunc()));
    gauge[jb] = qx(RatFunc(Rat(1)));
    sys.push_back(std::move(gauge));
  }
  // Gaussian elimination over the (possibly extended) field
  std::vector<QExt> sol(8, qx(RatFunc()));
  {
    std::size_t rows_n = sys.size();
    std::size_t row = 0;
    std::vector<int> pivot_col;
    for (int col = 0; col < 8 && row < rows_n; ++col) {
      std::size_t sel = row;
      while (sel < rows_n && qx_zero(sys[sel][col])) ++sel;
      if (sel == rows_n) continue;
      std::swap(sys[row], sys[sel]);
      QExt inv = detail::qx_inv(sys[row][col], d);
      for (int c = col; c < 9; ++c) sys[row][c] = detail::qx_mul(sys[row][c], inv, d);
      for (std::size_t r = 0; r < rows_n; ++r) {
        if (r == row || qx_zero(sys[r][col])) continue;
        QExt f = sys[r][col];
        for (int c = col; c < 9; ++c)
          sys[r][c] = detail::qx_sub(sys[r][c], detail::qx_mul(f, sys[row][c], d));
      }
      pivot_col.push_back(col);
      ++row;
    }
    // consistency: all remaining rows must have zero rhs
    for (std::size_t r = row; r < rows_n; ++r)
      if (!qx_zero(sys[r][8]))
        throw DegenerateScroll("line does not lie on the quadric");
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      sol[pivot_col[r]] = sys[r][8];
  }
  // assemble the ruling map (A : B) as MPoly forms, clearing denominators
  ScrollRuling out;
  MPoly den(1);
  for (auto& c : sol)
    for (const RatFunc* part : {&c.a, &c.b})
      if (!part->is_polynomial()) {
        MPoly g = gcd_poly(den, part->den());
        den = den * part->den().exact_div(g);
      }
  for (int half = 0; half < 2; ++half) {
    MPoly form;
    for (int m = 0; m < 4; ++m) {
      const QExt& c = sol[half * 4 + m];
      RatFunc ac = c.a * RatFunc(den), bc = c.b * RatFunc(den);
      if (!ac.is_zero()) form += ac.num() * MPoly::var(us[m]);
      if (!bc.is_zero())
        form += bc.num() * MPoly::var(us[m]) * MPoly::var(Sym::gamma);
    }
    out.map[half] = form;
  }
  if (have_ext) {
    out.gamma_square = d.num() * d.den();
    // the forms used gamma with gamma^2 = d (a rational function); rescale to
    // the polynomial relation gamma'^2 = num*den by gamma = gamma'/den:
    // divide every gamma coefficient by den(d)
    // (projectively we may instead multiply the gamma-free parts by den(d))
    std::array<MPoly, 2> fixed;
    for (int half = 0; half < 2; ++half) {
      MPoly f;
      for (auto& [m, c] : out.map[half].terms()) {
        if (m.e[idx(Sym::gamma)])
          f.add_term(m, c);
        else
          f += MPoly::term(c, m) * d.den();
      }
      fixed[half] = f;
    }
    out.map = fixed;
  }
  // primitive normalization of the pair by one common unit
  MPoly content = gcd_poly(out.map[0], out.map[1]);
  if (!content.is_constant()) {
    out.map[0] = out.map[0].exact_div(content);
    out.map[1] = out.map[1].exact_div(content);
  }
  Rat c0 = out.map[0].content_rat();
  out.map[0] = out.map[0] * c0.inv();
  out.map[1] = out.map[1] * c0.inv();
  return out;
}

// Trigonal pipeline: compose the ruling with the adjoint coordinates to a
// t-pencil, then run the resultant steps.
inline RadParamCurve param_curve_g4_trigonal(
    const PlaneCurve& C, const std::array<MPoly, 4>& basis,
    const ScrollRuling& ruling, std::uint64_t seed) {
  if (!ruling.gamma_square.is_zero())
    throw DegenerateScroll(
        "rulings over a quadratic extension are not supported in this build");
  std::map<Sym, MPoly> subst;
  static const Sym us[4] = {Sym::u0, Sym::u1, Sym::u2, Sym::u3};
  for (int i = 0; i < 4; ++i)
    subst.emplace(us[i], basis[i].substitute(Sym::w, MPoly(1)));
  MPoly h0 = ruling.map[0].substitute(subst);
  MPoly h1 = -ruling.map[1].substitute(subst);
  RadParamCurve out = param_from_pencil(C, h0, h1, seed);
  if (out.s1.degree(Sym::x) != 3 || out.s2.degree(Sym::y) != 3)
    throw TheoryViolation("trigonal eliminants are not cubic");
  return out;
}

}  // namespace radsurf
