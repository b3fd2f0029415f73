#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"
#include "radsurf/curve_param.hpp"
#include "radsurf/poly_text.hpp"

using namespace radsurf;

namespace {

PlaneCurve pencil_curve(const char* surface_text) {
  MPoly F = parse_poly(surface_text);
  return PlaneCurve::from_affine(F.substitute(Sym::z, MPoly::var(Sym::s)));
}

// equality up to a nonzero rational multiple
bool eq_up_to_unit(const MPoly& a, const MPoly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
  return a.primitive_rat() == b.primitive_rat();
}

// the set of projective point strings of a singular locus
std::set<std::string> locus_strings(const SingularLocus& L) {
  std::set<std::string> out;
  for (auto& f : L.families) out.insert(f.str());
  return out;
}

MPoly p(const std::string& text) { return parse_poly(text); }

}  // namespace

TEST_CASE("singular loci of the pencil fixtures") {
  // genus 2: four ordinary double points
  auto L2 = singular_locus(pencil_curve(fixtures::kPencilG2));
  CHECK(L2.families.size() == 4);
  auto s2 = locus_strings(L2);
  CHECK(s2.count("(0 : 0 : 1) x2"));
  CHECK(s2.count("(1 : 1 : 1) x2"));
  CHECK(s2.count("(0 : 1 : 0) x2"));  // chart y=1 at (x,w) = (0,0)
  CHECK(s2.count("(1 : 0 : 0) x2"));
  CHECK(genus(pencil_curve(fixtures::kPencilG2)) == 2);

  // genus 3: three double points, one at infinity
  auto L3 = singular_locus(pencil_curve(fixtures::kPencilG3));
  CHECK(L3.families.size() == 3);
  auto s3 = locus_strings(L3);
  CHECK(s3.count("(0 : 1 : 1) x2"));
  CHECK(s3.count("(1 : 0 : 1) x2"));
  CHECK(s3.count("(1 : 1 : 0) x2"));
  CHECK(genus(pencil_curve(fixtures::kPencilG3)) == 3);

  // genus 1: five double points
  auto L1 = singular_locus(pencil_curve(fixtures::kPencilG1));
  CHECK(L1.families.size() == 5);
  auto s1 = locus_strings(L1);
  CHECK(s1.count("(0 : 0 : 1) x2"));
  CHECK(s1.count("(1 : 1 : 1) x2"));
  CHECK(s1.count("(2 : 3 : 1) x2"));
  CHECK(s1.count("(0 : 1 : 0) x2"));
  CHECK(s1.count("(1 : 0 : 0) x2"));
  CHECK(genus(pencil_curve(fixtures::kPencilG1)) == 1);

  // genus 4 with two double points at infinity
  auto L4 = singular_locus(pencil_curve(fixtures::kPencilG4));
  CHECK(L4.families.size() == 2);
  auto s4 = locus_strings(L4);
  CHECK(s4.count("(0 : 1 : 0) x2"));
  CHECK(s4.count("(1 : 0 : 0) x2"));
  CHECK(genus(pencil_curve(fixtures::kPencilG4)) == 4);

  // trigonal fixture: two affine double points with s-dependent coordinates
  auto Lt = singular_locus(pencil_curve(fixtures::kTrigonal));
  CHECK(Lt.families.size() == 2);
  auto st = locus_strings(Lt);
  CHECK(st.count("(0 : -s : 1) x2"));
  CHECK(st.count("(s : 0 : 1) x2"));
  CHECK(genus(pencil_curve(fixtures::kTrigonal)) == 4);
}

TEST_CASE("smooth curves have empty loci; cusps are rejected") {
  PlaneCurve conic = PlaneCurve::from_affine(p("x^2 + y^2 - 1"));
  CHECK(singular_locus(conic).families.empty());
  CHECK(genus(conic) == 0);
  PlaneCurve cubic = PlaneCurve::from_affine(p("y^2 - x^3 + x + s"));
  CHECK(genus(cubic) == 1);  // smooth for generic s
  PlaneCurve cusp = PlaneCurve::from_affine(p("y^2 - x^3"));
  CHECK_THROWS_AS(singular_locus(cusp), NonOrdinarySingularity);
}

TEST_CASE("genus drops by the number of added nodes") {
  // smooth quartic: genus 3; one node: genus 2
  PlaneCurve smooth = PlaneCurve::from_affine(p("x^4 + y^4 + s*x*y + 1"));
  CHECK(genus(smooth) == 3);
  // nodal quartic: y^2 = x^2 (x^2 + x + 1) has an ordinary node at the origin
  PlaneCurve nodal = PlaneCurve::from_affine(p("y^2 - x^4 - x^3 - x^2"));
  auto L = singular_locus(nodal);
  REQUIRE(L.families.size() == 1);
  CHECK(L.families[0].multiplicity == 2);
  CHECK(genus(nodal) == 2);
}

TEST_CASE("adjoint systems of the fixtures") {
  // genus 2: conics through the four double points
  {
    PlaneCurve C = pencil_curve(fixtures::kPencilG2);
    auto L = singular_locus(C);
    AdjointSystem A = adjoint_system(C, C.d - 3, L);
    REQUIRE(A.dim() == 1);
    // span{xw - yw, xy - yw}
    std::set<std::string> got;
    for (auto& b : A.basis) got.insert(b.str());
    CHECK(got.count(p("x*y - y*w").str()));
    CHECK(got.count(p("x*w - y*w").str()));
  }
  // genus 4 first part: the four monomial conics
  {
    PlaneCurve C = pencil_curve(fixtures::kPencilG4);
    AdjointSystem A = adjoint_system(C, C.d - 3);
    REQUIRE(A.dim() == 3);
    std::set<std::string> got;
    for (auto& b : A.basis) got.insert(b.str());
    CHECK(got.count("x*y"));
    CHECK(got.count("x*w"));
    CHECK(got.count("y*w"));
    CHECK(got.count("w^2"));
  }
  // trigonal: same span as the printed basis
  {
    PlaneCurve C = pencil_curve(fixtures::kTrigonal);
    AdjointSystem A = adjoint_system(C, C.d - 3);
    REQUIRE(A.dim() == 3);
    // each printed basis member must satisfy the constraint rows
    for (const char* text :
         {fixtures::kTrigonal_Basis0, fixtures::kTrigonal_Basis1,
          fixtures::kTrigonal_Basis2, fixtures::kTrigonal_Basis3}) {
      MPoly b = p(text);
      for (auto& row : A.rows) {
        RatFunc acc;
        for (std::size_t n = 0; n < A.monos.size(); ++n) {
          if (row[n].is_zero()) continue;
          // coefficient of the monomial in b (s-parts retained)
          MPoly cn;
          for (auto& [m, c] : b.terms()) {
            Mono key = m;
            key.e[idx(Sym::s)] = 0;
            if (key == A.monos[n]) {
              Mono srest{};
              srest.e[idx(Sym::s)] = m.e[idx(Sym::s)];
              cn.add_term(srest, c);
            }
          }
          acc += row[n] * RatFunc(cn);
        }
        CHECK(acc.is_zero());
      }
    }
  }
  // genus 1: the degree d-2 = 3 system has projective dimension 4
  {
    PlaneCurve C = pencil_curve(fixtures::kPencilG1);
    AdjointSystem A = adjoint_system(C, C.d - 2);
    CHECK(A.dim() == 4);
  }
  // dimension property: dim A_{d-3} = genus - 1 on all fixtures
  for (const char* fx : {fixtures::kPencilG2, fixtures::kPencilG3,
                         fixtures::kPencilG4, fixtures::kTrigonal}) {
    PlaneCurve C = pencil_curve(fx);
    auto L = singular_locus(C);
    AdjointSystem A = adjoint_system(C, C.d - 3, L);
    CHECK(A.dim() == genus(C, L) - 1);
  }
}

TEST_CASE("genus 3: automatic simple points") {
  PlaneCurve C = pencil_curve(fixtures::kPencilG3);
  auto L = singular_locus(C);
  AdjointSystem A = adjoint_system(C, C.d - 3, L);
  MPoly M = p(fixtures::kPencilG3_M);
  auto ext = radical_simple_points(C, A, L, 1729, &M);
  CHECK(eq_up_to_unit(ext.a1, p(fixtures::kPencilG3_A1)));
  CHECK(eq_up_to_unit(ext.a2, p(fixtures::kPencilG3_A2)));
  // squarefree structure of A1: (x-1) squared and the conjugate quadratic
  auto dec = squarefree_decomposition(ext.a1, Sym::x);
  bool has_sq = false, has_quad = false;
  for (auto& [f, e] : dec) {
    if (e == 2 && eq_up_to_unit(f, p("x - 1"))) has_sq = true;
    if (e == 1 &&
        f.try_exact_div(p("2*s^5*x^2 - x^2 - 2*x - s^5*x + 2")).has_value())
      has_quad = true;
  }
  CHECK(has_sq);
  CHECK(has_quad);
  // the extracted points: the rational (-1, 2) plus one conjugate pair
  REQUIRE_FALSE(ext.points.empty());
  CHECK(ext.points[0].size() == 1);
  CHECK(ext.points[0].str() == "(-1 : 2 : 1) x1");
  unsigned total = 0;
  for (auto& f : ext.points) total += f.size();
  CHECK(total == 3);

  // constraining by (-1, 2) gives the printed pencil
  AdjointSystem A2 = adjoint_system(C, C.d - 3, L);
  A2 = constrain_through_points(A2, {ext.points[0]}, C);
  REQUIRE(A2.dim() == 1);
  MPoly hstar = A2.basis[0] + MPoly::var(Sym::t) * A2.basis[1];
  CHECK(eq_up_to_unit(hstar, p(fixtures::kPencilG3_Hstar)
                                  .rename({})));  // identical monomial layout
  // full algorithm for genus 3 reproduces the printed eliminants
  RadParamCurve out = param_curve_g_2_4(C, L, {ext.points[0]}, 1729);
  CHECK(eq_up_to_unit(out.s1, p(fixtures::kPencilG3_S1)));
  CHECK(eq_up_to_unit(out.s2, p(fixtures::kPencilG3_S2)));
}

TEST_CASE("genus 2: no points needed") {
  PlaneCurve C = pencil_curve(fixtures::kPencilG2);
  auto L = singular_locus(C);
  // with the source's pencil gauge, the printed eliminants come out
  RadParamCurve out =
      param_from_pencil(C, p(fixtures::kPencilG2_H0), p(fixtures::kPencilG2_H1),
                        1729);
  CHECK(eq_up_to_unit(out.s1, p(fixtures::kPencilG2_S1)));
  CHECK(eq_up_to_unit(out.s2, p(fixtures::kPencilG2_S2)));
  // the x-component's square root carries the printed discriminant up to a
  // square unit: disc * A must be a perfect square
  auto tower = tower_of(out.x);
  REQUIRE(tower.size() == 1);
  MPoly disc = rx_to_ratfunc(tower[0]->args[0]).num();
  MPoly prod = disc * p(fixtures::kPencilG2_A);
  auto sq = radsurf::detail::ratfunc_sqrt(RatFunc(prod));
  CHECK(sq.has_value());
  // the automatic path also certifies (gauge-free)
  RadParamCurve out_auto = param_curve_g_2_4(C, L, {}, 1729);
  CHECK(out_auto.s1.degree(Sym::x) == 2);
  CHECK(out_auto.s2.degree(Sym::y) == 2);
}

TEST_CASE("genus 1: conjugate family from a line through the double point") {
  PlaneCurve C = pencil_curve(fixtures::kPencilG1);
  auto L = singular_locus(C);
  AdjointSystem A = adjoint_system(C, C.d - 2, L);
  auto conj = constrain_conjugate_family(A, p(fixtures::kPencilG1_Line), C,
                                         Rat(0), Rat(0), 2);
  CHECK(conj.m_of_x == p(fixtures::kPencilG1_mX));
  REQUIRE(conj.system.dim() == 1);
  // the printed solved form spans the same constrained system: both printed
  // pencil members satisfy every constraint row
  for (const char* text : {fixtures::kPencilG1_H0, fixtures::kPencilG1_H1}) {
    MPoly b = p(text);
    for (auto& row : conj.system.rows) {
      RatFunc acc;
      for (std::size_t n = 0; n < conj.system.monos.size(); ++n) {
        if (row[n].is_zero()) continue;
        MPoly cn;
        for (auto& [m, c] : b.terms()) {
          Mono key = m;
          key.e[idx(Sym::s)] = 0;
          if (key == conj.system.monos[n]) {
            Mono srest{};
            srest.e[idx(Sym::s)] = m.e[idx(Sym::s)];
            cn.add_term(srest, c);
          }
        }
        acc += row[n] * RatFunc(cn);
      }
      CHECK(acc.is_zero());
    }
  }
  // with the printed gauge the eliminants match
  RadParamCurve out = param_from_pencil(C, p(fixtures::kPencilG1_H0),
                                        p(fixtures::kPencilG1_H1), 1729);
  CHECK(eq_up_to_unit(out.s1, p(fixtures::kPencilG1_S1)));
  CHECK(eq_up_to_unit(out.s2, p(fixtures::kPencilG1_S2)));
  // tangent lines are rejected
  CHECK_THROWS_AS(constrain_conjugate_family(A, p("x"), C, Rat(0), Rat(0), 2),
                  TangentLine);
}

TEST_CASE("genus 4 first part: two radical simple points") {
  PlaneCurve C = pencil_curve(fixtures::kPencilG4);
  auto L = singular_locus(C);
  Rx px = parse_radex(fixtures::kPencilG4_PointX);
  PointFamily fam = radical_point_to_family(px, rx_int(1), rx_int(1));
  CHECK(fam.size() == 2);
  AdjointSystem A = adjoint_system(C, C.d - 3, L);
  A = constrain_through_points(A, {fam}, C);
  REQUIRE(A.dim() == 1);
  RadParamCurve out = param_from_pencil(C, p(fixtures::kPencilG4_H0),
                                        p(fixtures::kPencilG4_H1), 1729);
  CHECK(eq_up_to_unit(out.s1, -p("(1+t*x)^3")));
  CHECK(eq_up_to_unit(out.s2, p(fixtures::kPencilG4_S2)));
  CHECK(out.x == rad_simplify(rx_neg(rx_inv(rx_var(Sym::t)))));
  // the constrained system's span equals the printed pencil's span
  for (const char* text : {fixtures::kPencilG4_H0, fixtures::kPencilG4_H1}) {
    MPoly b = p(text);
    for (auto& row : A.rows) {
      RatFunc acc;
      for (std::size_t n = 0; n < A.monos.size(); ++n) {
        if (row[n].is_zero()) continue;
        MPoly cn;
        for (auto& [m, c] : b.terms()) {
          Mono key = m;
          key.e[idx(Sym::s)] = 0;
          if (key == A.monos[n]) {
            Mono srest{};
            srest.e[idx(Sym::s)] = m.e[idx(Sym::s)];
            cn.add_term(srest, c);
          }
        }
        acc += row[n] * RatFunc(cn);
      }
      CHECK(acc.is_zero());
    }
  }
}

TEST_CASE("trigonal: canonical quadric, ruling, eliminants") {
  PlaneCurve C = pencil_curve(fixtures::kTrigonal);
  std::array<MPoly, 4> basis = {
      p(fixtures::kTrigonal_Basis0), p(fixtures::kTrigonal_Basis1),
      p(fixtures::kTrigonal_Basis2), p(fixtures::kTrigonal_Basis3)};
  MPoly Q = canonical_quadric(C, basis);
  CHECK(eq_up_to_unit(Q, p(fixtures::kTrigonal_Q)));
  // the relation holds identically in this degree range
  std::map<Sym, MPoly> subst{{Sym::u0, basis[0]},
                             {Sym::u1, basis[1]},
                             {Sym::u2, basis[2]},
                             {Sym::u3, basis[3]}};
  CHECK(Q.substitute(subst).is_zero());

  // permuting the basis permutes the quadric accordingly
  std::array<MPoly, 4> permuted = {basis[1], basis[0], basis[2], basis[3]};
  MPoly Qp = canonical_quadric(C, permuted);
  MPoly expected = Q.rename({{Sym::u0, Sym::u1}, {Sym::u1, Sym::u0}});
  CHECK(eq_up_to_unit(Qp, expected));

  ScrollRuling R = scroll_ruling(Q, std::array<Rat, 4>{0, 1, 0, 0});
  CHECK_FALSE(R.cone);
  CHECK(R.gamma_square.is_zero());
  CHECK(eq_up_to_unit(R.map[0], p(fixtures::kTrigonal_RulingA)));
  CHECK(eq_up_to_unit(R.map[1], p(fixtures::kTrigonal_RulingB)));
  // joint unit: the pair must match with one common scalar
  CHECK(R.map[0] * p(fixtures::kTrigonal_RulingB) ==
        R.map[1] * p(fixtures::kTrigonal_RulingA));

  RadParamCurve out = param_curve_g4_trigonal(C, basis, R, 1729);
  MPoly H = out.hstar0.substitute(Sym::w, MPoly(1)) +
            MPoly::var(Sym::t) * out.hstar1.substitute(Sym::w, MPoly(1));
  CHECK(eq_up_to_unit(H, p(fixtures::kTrigonal_H)));
  CHECK(eq_up_to_unit(out.s1, p(fixtures::kTrigonal_S1)));
  CHECK(eq_up_to_unit(out.s2, p(fixtures::kTrigonal_S2)));
  // identical leading coefficients of the two cubics
  CHECK(eq_up_to_unit(out.s1.coeff_of(Sym::x, 3), out.s2.coeff_of(Sym::y, 3)));
}

TEST_CASE("scroll classification extras") {
  // the standard smooth quadric u0 u3 - u1 u2
  MPoly Q = p("u0*u3 - u1*u2");
  ScrollRuling R = scroll_ruling(Q);
  CHECK_FALSE(R.cone);
  CHECK(R.gamma_square.is_zero());
  // ruling fibers lie on the quadric: A*B' - ... validated numerically via
  // the membership identity map0 * map1-partner; here check it is nonzero
  CHECK_FALSE(R.map[0].is_zero());
  CHECK_FALSE(R.map[1].is_zero());

  // a cone: u0^2 + u1^2 - u2^2 with vertex (0:0:0:1)
  MPoly cone = p("u0^2 + u1^2 - u2^2");
  ScrollRuling Rc = scroll_ruling(cone);
  CHECK(Rc.cone);
  REQUIRE(Rc.vertex.size() == 4);
  CHECK(Rc.vertex[0].is_zero());
  CHECK(Rc.vertex[1].is_zero());
  CHECK(Rc.vertex[2].is_zero());
  CHECK_FALSE(Rc.vertex[3].is_zero());

  // rank 2 is rejected
  CHECK_THROWS_AS(scroll_ruling(p("u0*u1")), DegenerateScroll);
}

TEST_CASE("no quadratic relation among generic quadrics") {
  PlaneCurve C = pencil_curve(fixtures::kTrigonal);
  std::array<MPoly, 4> basis = {p("x^2"), p("y^2"), p("w^2"),
                                p("x*y + y*w")};
  CHECK_THROWS_AS(canonical_quadric(C, basis), HyperellipticOrDataError);
}
