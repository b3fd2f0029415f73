#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "radsurf/mpoly_gcd.hpp"
#include "radsurf/poly_text.hpp"
#include "radsurf/resultant.hpp"
#include "radsurf/triangular.hpp"

using namespace radsurf;

static MPoly P(const std::string& s) { return parse_poly(s); }

TEST_CASE("polynomial arithmetic basics") {
  MPoly x = MPoly::var(Sym::x), y = MPoly::var(Sym::y);
  CHECK((x + y) * (x - y) == P("x^2 - y^2"));
  CHECK(P("x^2 - y^2").exact_div(P("x - y")) == P("x + y"));
  CHECK_THROWS_AS(P("x^2 + y").exact_div(P("x - y")), DivisionError);
  CHECK((x * y).pow(3) == P("x^3*y^3"));
}

TEST_CASE("substitution") {
  MPoly sphere = P("x^2 + y^2 + z^2 - 1");
  MPoly g = sphere.substitute(
      {{Sym::x, MPoly::var(Sym::t1)}, {Sym::y, MPoly::var(Sym::t2)}});
  CHECK(g == P("z^2 + t1^2 + t2^2 - 1"));
  CHECK(sphere.substitute(std::map<Sym, MPoly>{}) == sphere);

  // the decic with a sixfold origin, restricted to the line (h t1, h t2, h)
  MPoly F = P("x^10 + y^10 + z^10 - x*y*z^4");
  MPoly h = MPoly::var(Sym::h);
  MPoly L = F.substitute({{Sym::x, h * MPoly::var(Sym::t1)},
                          {Sym::y, h * MPoly::var(Sym::t2)},
                          {Sym::z, h}});
  CHECK(L == P("h^10*t1^10 + h^10*t2^10 + h^10 - h^6*t1*t2"));
  MPoly g6 = L.exact_div(MPoly::var(Sym::h, 6));
  CHECK(g6 == P("h^4*t1^10 + h^4*t2^10 + h^4 - t1*t2"));
}

TEST_CASE("derivative") {
  CHECK(P("x^2*y").derivative(Sym::x) == P("2*x*y"));
  CHECK(P("x^2 + y^2 + z^2 - 1").derivative(Sym::z) == P("2*z"));
  // all partials of order < 6 of the decic vanish at the origin: its lowest
  // support degree is 6 (oracle: scan the support directly)
  MPoly F = P("x^10 + y^10 + z^10 - x*y*z^4");
  CHECK(F.min_total_degree() == 6);
  std::map<Sym, Rat> origin{{Sym::x, Rat(0)}, {Sym::y, Rat(0)}, {Sym::z, Rat(0)}};
  MPoly d5 = F;
  for (int i = 0; i < 5; ++i) d5 = d5.derivative(Sym::x);
  CHECK(d5.eval(origin).is_zero());
  CHECK(F.derivative(Sym::x).eval(origin).is_zero());
}

TEST_CASE("resultant matches evaluation on a monic linear factor") {
  MPoly r = resultant(P("y^2 - x"), P("y - 1"), Sym::y);
  CHECK(r == P("1 - x"));
}

TEST_CASE("resultant specialization equals dense Sylvester determinant") {
  std::mt19937_64 rng(20240901);
  for (int iter = 0; iter < 100; ++iter) {
    MPoly p = oracles::random_poly(rng, {Sym::x, Sym::y}, 3, 3);
    MPoly q = oracles::random_poly(rng, {Sym::x, Sym::y}, 3, 3);
    if (p.degree(Sym::y) == 0 || q.degree(Sym::y) == 0) continue;
    MPoly res = resultant(p, q, Sym::y);
    Rat a(static_cast<long>(rng() % 41) - 20, static_cast<long>(rng() % 7) + 1);
    std::map<Sym, Rat> at{{Sym::x, a}};
    Rat lhs = res.is_zero() ? Rat(0) : res.eval(at);
    // specializing x first must give the same Sylvester determinant as long
    // as the leading y-coefficients do not drop
    MPoly ps = p.substitute(Sym::x, MPoly(a));
    MPoly qs = q.substitute(Sym::x, MPoly(a));
    if (ps.degree(Sym::y) != p.degree(Sym::y) ||
        qs.degree(Sym::y) != q.degree(Sym::y))
      continue;
    Rat rhs = oracles::sylvester_det_rat(ps, qs, Sym::y);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("resultant vanishes exactly on common factors") {
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 40; ++iter) {
    MPoly f = oracles::random_poly(rng, {Sym::x, Sym::y}, 2, 2);
    MPoly g = oracles::random_poly(rng, {Sym::x, Sym::y}, 2, 2);
    MPoly h = oracles::random_poly(rng, {Sym::x, Sym::y}, 1, 2);
    if (f.degree(Sym::y) == 0 || g.degree(Sym::y) == 0 || h.degree(Sym::y) == 0)
      continue;
    CHECK(resultant(f * h, g * h, Sym::y).is_zero());
    MPoly r = resultant(f, g, Sym::y);
    bool coprime = gcd_poly(f, g, Sym::y).degree(Sym::y) == 0;
    CHECK(r.is_zero() != coprime);
  }
}

TEST_CASE("subresultant resultant agrees with Bareiss") {
  std::mt19937_64 rng(123);
  for (int iter = 0; iter < 60; ++iter) {
    MPoly p = oracles::random_poly(rng, {Sym::x, Sym::y, Sym::s}, 3, 2);
    MPoly q = oracles::random_poly(rng, {Sym::x, Sym::y, Sym::s}, 2, 2);
    if (p.degree(Sym::y) == 0 || q.degree(Sym::y) == 0) continue;
    CHECK(resultant(p, q, Sym::y) == resultant_bareiss(p, q, Sym::y));
  }
}

TEST_CASE("primitive part") {
  // p as a polynomial in t: the coefficient gcd x^2 + x is the content
  CHECK(primitive_part(P("t*x^2 + t*x"), Sym::t) == P("t"));
  CHECK(content_in(P("t*x^2 + t*x"), Sym::t) == P("x^2 + x"));
  CHECK(primitive_part(P("x^2 + x + 1"), Sym::x) == P("x^2 + x + 1"));
  CHECK_THROWS_AS(primitive_part(MPoly(), Sym::x), ArgumentError);
  // content * primitive part reconstructs the input
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 30; ++iter) {
    MPoly a = oracles::random_poly(rng, {Sym::x, Sym::t}, 3, 2);
    if (a.is_zero()) continue;
    CHECK(content_in(a, Sym::t) * primitive_part(a, Sym::t) == a);
  }
}

TEST_CASE("gcd and squarefree decomposition") {
  MPoly g = gcd_poly(P("(x - 1)^2"), MPoly(), Sym::x);
  CHECK(gcd_poly(P("x^2 - 2*x + 1") * P("x + 2"), P("x^2 + 2*x - 3"), Sym::x) ==
        P("x - 1"));
  auto sq = squarefree_decomposition(P("x^3"), Sym::x);
  REQUIRE(sq.size() == 1);
  CHECK(sq[0].first == P("x"));
  CHECK(sq[0].second == 3);

  std::mt19937_64 rng(9);
  for (int iter = 0; iter < 25; ++iter) {
    MPoly a = oracles::random_poly(rng, {Sym::x, Sym::s}, 2, 1);
    MPoly b = oracles::random_poly(rng, {Sym::x, Sym::s}, 2, 1);
    if (a.degree(Sym::x) == 0 || b.degree(Sym::x) == 0) continue;
    MPoly p = a * a * b;
    auto dec = squarefree_decomposition(p, Sym::x);
    MPoly rebuilt(1);
    for (auto& [f, e] : dec) rebuilt *= f.pow(e);
    // equal up to a unit of the coefficient ring (rational multiple)
    CHECK(primitive_part(rebuilt, Sym::x).cmp(primitive_part(p, Sym::x)) == 0);
  }
}

TEST_CASE("exact_div of a product is the identity") {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 50; ++iter) {
    MPoly a = oracles::random_poly(rng, {Sym::x, Sym::y, Sym::z}, 2, 2);
    MPoly b = oracles::random_poly(rng, {Sym::x, Sym::y, Sym::z}, 2, 2);
    if (b.is_zero()) continue;
    CHECK((a * b).try_exact_div(b).value_or(MPoly(-99999)) == a);
  }
}

TEST_CASE("rational function field") {
  RatFunc f(P("s^2 - 1"), P("s + 1"));
  CHECK(f.num() == P("s - 1"));
  CHECK(f.den() == MPoly(1));
  RatFunc g(P("s"), P("2*s + 2"));
  RatFunc sum = f + g;
  CHECK((sum * (f + g).inv()).is_one());
  CHECK_THROWS_AS(RatFunc(P("s"), MPoly()), EvalError);
}

TEST_CASE("substitution with rational-function values tracks denominators") {
  MPoly p = P("x^2 + y");
  auto rf = substitute_rf(
      p, {{Sym::x, RatFunc(P("1"), P("s"))}, {Sym::y, RatFunc(P("s"))}});
  // 1/s^2 + s = (1 + s^3)/s^2
  CHECK(rf.num() == P("s^3 + 1"));
  CHECK(rf.den() == P("s^2"));
}

TEST_CASE("triangular gcd with dynamic evaluation splits zero divisors") {
  // modulus alpha^2 - 1; p = X - alpha, q = X - 1
  UPolyF m(std::vector<RatFunc>{RatFunc(Rat(-1)), RatFunc(), RatFunc(Rat(1))});
  APoly p{AlgElem(std::vector<RatFunc>{RatFunc(), RatFunc(Rat(-1))}),
          AlgElem(RatFunc(Rat(1)))};  // X - alpha
  APoly q{AlgElem(RatFunc(Rat(-1))), AlgElem(RatFunc(Rat(1)))};  // X - 1
  auto branches = d5_gcd(p, q, m);
  REQUIRE(branches.size() == 2);
  // product of split moduli reconstructs the modulus
  UPolyF prod = branches[0].modulus * branches[1].modulus;
  CHECK(prod.monic() == m.monic());
  for (auto& br : branches) {
    if (ap_degree(br.value) == 1) {
      // branch alpha = 1: gcd is X - 1
      CHECK(br.modulus.degree() == 1);
      CHECK(br.value[0][0] == RatFunc(Rat(-1)));
    } else {
      // coprime branch: gcd = 1
      CHECK(ap_degree(br.value) == 0);
    }
  }
}

TEST_CASE("triangular gcd of equal polynomials over an irreducible modulus") {
  // alpha^2 - s is irreducible over Q(s)
  UPolyF m(std::vector<RatFunc>{RatFunc(P("-s")), RatFunc(), RatFunc(Rat(1))});
  APoly p{AlgElem(std::vector<RatFunc>{RatFunc(), RatFunc(Rat(1))}),
          AlgElem(RatFunc(Rat(2)))};  // 2X + alpha
  auto branches = d5_gcd(p, p, m);
  REQUIRE(branches.size() == 1);
  CHECK(ap_degree(branches[0].value) == 1);
  CHECK(branches[0].value.back()[0] == RatFunc(Rat(1)));  // monic
}

TEST_CASE("D5 split moduli multiply back and gcd divides both inputs") {
  std::mt19937_64 rng(1234);
  for (int iter = 0; iter < 20; ++iter) {
    // random modulus with a few rational roots mixed in
    MPoly mz = P("alpha - 1") * P("alpha + 1") * P("alpha^2 + 1");
    UPolyF m = UPolyF::from_mpoly(mz, Sym::alpha).monic();
    MPoly pz = oracles::random_poly(rng, {Sym::X, Sym::alpha}, 2, 1);
    MPoly qz = oracles::random_poly(rng, {Sym::X, Sym::alpha}, 2, 1);
    if (pz.is_zero() || qz.is_zero()) continue;
    auto to_apoly = [&](const MPoly& f) {
      APoly out;
      for (auto& c : f.coeffs_in(Sym::X))
        out.push_back(UPolyF::from_mpoly(c, Sym::alpha));
      return out;
    };
    auto branches = d5_gcd(to_apoly(pz), to_apoly(qz), m);
    UPolyF prod(RatFunc(Rat(1)));
    for (auto& br : branches) prod = prod * br.modulus;
    CHECK(prod.monic() == m);
  }
}
