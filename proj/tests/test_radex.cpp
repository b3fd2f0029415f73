#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "radsurf/poly_text.hpp"
#include "radsurf/rad_eval.hpp"
#include "radsurf/serialize.hpp"

using namespace radsurf;

// sqrt(1 - t1^2 - t2^2), the z-component of the unit-sphere parametrization
static Rx sphere_z() {
  return rx_root(parse_radex("1 - t1^2 - t2^2"), 2, 0);
}

// R = sqrt(A * sqrt(A*t1*t2)) / A with A = t1^10 + t2^10 + 1, the line-family
// root of the decic with a sixfold origin
static Rx decic_root() {
  Rx A = parse_radex("t1^10 + t2^10 + 1");
  Rx inner = rx_root(rx_mul({A, rx_var(Sym::t1), rx_var(Sym::t2)}), 2, 0);
  return rx_mul({rx_root(rx_mul({A, inner}), 2, 0), rx_inv(A)});
}

static std::map<Sym, Rat> pt(const Rat& a, const Rat& b) {
  return {{Sym::t1, a}, {Sym::t2, b}};
}

TEST_CASE("simplify identities") {
  CHECK(rad_simplify(rx_root(rx_int(1), 5, 0)) == rx_int(1));
  CHECK(rad_simplify(rx_add({rx_var(Sym::x), rx_int(0)})) == rx_var(Sym::x));
  CHECK(rad_simplify(rx_mul({rx_var(Sym::x), rx_int(1)})) == rx_var(Sym::x));
  CHECK(rad_simplify(rx_mul({rx_var(Sym::x), rx_int(0)})) == rx_int(0));
  CHECK(rad_simplify(rx_neg(rx_neg(rx_var(Sym::y)))) == rx_var(Sym::y));
  CHECK(rad_simplify(rx_root(rx_int(4), 2, 0)) == rx_int(2));
  CHECK(rad_simplify(rx_root(rx_int(4), 2, 1)) == rx_int(-2));
  CHECK(rx_is_zero(rad_simplify(rx_add({rx_int(2), rx_int(-2)}))));
  // commutated sums canonicalize equal
  Rx a = rx_add({rx_var(Sym::x), rx_var(Sym::y), rx_int(3)});
  Rx b = rx_add({rx_int(3), rx_var(Sym::y), rx_var(Sym::x)});
  CHECK(rad_simplify(a) == rad_simplify(b));
}

TEST_CASE("simplify preserves evaluation") {
  std::mt19937_64 rng(99);
  std::vector<Rx> corpus = {
      sphere_z(), decic_root(),
      rx_mul({rx_int(3), rx_neg(rx_var(Sym::t1)), rx_inv(rx_int(6))}),
      rx_add({rx_ipow(rx_add({rx_var(Sym::t1), rx_int(1)}), 3),
              rx_neg(rx_root(rx_add({rx_ipow(rx_var(Sym::t2), 2), rx_int(1)}), 3, 0))}),
  };
  for (auto& e : corpus) {
    Rx s = rad_simplify(e);
    for (int i = 0; i < 10; ++i) {
      auto p = pt(oracles::random_rat(rng, 3, 7), oracles::random_rat(rng, 3, 7));
      CBall b1 = rad_eval_at(e, p, 192);
      CBall b2 = rad_eval_at(s, p, 192);
      CBall diff = CBall::sub(b1, b2, 192);
      // enclosures of equal values must overlap around zero difference
      CHECK(diff.contains_zero());
    }
  }
  // the nested decic root admits no safe rewrite: simplification is
  // idempotent on it and both tower steps survive untouched
  Rx canon = rad_simplify(decic_root());
  CHECK(rad_simplify(canon) == canon);
  CHECK(tower_of(canon).size() == 2);
}

TEST_CASE("tower extraction") {
  CHECK(tower_of(parse_radex("1 + t1^2/3")).empty());
  auto tw = tower_of(sphere_z());
  REQUIRE(tw.size() == 1);
  CHECK(tw[0]->k == 2);
  CHECK(rad_simplify(tw[0]->args[0]) ==
        rad_simplify(parse_radex("1 - t1^2 - t2^2")));
  auto tw2 = tower_of(decic_root());
  REQUIRE(tw2.size() == 2);
  CHECK(tw2[0]->k == 2);
  CHECK(tw2[1]->k == 2);
  // idempotent and deduplicating
  CHECK(tower_of(rx_add({decic_root(), decic_root()})).size() == 2);
}

TEST_CASE("evaluation basics") {
  CBall b = rad_eval_at(sphere_z(), pt(Rat(0), Rat(0)), 128);
  CHECK(b.re.contains_zero() == false);
  CBall one = CBall::sub(b, CBall::from_long(1, 128), 128);
  CHECK(one.contains_zero());
  // point on the equator circle: radicand exactly zero
  CBall z = rad_eval_at(sphere_z(), pt(Rat(3, 5), Rat(4, 5)), 128);
  CHECK(z.contains_zero());
}

TEST_CASE("decic parametrization residual vanishes to high precision") {
  // F(R*t1, R*t2, R) with F = x^10 + y^10 + z^10 - x*y*z^4
  MPoly F = parse_poly("x^10 + y^10 + z^10 - x*y*z^4");
  Rx R = decic_root();
  const mpfr_prec_t prec = 256;
  EvalCtx ctx;
  ctx.prec = prec;
  ctx.vars = {{Sym::t1, CBall::from_rat(Rat(1, 3), prec)},
              {Sym::t2, CBall::from_rat(Rat(2, 5), prec)}};
  CBall r = rad_eval(R, ctx);
  std::map<Sym, CBall> xyz{
      {Sym::x, CBall::mul(r, ctx.vars[Sym::t1], prec)},
      {Sym::y, CBall::mul(r, ctx.vars[Sym::t2], prec)},
      {Sym::z, r}};
  CBall res = mpoly_eval_ball(F, xyz, prec);
  CHECK(res.contains_zero());
  CHECK(res.width_below_2exp(-100, prec));
}

TEST_CASE("derivative against central finite differences") {
  // d/dt1 sqrt(1 - t1^2 - t2^2) = -t1 / sqrt(1 - t1^2 - t2^2)
  Rx d = rad_diff(sphere_z(), Sym::t1);
  Rx expect = rad_simplify(
      rx_mul({rx_neg(rx_var(Sym::t1)), rx_inv(sphere_z())}));
  auto p0 = pt(Rat(1, 4), Rat(1, 3));
  CBall b1 = rad_eval_at(rad_simplify(d), p0, 192);
  CBall b2 = rad_eval_at(expect, p0, 192);
  CHECK(CBall::sub(b1, b2, 192).contains_zero());
  CHECK(rx_is_zero(rad_simplify(rad_diff(rx_const(Rat(7, 3)), Sym::t1))));

  // oracle: central difference at high precision
  std::mt19937_64 rng(4242);
  auto fd_check = [&](const Rx& e, const std::map<Sym, Rat>& at, Sym v,
                      mpfr_prec_t prec, double tol) {
    Rat h(1, 1);
    for (int i = 0; i < 6; ++i) h = h * Rat(1, 1024);  // 2^-60
    auto hi = at, lo = at;
    hi[v] += h;
    lo[v] -= h;
    CBall fh = rad_eval_at(e, hi, prec);
    CBall fl = rad_eval_at(e, lo, prec);
    CBall fd = CBall::mul(CBall::sub(fh, fl, prec),
                          CBall::from_rat((h * Rat(2)).inv(), prec), prec);
    CBall dd = rad_eval_at(rad_diff(e, v), at, prec);
    CBall diff = CBall::sub(dd, fd, prec);
    double err = mpfr_get_d(diff.mag(prec).p(), MPFR_RNDU);
    double scale = std::max(1.0, mpfr_get_d(dd.mag(prec).p(), MPFR_RNDU));
    CHECK(err / scale < tol);
  };

  fd_check(decic_root(), pt(Rat(1, 3), Rat(2, 5)), Sym::t1, 256, 1e-20);

  // 50 random (expression, point) pairs away from branch points
  for (int iter = 0; iter < 50; ++iter) {
    MPoly q1 = oracles::random_poly(rng, {Sym::t1, Sym::t2}, 2, 2, 4);
    MPoly q2 = oracles::random_poly(rng, {Sym::t1, Sym::t2}, 2, 2, 4);
    Rx rad = rx_root(rx_add({rx_mul({rx_from_mpoly(q1), rx_from_mpoly(q1)}),
                             rx_int(1 + static_cast<long>(iter % 3))}),
                     2 + iter % 3, 0);
    Rx e = rx_add({rx_from_mpoly(q2), rx_mul({rx_int(2), rad})});
    auto at = pt(oracles::random_rat(rng, 2, 5), oracles::random_rat(rng, 2, 5));
    fd_check(e, at, iter % 2 ? Sym::t1 : Sym::t2, 128, 1e-15);
  }
}

TEST_CASE("tower replay reproduces the evaluation") {
  // evaluating the tower steps bottom-up and substituting their balls gives
  // the same enclosure as direct evaluation
  Rx R = decic_root();
  auto tower = tower_of(R);
  const mpfr_prec_t prec = 192;
  EvalCtx ctx;
  ctx.prec = prec;
  ctx.vars = {{Sym::t1, CBall::from_rat(Rat(2, 7), prec)},
              {Sym::t2, CBall::from_rat(Rat(1, 2), prec)}};
  CBall direct = rad_eval(R, ctx);
  // replay: evaluate each step's radicand, apply the root, compare the last
  for (auto& step : tower) {
    CBall rad = rad_eval(step->args[0], ctx);
    CBall stepval = CBall::root(rad, step->k, step->branch, prec);
    CBall whole = rad_eval(step, ctx);
    CHECK(CBall::sub(stepval, whole, prec).contains_zero());
  }
  CHECK(direct.excludes_zero());
}

TEST_CASE("json round trip is lossless") {
  std::vector<Rx> corpus = {
      rx_int(0), rx_const(Rat(-7, 3)), sphere_z(), decic_root(),
      rx_ipow(rx_add({rx_var(Sym::s), rx_int(1)}), 4),
      rx_neg(rx_inv(rx_var(Sym::t)))};
  for (auto& e : corpus) {
    Json j = rx_to_json(e);
    Rx back = rx_from_json(Json::parse(j.dump()));
    CHECK(back == e);  // interning makes structural equality pointer equality
  }
}

TEST_CASE("text round trip through the radical grammar") {
  std::vector<Rx> corpus = {sphere_z(), decic_root(),
                            rx_add({rx_var(Sym::s), rx_const(Rat(-2, 9))}),
                            rx_mul({rx_int(2), rx_inv(rx_var(Sym::t))})};
  for (auto& e : corpus) {
    Rx back = parse_radex(rx_text(e));
    CHECK(rad_simplify(back) == rad_simplify(e));
  }
}
