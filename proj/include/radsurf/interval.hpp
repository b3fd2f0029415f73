#pragma once

#include <mpfr.h>

#include <algorithm>
#include <climits>
#include <string>
#include <utility>

#include "radsurf/errors.hpp"
#include "radsurf/rat.hpp"

namespace radsurf {

// RAII wrapper over mpfr_t.
class Mpf {
 public:
  explicit Mpf(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mpf(const Mpf& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Mpf(Mpf&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Mpf& operator=(const Mpf& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpf& operator=(Mpf&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpf() { mpfr_clear(v_); }

  mpfr_ptr p() { return v_; }
  mpfr_srcptr p() const { return v_; }

 private:
  mpfr_t v_;
};

// Closed real interval [lo, hi] with directed-rounding endpoints.
struct RInt {
  Mpf lo, hi;

  explicit RInt(mpfr_prec_t prec = 64) : lo(prec), hi(prec) {}

  static void fix_zero(mpfr_ptr x) {
    // normalize -0 to +0 so that atan2 sees the principal side of the cut
    if (mpfr_zero_p(x) && mpfr_signbit(x)) mpfr_set_zero(x, 1);
  }
  void normalize() {
    fix_zero(lo.p());
    fix_zero(hi.p());
  }

  static RInt from_rat(const Rat& r, mpfr_prec_t prec) {
    RInt x(prec);
    mpfr_set_q(x.lo.p(), r.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(x.hi.p(), r.raw().get_mpq_t(), MPFR_RNDU);
    x.normalize();
    return x;
  }
  static RInt from_long(long v, mpfr_prec_t prec) {
    RInt x(prec);
    mpfr_set_si(x.lo.p(), v, MPFR_RNDD);
    mpfr_set_si(x.hi.p(), v, MPFR_RNDU);
    x.normalize();
    return x;
  }
  static RInt exact_zero(mpfr_prec_t prec) { return RInt(prec); }

  bool contains_zero() const {
    return mpfr_sgn(lo.p()) <= 0 && mpfr_sgn(hi.p()) >= 0;
  }
  bool is_exact_zero() const {
    return mpfr_zero_p(lo.p()) && mpfr_zero_p(hi.p());
  }
  bool is_positive() const { return mpfr_sgn(lo.p()) > 0; }
  bool is_negative() const { return mpfr_sgn(hi.p()) < 0; }

  static RInt add(const RInt& a, const RInt& b, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_add(r.lo.p(), a.lo.p(), b.lo.p(), MPFR_RNDD);
    mpfr_add(r.hi.p(), a.hi.p(), b.hi.p(), MPFR_RNDU);
    r.normalize();
    return r;
  }
  static RInt sub(const RInt& a, const RInt& b, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_sub(r.lo.p(), a.lo.p(), b.hi.p(), MPFR_RNDD);
    mpfr_sub(r.hi.p(), a.hi.p(), b.lo.p(), MPFR_RNDU);
    r.normalize();
    return r;
  }
  static RInt neg(const RInt& a, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_neg(r.lo.p(), a.hi.p(), MPFR_RNDD);
    mpfr_neg(r.hi.p(), a.lo.p(), MPFR_RNDU);
    r.normalize();
    return r;
  }
  static RInt mul(const RInt& a, const RInt& b, mpfr_prec_t prec) {
    RInt r(prec);
    Mpf tmp(prec);
    bool first = true;
    auto consider = [&](mpfr_srcptr x, mpfr_srcptr y) {
      mpfr_mul(tmp.p(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(tmp.p(), r.lo.p()) < 0) mpfr_set(r.lo.p(), tmp.p(), MPFR_RNDD);
      mpfr_mul(tmp.p(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(tmp.p(), r.hi.p()) > 0) mpfr_set(r.hi.p(), tmp.p(), MPFR_RNDU);
      first = false;
    };
    consider(a.lo.p(), b.lo.p());
    consider(a.lo.p(), b.hi.p());
    consider(a.hi.p(), b.lo.p());
    consider(a.hi.p(), b.hi.p());
    r.normalize();
    return r;
  }
  // Square as a set image (never negative).
  static RInt square(const RInt& a, mpfr_prec_t prec) {
    RInt r(prec);
    if (a.contains_zero()) {
      mpfr_set_zero(r.lo.p(), 1);
      Mpf m1(prec), m2(prec);
      mpfr_mul(m1.p(), a.lo.p(), a.lo.p(), MPFR_RNDU);
      mpfr_mul(m2.p(), a.hi.p(), a.hi.p(), MPFR_RNDU);
      mpfr_max(r.hi.p(), m1.p(), m2.p(), MPFR_RNDU);
    } else if (a.is_positive()) {
      mpfr_mul(r.lo.p(), a.lo.p(), a.lo.p(), MPFR_RNDD);
      mpfr_mul(r.hi.p(), a.hi.p(), a.hi.p(), MPFR_RNDU);
    } else {
      mpfr_mul(r.lo.p(), a.hi.p(), a.hi.p(), MPFR_RNDD);
      mpfr_mul(r.hi.p(), a.lo.p(), a.lo.p(), MPFR_RNDU);
    }
    r.normalize();
    return r;
  }
  // Reciprocal; requires the interval to exclude zero.
  static RInt recip(const RInt& a, mpfr_prec_t prec) {
    if (a.contains_zero())
      throw PrecisionError("reciprocal of interval containing zero");
    RInt r(prec);
    mpfr_ui_div(r.lo.p(), 1, a.hi.p(), MPFR_RNDD);
    mpfr_ui_div(r.hi.p(), 1, a.lo.p(), MPFR_RNDU);
    r.normalize();
    return r;
  }
  // sqrt of the nonnegative part.
  static RInt sqrt_nonneg(const RInt& a, mpfr_prec_t prec) {
    RInt r(prec);
    if (mpfr_sgn(a.hi.p()) < 0)
      throw PrecisionError("sqrt of a negative interval");
    if (mpfr_sgn(a.lo.p()) <= 0)
      mpfr_set_zero(r.lo.p(), 1);
    else
      mpfr_sqrt(r.lo.p(), a.lo.p(), MPFR_RNDD);
    mpfr_sqrt(r.hi.p(), a.hi.p(), MPFR_RNDU);
    r.normalize();
    return r;
  }
  // k-th root of a nonnegative interval.
  static RInt rootn_nonneg(const RInt& a, unsigned k, mpfr_prec_t prec) {
    RInt r(prec);
    if (mpfr_sgn(a.lo.p()) < 0)
      throw PrecisionError("rootn of a negative interval");
    mpfr_rootn_ui(r.lo.p(), a.lo.p(), k, MPFR_RNDD);
    mpfr_rootn_ui(r.hi.p(), a.hi.p(), k, MPFR_RNDU);
    r.normalize();
    return r;
  }
  static RInt scale_2exp(const RInt& a, long e, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_mul_2si(r.lo.p(), a.lo.p(), e, MPFR_RNDD);
    mpfr_mul_2si(r.hi.p(), a.hi.p(), e, MPFR_RNDU);
    r.normalize();
    return r;
  }
  static RInt div_ui(const RInt& a, unsigned long d, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_div_ui(r.lo.p(), a.lo.p(), d, MPFR_RNDD);
    mpfr_div_ui(r.hi.p(), a.hi.p(), d, MPFR_RNDU);
    r.normalize();
    return r;
  }
  static RInt mul_ui(const RInt& a, unsigned long d, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_mul_ui(r.lo.p(), a.lo.p(), d, MPFR_RNDD);
    mpfr_mul_ui(r.hi.p(), a.hi.p(), d, MPFR_RNDU);
    r.normalize();
    return r;
  }
  static RInt pi(mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_const_pi(r.lo.p(), MPFR_RNDD);
    mpfr_const_pi(r.hi.p(), MPFR_RNDU);
    return r;
  }
  static RInt hull(const RInt& a, const RInt& b, mpfr_prec_t prec) {
    RInt r(prec);
    mpfr_min(r.lo.p(), a.lo.p(), b.lo.p(), MPFR_RNDD);
    mpfr_max(r.hi.p(), a.hi.p(), b.hi.p(), MPFR_RNDU);
    r.normalize();
    return r;
  }

  // Upper bound of |x| over the interval.
  Mpf mag(mpfr_prec_t prec) const {
    Mpf m(prec), a(prec), b(prec);
    mpfr_abs(a.p(), lo.p(), MPFR_RNDU);
    mpfr_abs(b.p(), hi.p(), MPFR_RNDU);
    mpfr_max(m.p(), a.p(), b.p(), MPFR_RNDU);
    return m;
  }
  // Lower bound of |x| over the interval (0 when it straddles zero).
  Mpf mig(mpfr_prec_t prec) const {
    Mpf m(prec);
    if (contains_zero()) {
      mpfr_set_zero(m.p(), 1);
      return m;
    }
    Mpf a(prec), b(prec);
    mpfr_abs(a.p(), lo.p(), MPFR_RNDD);
    mpfr_abs(b.p(), hi.p(), MPFR_RNDD);
    mpfr_min(m.p(), a.p(), b.p(), MPFR_RNDD);
    return m;
  }
  Mpf width(mpfr_prec_t prec) const {
    Mpf w(prec);
    mpfr_sub(w.p(), hi.p(), lo.p(), MPFR_RNDU);
    return w;
  }

  // cosine of the interval image, conservative.
  static RInt cos_int(const RInt& th, mpfr_prec_t prec) {
    RInt r(prec);
    RInt pi_i = pi(prec);
    Mpf w = th.width(prec);
    Mpf two_pi(prec);
    mpfr_mul_ui(two_pi.p(), pi_i.lo.p(), 2, MPFR_RNDD);
    if (!mpfr_number_p(w.p()) || mpfr_cmp(w.p(), two_pi.p()) >= 0) {
      mpfr_set_si(r.lo.p(), -1, MPFR_RNDD);
      mpfr_set_si(r.hi.p(), 1, MPFR_RNDU);
      return r;
    }
    Mpf c1d(prec), c1u(prec), c2d(prec), c2u(prec);
    mpfr_cos(c1d.p(), th.lo.p(), MPFR_RNDD);
    mpfr_cos(c1u.p(), th.lo.p(), MPFR_RNDU);
    mpfr_cos(c2d.p(), th.hi.p(), MPFR_RNDD);
    mpfr_cos(c2u.p(), th.hi.p(), MPFR_RNDU);
    mpfr_min(r.lo.p(), c1d.p(), c2d.p(), MPFR_RNDD);
    mpfr_max(r.hi.p(), c1u.p(), c2u.p(), MPFR_RNDU);
    // account for interior extrema at integer multiples of pi
    Mpf q(prec);
    mpfr_div(q.p(), th.lo.p(), pi_i.hi.p(), MPFR_RNDD);
    long n0 = mpfr_get_si(q.p(), MPFR_RNDD) - 1;
    for (long n = n0; n <= n0 + 4; ++n) {
      // conservative test: does n*pi possibly lie in [lo, hi]?
      Mpf p1(prec), p2(prec), nd(prec), nu(prec);
      mpfr_mul_si(p1.p(), pi_i.lo.p(), n, MPFR_RNDD);
      mpfr_mul_si(p2.p(), pi_i.hi.p(), n, MPFR_RNDD);
      mpfr_min(nd.p(), p1.p(), p2.p(), MPFR_RNDD);
      mpfr_mul_si(p1.p(), pi_i.lo.p(), n, MPFR_RNDU);
      mpfr_mul_si(p2.p(), pi_i.hi.p(), n, MPFR_RNDU);
      mpfr_max(nu.p(), p1.p(), p2.p(), MPFR_RNDU);
      bool maybe_inside = mpfr_cmp(nu.p(), th.lo.p()) >= 0 &&
                          mpfr_cmp(nd.p(), th.hi.p()) <= 0;
      if (!maybe_inside) continue;
      if ((n % 2 + 2) % 2 == 0)
        mpfr_set_si(r.hi.p(), 1, MPFR_RNDU);
      else
        mpfr_set_si(r.lo.p(), -1, MPFR_RNDD);
    }
    r.normalize();
    return r;
  }
  static RInt sin_int(const RInt& th, mpfr_prec_t prec) {
    RInt r(prec);
    RInt pi_i = pi(prec);
    Mpf w = th.width(prec);
    Mpf two_pi(prec);
    mpfr_mul_ui(two_pi.p(), pi_i.lo.p(), 2, MPFR_RNDD);
    if (!mpfr_number_p(w.p()) || mpfr_cmp(w.p(), two_pi.p()) >= 0) {
      mpfr_set_si(r.lo.p(), -1, MPFR_RNDD);
      mpfr_set_si(r.hi.p(), 1, MPFR_RNDU);
      return r;
    }
    Mpf s1d(prec), s1u(prec), s2d(prec), s2u(prec);
    mpfr_sin(s1d.p(), th.lo.p(), MPFR_RNDD);
    mpfr_sin(s1u.p(), th.lo.p(), MPFR_RNDU);
    mpfr_sin(s2d.p(), th.hi.p(), MPFR_RNDD);
    mpfr_sin(s2u.p(), th.hi.p(), MPFR_RNDU);
    mpfr_min(r.lo.p(), s1d.p(), s2d.p(), MPFR_RNDD);
    mpfr_max(r.hi.p(), s1u.p(), s2u.p(), MPFR_RNDU);
    // interior extrema at (n + 1/2) * pi
    Mpf q(prec);
    mpfr_div(q.p(), th.lo.p(), pi_i.hi.p(), MPFR_RNDD);
    long n0 = mpfr_get_si(q.p(), MPFR_RNDD) - 2;
    for (long n = n0; n <= n0 + 5; ++n) {
      Mpf p1(prec), p2(prec), nd(prec), nu(prec);
      // (2n+1)*pi/2 with both roundings
      mpfr_mul_si(p1.p(), pi_i.lo.p(), 2 * n + 1, MPFR_RNDD);
      mpfr_mul_si(p2.p(), pi_i.hi.p(), 2 * n + 1, MPFR_RNDD);
      mpfr_min(nd.p(), p1.p(), p2.p(), MPFR_RNDD);
      mpfr_div_ui(nd.p(), nd.p(), 2, MPFR_RNDD);
      mpfr_mul_si(p1.p(), pi_i.lo.p(), 2 * n + 1, MPFR_RNDU);
      mpfr_mul_si(p2.p(), pi_i.hi.p(), 2 * n + 1, MPFR_RNDU);
      mpfr_max(nu.p(), p1.p(), p2.p(), MPFR_RNDU);
      mpfr_div_ui(nu.p(), nu.p(), 2, MPFR_RNDU);
      bool maybe_inside = mpfr_cmp(nu.p(), th.lo.p()) >= 0 &&
                          mpfr_cmp(nd.p(), th.hi.p()) <= 0;
      if (!maybe_inside) continue;
      if (((n % 2) + 2) % 2 == 0)
        mpfr_set_si(r.hi.p(), 1, MPFR_RNDU);
      else
        mpfr_set_si(r.lo.p(), -1, MPFR_RNDD);
    }
    r.normalize();
    return r;
  }
};

// Axis-aligned complex rectangle; the certified container for radical values.
struct CBall {
  RInt re, im;

  explicit CBall(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  CBall(RInt r, RInt i) : re(std::move(r)), im(std::move(i)) {}

  static CBall from_rat(const Rat& r, mpfr_prec_t prec) {
    return CBall(RInt::from_rat(r, prec), RInt::exact_zero(prec));
  }
  static CBall from_long(long v, mpfr_prec_t prec) {
    return CBall(RInt::from_long(v, prec), RInt::exact_zero(prec));
  }

  bool contains_zero() const {
    return re.contains_zero() && im.contains_zero();
  }
  bool excludes_zero() const { return !contains_zero(); }
  bool is_exact_zero() const { return re.is_exact_zero() && im.is_exact_zero(); }

  static CBall add(const CBall& a, const CBall& b, mpfr_prec_t prec) {
    return CBall(RInt::add(a.re, b.re, prec), RInt::add(a.im, b.im, prec));
  }
  static CBall sub(const CBall& a, const CBall& b, mpfr_prec_t prec) {
    return CBall(RInt::sub(a.re, b.re, prec), RInt::sub(a.im, b.im, prec));
  }
  static CBall neg(const CBall& a, mpfr_prec_t prec) {
    return CBall(RInt::neg(a.re, prec), RInt::neg(a.im, prec));
  }
  static CBall mul(const CBall& a, const CBall& b, mpfr_prec_t prec) {
    RInt ac = RInt::mul(a.re, b.re, prec);
    RInt bd = RInt::mul(a.im, b.im, prec);
    RInt ad = RInt::mul(a.re, b.im, prec);
    RInt bc = RInt::mul(a.im, b.re, prec);
    return CBall(RInt::sub(ac, bd, prec), RInt::add(ad, bc, prec));
  }
  static CBall inv(const CBall& a, mpfr_prec_t prec) {
    RInt n2 = RInt::add(RInt::square(a.re, prec), RInt::square(a.im, prec), prec);
    if (n2.contains_zero())
      throw PrecisionError("inverse of a ball containing zero");
    RInt r = RInt::recip(n2, prec);
    return CBall(RInt::mul(a.re, r, prec),
                 RInt::mul(RInt::neg(a.im, prec), r, prec));
  }
  static CBall div(const CBall& a, const CBall& b, mpfr_prec_t prec) {
    return mul(a, inv(b, prec), prec);
  }
  static CBall ipow(const CBall& a, unsigned long n, mpfr_prec_t prec) {
    CBall r = from_long(1, prec), base = a;
    while (n) {
      if (n & 1) r = mul(r, base, prec);
      n >>= 1;
      if (n) base = mul(base, base, prec);
    }
    return r;
  }

  Mpf mag(mpfr_prec_t prec) const {
    RInt n2 = RInt::add(RInt::square(re, prec), RInt::square(im, prec), prec);
    Mpf m(prec);
    mpfr_sqrt(m.p(), n2.hi.p(), MPFR_RNDU);
    return m;
  }
  // Certified lower bound of |z|; zero when the rectangle may contain zero.
  Mpf mig(mpfr_prec_t prec) const {
    Mpf mr = re.mig(prec), mi = im.mig(prec);
    Mpf a(prec), b(prec), out(prec);
    mpfr_mul(a.p(), mr.p(), mr.p(), MPFR_RNDD);
    mpfr_mul(b.p(), mi.p(), mi.p(), MPFR_RNDD);
    mpfr_add(a.p(), a.p(), b.p(), MPFR_RNDD);
    mpfr_sqrt(out.p(), a.p(), MPFR_RNDD);
    return out;
  }
  Mpf width(mpfr_prec_t prec) const {
    Mpf wr = re.width(prec), wi = im.width(prec), out(prec);
    mpfr_max(out.p(), wr.p(), wi.p(), MPFR_RNDU);
    return out;
  }
  // Smallest e with width <= 2^e; INT_MIN for exact points.
  long width_log2(mpfr_prec_t prec) const {
    Mpf w = width(prec);
    if (mpfr_zero_p(w.p())) return LONG_MIN;
    return static_cast<long>(mpfr_get_exp(w.p()));
  }
  bool width_below_2exp(long e, mpfr_prec_t prec) const {
    Mpf w = width(prec);
    Mpf bound(prec);
    mpfr_set_ui_2exp(bound.p(), 1, e, MPFR_RNDN);
    return mpfr_cmp(w.p(), bound.p()) < 0;
  }

  // Principal k-th root times exp(2*pi*i*branch/k), as a certified enclosure.
  static CBall root(const CBall& z, unsigned k, unsigned branch,
                    mpfr_prec_t prec) {
    RInt abs2 = RInt::add(RInt::square(z.re, prec), RInt::square(z.im, prec), prec);
    RInt mod = RInt::sqrt_nonneg(abs2, prec);
    bool meets_cut_from_below = mpfr_sgn(z.re.lo.p()) < 0 &&
                                mpfr_sgn(z.im.lo.p()) < 0 &&
                                mpfr_sgn(z.im.hi.p()) >= 0;
    if (z.contains_zero() || meets_cut_from_below) {
      // cover all k-th roots of everything in the rectangle; the principal
      // branch is discontinuous across the negative real axis, so corner
      // argument bounds would be invalid there
      RInt rt = RInt::rootn_nonneg(RInt::hull(mod, RInt::exact_zero(prec), prec), k, prec);
      RInt sym(prec);
      mpfr_neg(sym.lo.p(), rt.hi.p(), MPFR_RNDD);
      mpfr_set(sym.hi.p(), rt.hi.p(), MPFR_RNDU);
      sym.normalize();
      return CBall(sym, sym);
    }
    // argument range over the rectangle from its corners (conservative and
    // valid also across the cut; see note in the tests)
    RInt th(prec);
    bool first = true;
    Mpf tmpd(prec), tmpu(prec);
    auto corner = [&](mpfr_srcptr yy, mpfr_srcptr xx) {
      mpfr_atan2(tmpd.p(), yy, xx, MPFR_RNDD);
      mpfr_atan2(tmpu.p(), yy, xx, MPFR_RNDU);
      if (first || mpfr_cmp(tmpd.p(), th.lo.p()) < 0)
        mpfr_set(th.lo.p(), tmpd.p(), MPFR_RNDD);
      if (first || mpfr_cmp(tmpu.p(), th.hi.p()) > 0)
        mpfr_set(th.hi.p(), tmpu.p(), MPFR_RNDU);
      first = false;
    };
    corner(z.im.lo.p(), z.re.lo.p());
    corner(z.im.lo.p(), z.re.hi.p());
    corner(z.im.hi.p(), z.re.lo.p());
    corner(z.im.hi.p(), z.re.hi.p());

    RInt pi_i = RInt::pi(prec);
    RInt shift = RInt::mul_ui(pi_i, 2ul * branch, prec);
    RInt phi = RInt::div_ui(RInt::add(th, shift, prec), k, prec);
    RInt rk = RInt::rootn_nonneg(mod, k, prec);
    RInt c = RInt::cos_int(phi, prec);
    RInt s = RInt::sin_int(phi, prec);
    return CBall(RInt::mul(rk, c, prec), RInt::mul(rk, s, prec));
  }

  std::string str() const {
    auto fmt = [](mpfr_srcptr x) {
      char* s = nullptr;
      mpfr_asprintf(&s, "%.8Rg", x);
      std::string out(s);
      mpfr_free_str(s);
      return out;
    };
    return "[" + fmt(re.lo.p()) + "," + fmt(re.hi.p()) + "] + [" +
           fmt(im.lo.p()) + "," + fmt(im.hi.p()) + "]*i";
  }
};

}  // namespace radsurf
