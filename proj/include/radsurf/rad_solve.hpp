#pragma once

#include <vector>

#include "radsurf/rad_eval.hpp"
#include "radsurf/radex.hpp"

namespace radsurf {

namespace detail {

inline Rx rx_two_a_inv(const Rx& a) { return rx_inv(rx_mul({rx_int(2), a})); }

// (-b + sigma*sq) / (2a)
inline Rx quad_root(const Rx& a, const Rx& b, const Rx& sq, bool plus) {
  Rx num = rx_add({rx_neg(b), plus ? sq : rx_neg(sq)});
  return rad_simplify(rx_mul({num, rx_two_a_inv(a)}));
}

}  // namespace detail

// Quadratic a*x^2 + b*x + c with radical-expression coefficients. One square
// root node is introduced; the second root reuses it negated so the pair
// shares a single tower step.
inline std::vector<Rx> solve_quadratic_rx(const Rx& a, const Rx& b, const Rx& c) {
  Rx disc = rad_simplify(
      rx_sub(rx_mul({b, b}), rx_mul({rx_int(4), a, c})));
  Rx sq = rad_simplify(rx_root(disc, 2, 0));
  return {detail::quad_root(a, b, sq, true), detail::quad_root(a, b, sq, false)};
}

// Cubic: Cardano on the depressed form y^3 + p y + q. The three roots are the
// three branches of one cube-root node u, each paired with -p/(3u), so the
// defining identity u * (-p/(3u)) = -p/3 holds on every branch.
inline std::vector<Rx> solve_cubic_rx(const Rx& a, const Rx& b, const Rx& c,
                                      const Rx& d) {
  Rx a_inv = rx_inv(a);
  Rx shift = rad_simplify(rx_neg(rx_mul({b, rx_inv(rx_mul({rx_int(3), a}))})));
  // p = (3ac - b^2) / (3a^2), q = (2b^3 - 9abc + 27 a^2 d) / (27 a^3)
  Rx p = rad_simplify(rx_mul({rx_sub(rx_mul({rx_int(3), a, c}), rx_mul({b, b})),
                              rx_inv(rx_mul({rx_int(3), a, a}))}));
  Rx q = rad_simplify(rx_mul(
      {rx_add({rx_mul({rx_int(2), b, b, b}),
               rx_neg(rx_mul({rx_int(9), a, b, c})),
               rx_mul({rx_int(27), a, a, d})}),
       rx_inv(rx_mul({rx_int(27), a, a, a}))}));

  std::vector<Rx> roots;
  if (rx_is_zero(p)) {
    Rx minus_q = rad_simplify(rx_neg(q));
    for (unsigned j = 0; j < 3; ++j) {
      Rx y = rad_simplify(rx_root(minus_q, 3, j));
      roots.push_back(rad_simplify(rx_add({y, shift})));
    }
    return roots;
  }
  // D = q^2/4 + p^3/27
  Rx D = rad_simplify(rx_add(
      {rx_mul({q, q, rx_inv(rx_int(4))}),
       rx_mul({p, p, p, rx_inv(rx_int(27))})}));
  Rx sq = rad_simplify(rx_root(D, 2, 0));
  Rx C = rad_simplify(rx_add({rx_neg(rx_mul({q, rx_inv(rx_int(2))})), sq}));
  for (unsigned j = 0; j < 3; ++j) {
    Rx u = rx_root(C, 3, j);
    Rx y = rx_sub(u, rx_mul({p, rx_inv(rx_mul({rx_int(3), u}))}));
    roots.push_back(rad_simplify(rx_add({y, shift})));
  }
  return roots;
}

// Quartic: Ferrari via the resolvent cubic 8m^3 + 8pm^2 + (2p^2-8r)m - q^2.
inline std::vector<Rx> solve_quartic_rx(const Rx& a, const Rx& b, const Rx& c,
                                        const Rx& d, const Rx& e) {
  Rx shift = rad_simplify(rx_neg(rx_mul({b, rx_inv(rx_mul({rx_int(4), a}))})));
  // depressed y^4 + p y^2 + q y + r
  Rx a2 = rx_mul({a, a});
  Rx p = rad_simplify(rx_mul(
      {rx_sub(rx_mul({rx_int(8), a, c}), rx_mul({rx_int(3), b, b})),
       rx_inv(rx_mul({rx_int(8), a2}))}));
  Rx q = rad_simplify(rx_mul(
      {rx_add({rx_mul({b, b, b}), rx_neg(rx_mul({rx_int(4), a, b, c})),
               rx_mul({rx_int(8), a2, d})}),
       rx_inv(rx_mul({rx_int(8), a2, a}))}));
  Rx r = rad_simplify(rx_mul(
      {rx_add({rx_neg(rx_mul({rx_int(3), b, b, b, b})),
               rx_mul({rx_int(256), a2, a, e}),
               rx_neg(rx_mul({rx_int(64), a2, b, d})),
               rx_mul({rx_int(16), a, b, b, c})}),
       rx_inv(rx_mul({rx_int(256), a2, a2}))}));

  std::vector<Rx> roots;
  if (rx_is_zero(q)) {
    // biquadratic: z^2 + p z + r, y = +-sqrt(z)
    auto zs = solve_quadratic_rx(rx_int(1), p, r);
    for (auto& z : zs) {
      Rx sq = rad_simplify(rx_root(z, 2, 0));
      roots.push_back(rad_simplify(rx_add({sq, shift})));
      roots.push_back(rad_simplify(rx_add({rx_neg(sq), shift})));
    }
    return roots;
  }
  // resolvent cubic; take its first root
  Rx m = solve_cubic_rx(
      rx_int(8), rx_mul({rx_int(8), p}),
      rad_simplify(rx_sub(rx_mul({rx_int(2), p, p}), rx_mul({rx_int(8), r}))),
      rad_simplify(rx_neg(rx_mul({q, q}))))[0];
  Rx alpha = rad_simplify(rx_root(rx_mul({rx_int(2), m}), 2, 0));
  Rx beta = rad_simplify(rx_mul({q, rx_inv(rx_mul({rx_int(2), alpha}))}));
  Rx half_p_m = rx_add({rx_mul({p, rx_inv(rx_int(2))}), m});
  // y^2 - alpha y + (p/2 + m + beta) and y^2 + alpha y + (p/2 + m - beta)
  auto q1 = solve_quadratic_rx(rx_int(1), rx_neg(alpha),
                               rad_simplify(rx_add({half_p_m, beta})));
  auto q2 = solve_quadratic_rx(rx_int(1), alpha,
                               rad_simplify(rx_sub(half_p_m, beta)));
  for (auto& y : q1) roots.push_back(rad_simplify(rx_add({y, shift})));
  for (auto& y : q2) roots.push_back(rad_simplify(rx_add({y, shift})));
  return roots;
}

// Roots of a univariate polynomial of degree 1..4 given by radical-expression
// coefficients, ascending order (coeffs[k] multiplies x^k). Exactly deg roots
// are returned, in a deterministic order.
inline std::vector<Rx> solve_by_radicals(std::vector<Rx> coeffs) {
  // trim syntactic-zero leads
  while (!coeffs.empty() && rx_is_zero(rad_simplify(coeffs.back())))
    coeffs.pop_back();
  if (coeffs.size() <= 1) throw DegreeError("degree 0 polynomial");
  if (coeffs.size() > 5) throw DegreeError("degree > 4 polynomial");
  for (auto& c : coeffs) c = rad_simplify(c);

  // a leading coefficient that merely evaluates to zero is not trustworthy
  const Rx& lead = coeffs.back();
  if (!rx_is_const(lead)) {
    bool maybe_zero = true;
    std::uint64_t probe = 0x243F6A8885A308D3ULL;
    for (int trial = 0; trial < 3 && maybe_zero; ++trial) {
      std::map<Sym, Rat> pt;
      for (std::size_t i = 0; i < kSymCount; ++i) {
        probe = probe * 6364136223846793005ULL + 1442695040888963407ULL;
        pt[static_cast<Sym>(i)] =
            Rat(static_cast<long>(probe % 2001) - 1000, 997);
      }
      try {
        CBall v = rad_eval_at(lead, pt, 512);
        if (v.excludes_zero()) maybe_zero = false;
      } catch (const PrecisionError&) {
        // undecidable sample; keep probing
      } catch (const EvalError&) {
        maybe_zero = false;  // unbound symbols: treat as formal nonzero
      }
    }
    if (maybe_zero)
      throw AmbiguousLeadingCoefficient("leading coefficient numerically zero");
  }

  switch (coeffs.size()) {
    case 2:
      return {rad_simplify(rx_neg(rx_mul({coeffs[0], rx_inv(coeffs[1])})))};
    case 3:
      return solve_quadratic_rx(coeffs[2], coeffs[1], coeffs[0]);
    case 4:
      return solve_cubic_rx(coeffs[3], coeffs[2], coeffs[1], coeffs[0]);
    default:
      return solve_quartic_rx(coeffs[4], coeffs[3], coeffs[2], coeffs[1],
                              coeffs[0]);
  }
}

// ---------------------------------------------------------------------------
// Exact-coefficient solvers. Coefficients live in the rational-function field
// of the parameters, so the structural degeneracies (vanishing depressed
// terms, exact zero discriminants) are decided exactly, not syntactically.
// ---------------------------------------------------------------------------

namespace detail {

inline Rx rf_rx(const RatFunc& f) { return rx_from_ratfunc(f); }

inline std::vector<Rx> quad_roots_exact(const RatFunc& a, const RatFunc& b,
                                        const RatFunc& c) {
  if (b.is_zero()) {
    Rx sq = rad_simplify(rx_root(rf_rx(-(c / a)), 2, 0));
    return {sq, rad_simplify(rx_neg(sq))};
  }
  RatFunc disc = b * b - RatFunc(Rat(4)) * a * c;
  Rx sq = rad_simplify(rx_root(rf_rx(disc), 2, 0));
  RatFunc inv2a = (RatFunc(Rat(2)) * a).inv();
  Rx r1 = rad_simplify(rx_mul({rx_add({rf_rx(-b), sq}), rf_rx(inv2a)}));
  Rx r2 = rad_simplify(rx_mul({rx_add({rf_rx(-b), rx_neg(sq)}), rf_rx(inv2a)}));
  return {r1, r2};
}

inline std::vector<Rx> cubic_roots_exact(const RatFunc& a, const RatFunc& b,
                                         const RatFunc& c, const RatFunc& d) {
  RatFunc three(Rat(3));
  RatFunc shift = -(b / (three * a));
  RatFunc p = (three * a * c - b * b) / (three * a * a);
  RatFunc q = (RatFunc(Rat(2)) * b * b * b - RatFunc(Rat(9)) * a * b * c +
               RatFunc(Rat(27)) * a * a * d) /
              (RatFunc(Rat(27)) * a * a * a);
  Rx shift_rx = rad_simplify(rf_rx(shift));
  std::vector<Rx> roots;
  if (p.is_zero()) {
    if (q.is_zero()) return {shift_rx, shift_rx, shift_rx};
    Rx minus_q = rf_rx(-q);
    for (unsigned j = 0; j < 3; ++j)
      roots.push_back(rad_simplify(rx_add({rx_root(minus_q, 3, j), shift_rx})));
    return roots;
  }
  if (q.is_zero()) {
    // y (y^2 + p): one rational root, one shared square root
    roots.push_back(shift_rx);
    Rx sq = rad_simplify(rx_root(rf_rx(-p), 2, 0));
    roots.push_back(rad_simplify(rx_add({sq, shift_rx})));
    roots.push_back(rad_simplify(rx_add({rx_neg(sq), shift_rx})));
    return roots;
  }
  RatFunc D = q * q / RatFunc(Rat(4)) + p * p * p / RatFunc(Rat(27));
  Rx sq = rad_simplify(rx_root(rf_rx(D), 2, 0));
  Rx C = rad_simplify(rx_add({rf_rx(-(q / RatFunc(Rat(2)))), sq}));
  Rx p_rx = rf_rx(p);
  for (unsigned j = 0; j < 3; ++j) {
    Rx u = rx_root(C, 3, j);
    Rx y = rx_sub(u, rx_mul({p_rx, rx_inv(rx_mul({rx_int(3), u}))}));
    roots.push_back(rad_simplify(rx_add({y, shift_rx})));
  }
  return roots;
}

inline std::vector<Rx> quartic_roots_exact(const RatFunc& a, const RatFunc& b,
                                           const RatFunc& c, const RatFunc& d,
                                           const RatFunc& e) {
  RatFunc a2 = a * a;
  RatFunc shift = -(b / (RatFunc(Rat(4)) * a));
  RatFunc p = (RatFunc(Rat(8)) * a * c - RatFunc(Rat(3)) * b * b) /
              (RatFunc(Rat(8)) * a2);
  RatFunc q = (b * b * b - RatFunc(Rat(4)) * a * b * c + RatFunc(Rat(8)) * a2 * d) /
              (RatFunc(Rat(8)) * a2 * a);
  RatFunc r = (RatFunc(Rat(-3)) * b * b * b * b + RatFunc(Rat(256)) * a2 * a * e -
               RatFunc(Rat(64)) * a2 * b * d + RatFunc(Rat(16)) * a * b * b * c) /
              (RatFunc(Rat(256)) * a2 * a2);
  Rx shift_rx = rf_rx(shift);
  std::vector<Rx> roots;
  if (q.is_zero()) {
    auto zs = quad_roots_exact(RatFunc(Rat(1)), p, r);
    for (auto& z : zs) {
      Rx sq = rad_simplify(rx_root(z, 2, 0));
      roots.push_back(rad_simplify(rx_add({sq, shift_rx})));
      roots.push_back(rad_simplify(rx_add({rx_neg(sq), shift_rx})));
    }
    return roots;
  }
  Rx m = cubic_roots_exact(RatFunc(Rat(8)), RatFunc(Rat(8)) * p,
                           RatFunc(Rat(2)) * p * p - RatFunc(Rat(8)) * r,
                           -(q * q))[0];
  Rx alpha = rad_simplify(rx_root(rad_simplify(rx_mul({rx_int(2), m})), 2, 0));
  Rx beta = rad_simplify(rx_mul({rf_rx(q), rx_inv(rx_mul({rx_int(2), alpha}))}));
  Rx half_p_m = rx_add({rf_rx(p / RatFunc(Rat(2))), m});
  auto q1 = solve_quadratic_rx(rx_int(1), rx_neg(alpha),
                               rad_simplify(rx_add({half_p_m, beta})));
  auto q2 = solve_quadratic_rx(rx_int(1), alpha,
                               rad_simplify(rx_sub(half_p_m, beta)));
  for (auto& y : q1) roots.push_back(rad_simplify(rx_add({y, shift_rx})));
  for (auto& y : q2) roots.push_back(rad_simplify(rx_add({y, shift_rx})));
  return roots;
}

}  // namespace detail

// Roots of a dense univariate polynomial with exact rational-function
// coefficients (ascending). Degree must be 1..4 after trimming.
inline std::vector<Rx> solve_upoly(const UPolyF& poly) {
  if (poly.is_zero() || poly.degree() == 0)
    throw DegreeError("degree 0 polynomial");
  if (poly.degree() > 4) throw DegreeError("degree > 4 polynomial");
  switch (poly.degree()) {
    case 1:
      return {rad_simplify(detail::rf_rx(-(poly[0] / poly[1])))};
    case 2:
      return detail::quad_roots_exact(poly[2], poly[1], poly[0]);
    case 3:
      return detail::cubic_roots_exact(poly[3], poly[2], poly[1], poly[0]);
    default:
      return detail::quartic_roots_exact(poly[4], poly[3], poly[2], poly[1],
                                         poly[0]);
  }
}

// Exact-coefficient entry point: roots of p in var, where the remaining
// variables of p become free symbols of the radical expressions.
inline std::vector<Rx> solve_mpoly(const MPoly& p, Sym var) {
  return solve_upoly(UPolyF::from_mpoly(p, var));
}

}  // namespace radsurf
