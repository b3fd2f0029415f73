#pragma once

#include <map>
#include <set>
#include <unordered_map>

#include "radsurf/interval.hpp"
#include "radsurf/radex.hpp"

namespace radsurf {

// Per-root evaluation choice: which branch to take and, optionally, which
// side of the real axis the radicand's true value is asserted to lie on.
// Side assumptions resolve the enclosure ambiguity of radicands that are
// exactly real negative but carry rounding fuzz in their imaginary part:
// clamping to a closed half-plane is sound under the assumption, the two
// assumptions are exhaustive, and flipping the side of every radicand
// amounts to conjugating the whole tower, i.e. to another branch assignment.
struct BranchChoice {
  unsigned branch = 0;
  int side = 0;  // 0: none, +1: Im >= 0, -1: Im <= 0
};

// Overrides of per-root choices, keyed by interned node identity.
using BranchOverride = std::map<const RxNode*, BranchChoice>;

struct EvalCtx {
  std::map<Sym, CBall> vars;
  const BranchOverride* overrides = nullptr;
  mpfr_prec_t prec = 128;
  // when set, root nodes whose radicand rectangle straddles the branch cut
  // (or contains zero) are recorded here during evaluation
  std::set<const RxNode*>* cut_straddles = nullptr;
};

namespace detail {

inline CBall rad_eval_rec(const Rx& e, const EvalCtx& ctx,
                          std::unordered_map<const RxNode*, CBall>& memo) {
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;
  CBall out(ctx.prec);
  switch (e->kind) {
    case RxKind::Const:
      out = CBall::from_rat(e->value, ctx.prec);
      break;
    case RxKind::Var: {
      auto v = ctx.vars.find(e->var);
      if (v == ctx.vars.end())
        throw EvalError("unbound variable " + std::string(name_of(e->var)));
      out = v->second;
      break;
    }
    case RxKind::Add: {
      out = CBall::from_long(0, ctx.prec);
      for (auto& a : e->args)
        out = CBall::add(out, rad_eval_rec(a, ctx, memo), ctx.prec);
      break;
    }
    case RxKind::Mul: {
      out = CBall::from_long(1, ctx.prec);
      for (auto& a : e->args)
        out = CBall::mul(out, rad_eval_rec(a, ctx, memo), ctx.prec);
      break;
    }
    case RxKind::Neg:
      out = CBall::neg(rad_eval_rec(e->args[0], ctx, memo), ctx.prec);
      break;
    case RxKind::Inv:
      out = CBall::inv(rad_eval_rec(e->args[0], ctx, memo), ctx.prec);
      break;
    case RxKind::IPow:
      out = CBall::ipow(rad_eval_rec(e->args[0], ctx, memo), e->n, ctx.prec);
      break;
    case RxKind::Root: {
      unsigned b = e->branch;
      int side = 0;
      if (ctx.overrides) {
        auto o = ctx.overrides->find(e.get());
        if (o != ctx.overrides->end()) {
          b = o->second.branch;
          side = o->second.side;
        }
      }
      CBall rad = rad_eval_rec(e->args[0], ctx, memo);
      if (side != 0) {
        // clamp to the asserted closed half-plane
        RInt im(ctx.prec);
        if (side > 0) {
          if (mpfr_sgn(rad.im.hi.p()) < 0)
            throw PrecisionError("side assumption incompatible with enclosure");
          mpfr_set(im.hi.p(), rad.im.hi.p(), MPFR_RNDU);
          if (mpfr_sgn(rad.im.lo.p()) > 0)
            mpfr_set(im.lo.p(), rad.im.lo.p(), MPFR_RNDD);
        } else {
          if (mpfr_sgn(rad.im.lo.p()) > 0)
            throw PrecisionError("side assumption incompatible with enclosure");
          mpfr_set(im.lo.p(), rad.im.lo.p(), MPFR_RNDD);
          if (mpfr_sgn(rad.im.hi.p()) < 0)
            mpfr_set(im.hi.p(), rad.im.hi.p(), MPFR_RNDU);
        }
        im.normalize();
        rad = CBall(rad.re, im);
      }
      if (ctx.cut_straddles) {
        bool cz = rad.contains_zero();
        bool straddle = mpfr_sgn(rad.re.lo.p()) < 0 &&
                        mpfr_sgn(rad.im.lo.p()) < 0 &&
                        mpfr_sgn(rad.im.hi.p()) >= 0;
        if (cz || straddle) ctx.cut_straddles->insert(e.get());
      }
      out = CBall::root(rad, e->k, b, ctx.prec);
      break;
    }
  }
  memo.emplace(e.get(), out);
  return out;
}

}  // namespace detail

inline CBall rad_eval(const Rx& e, const EvalCtx& ctx) {
  std::unordered_map<const RxNode*, CBall> memo;
  return detail::rad_eval_rec(e, ctx, memo);
}

inline CBall rad_eval(const Rx& e, const std::map<Sym, CBall>& assignment,
                      mpfr_prec_t prec) {
  EvalCtx ctx{assignment, nullptr, prec};
  return rad_eval(e, ctx);
}

inline CBall rad_eval_at(const Rx& e, const std::map<Sym, Rat>& point,
                         mpfr_prec_t prec,
                         const BranchOverride* overrides = nullptr) {
  EvalCtx ctx;
  ctx.prec = prec;
  ctx.overrides = overrides;
  for (auto& [v, r] : point) ctx.vars.emplace(v, CBall::from_rat(r, prec));
  return rad_eval(e, ctx);
}

// Shared-memo evaluation of several expressions under one context.
inline std::vector<CBall> rad_eval_many(const std::vector<Rx>& es,
                                        const EvalCtx& ctx) {
  std::unordered_map<const RxNode*, CBall> memo;
  std::vector<CBall> out;
  out.reserve(es.size());
  for (auto& e : es) out.push_back(detail::rad_eval_rec(e, ctx, memo));
  return out;
}

// Polynomial evaluation on balls (used for residuals F(P) without building
// the composite tree).
inline CBall mpoly_eval_ball(const MPoly& p, const std::map<Sym, CBall>& point,
                             mpfr_prec_t prec) {
  // per-variable power caches
  std::map<Sym, std::vector<CBall>> powers;
  for (auto& [v, b] : point) powers[v] = {CBall::from_long(1, prec), b};
  CBall acc = CBall::from_long(0, prec);
  for (auto& [m, c] : p.terms()) {
    CBall t = CBall::from_rat(c, prec);
    for (std::size_t i = 0; i < kSymCount; ++i) {
      if (!m.e[i]) continue;
      Sym v = static_cast<Sym>(i);
      auto it = powers.find(v);
      if (it == powers.end()) throw EvalError("unbound variable in polynomial");
      auto& pw = it->second;
      while (pw.size() <= m.e[i])
        pw.push_back(CBall::mul(pw.back(), pw[1], prec));
      t = CBall::mul(t, pw[m.e[i]], prec);
    }
    acc = CBall::add(acc, t, prec);
  }
  return acc;
}

}  // namespace radsurf
