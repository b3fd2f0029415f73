#pragma once

#include <array>
#include <functional>
#include <optional>
#include <random>
#include <set>

#include "radsurf/mpoly.hpp"
#include "radsurf/rad_eval.hpp"

namespace radsurf {

struct VerifyOptions {
  int n_samples = 20;
  std::uint64_t seed = 1729;
  mpfr_prec_t precision = 128;      // starting working precision
  mpfr_prec_t max_precision = 4096; // doubling cap
};

enum class VerifyStatus { Certified, Failed, Inconclusive };

struct SampleCert {
  std::vector<Rat> point;  // parameter values, in parameter order
  // per tower step: branch taken and side assumption used (0 if none)
  std::vector<std::pair<unsigned, int>> choices;
  long residual_width_log2 = 0;
  mpfr_prec_t precision = 0;
};

struct RankWitness {
  std::size_t sample_index = 0;
  int rows[2] = {0, 1};  // rows of the 3x2 Jacobian forming the minor
  long lower_bound_log2 = 0;
  mpfr_prec_t precision = 0;
};

struct Certificate {
  VerifyStatus status = VerifyStatus::Inconclusive;
  std::string kind = "surface-residual";
  std::vector<SampleCert> samples;
  std::optional<RankWitness> rank;
  unsigned tower_depth = 0;
  std::uint64_t seed = 0;
  std::string note;

  bool ok() const { return status == VerifyStatus::Certified; }
};

// A radical parametrization triple: components in the surface coordinate
// order (x, y, z), two parameters, the root tower of the components, and the
// certificate of the last verification.
struct RadParam {
  std::array<Rx, 3> components;
  std::pair<Sym, Sym> params{Sym::t1, Sym::t2};
  std::vector<Rx> tower;
  Certificate cert;
};

inline RadParam make_radparam(Rx c0, Rx c1, Rx c2, Sym p0, Sym p1) {
  RadParam P;
  P.components = {rad_simplify(std::move(c0)), rad_simplify(std::move(c1)),
                  rad_simplify(std::move(c2))};
  P.params = {p0, p1};
  P.tower = tower_of({P.components[0], P.components[1], P.components[2]});
  return P;
}

namespace detail {

inline Rat sample_rat(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 2000001) - 1000000;
  long den = static_cast<long>(rng() % 1000000) + 1;
  return Rat(num, den);
}

// All branch/side assignments of a tower, defaults first. Sides are only
// enumerated on the listed nodes.
inline std::vector<BranchOverride> enumerate_assignments(
    const std::vector<Rx>& tower, const std::set<const RxNode*>& sided,
    std::size_t cap = 4096) {
  std::vector<BranchOverride> out{{}};
  for (auto& step : tower) {
    std::vector<BranchOverride> next;
    for (auto& a : out) {
      for (unsigned b = 0; b < step->k; ++b) {
        if (sided.count(step.get())) {
          for (int side : {+1, -1}) {
            BranchOverride n = a;
            n[step.get()] = BranchChoice{b, side};
            next.push_back(std::move(n));
          }
        } else {
          BranchOverride n = a;
          n[step.get()] = BranchChoice{b, 0};
          next.push_back(std::move(n));
        }
        if (next.size() > cap) break;
      }
      if (next.size() > cap) break;
    }
    out = std::move(next);
    if (out.size() > cap) {
      out.resize(cap);
      break;
    }
  }
  return out;
}

}  // namespace detail

// Per-sample zero certification of a ball-valued function of the parameters.
// Searches branch/side assignments of the tower, preferring a hint, and
// accepts an assignment when the enclosure contains zero and shrinks under
// precision doubling.
struct ZeroCertResult {
  enum Kind { Zero, Nonzero, Undecided } kind = Undecided;
  BranchOverride choices;
  long width_log2 = 0;
  mpfr_prec_t precision = 0;
};

inline ZeroCertResult certify_zero_at(
    const std::function<CBall(const EvalCtx&)>& f,
    const std::vector<Rx>& tower, const std::map<Sym, Rat>& point,
    const VerifyOptions& opt, const BranchOverride* hint = nullptr) {
  ZeroCertResult best;
  // The set of root nodes that need side assumptions is discovered while
  // evaluating: whenever a radicand rectangle straddles the cut under some
  // assignment it joins the set and the assignments are re-enumerated with
  // sides on it. Precision escalates globally so that the common case (the
  // hint or default assignment certifying at base precision) stays cheap.
  std::set<const RxNode*> sided;
  std::vector<BranchOverride> assignments;
  std::vector<bool> concluded_nonzero;
  auto re_enumerate = [&]() {
    assignments = detail::enumerate_assignments(tower, sided, 256);
    if (hint && !hint->empty()) assignments.insert(assignments.begin(), *hint);
    concluded_nonzero.assign(assignments.size(), false);
  };
  re_enumerate();

  for (mpfr_prec_t P = opt.precision; P <= opt.max_precision; P *= 2) {
    std::set<const RxNode*> seen = sided;
    bool all_nonzero = true;
    for (std::size_t ai = 0; ai < assignments.size(); ++ai) {
      if (concluded_nonzero[ai]) continue;
      const BranchOverride& ov = assignments[ai];
      EvalCtx ctx;
      ctx.prec = P;
      ctx.overrides = &ov;
      ctx.cut_straddles = &seen;
      for (auto& [v, q] : point) ctx.vars.emplace(v, CBall::from_rat(q, P));
      CBall val(P);
      try {
        val = f(ctx);
      } catch (const PrecisionError&) {
        all_nonzero = false;  // undecidable at this precision
        continue;
      }
      if (!val.contains_zero()) {
        concluded_nonzero[ai] = true;
        continue;
      }
      // shrink test at doubled precision
      EvalCtx ctx2;
      ctx2.prec = 2 * P;
      ctx2.overrides = &ov;
      for (auto& [v, q] : point) ctx2.vars.emplace(v, CBall::from_rat(q, 2 * P));
      CBall val2(2 * P);
      try {
        val2 = f(ctx2);
      } catch (const PrecisionError&) {
        all_nonzero = false;
        continue;
      }
      if (!val2.contains_zero()) {
        concluded_nonzero[ai] = true;
        continue;
      }
      Mpf w1 = val.width(P), w2 = val2.width(2 * P);
      Mpf target(P);
      mpfr_mul_2si(target.p(), w1.p(), -8, MPFR_RNDU);
      if (mpfr_zero_p(w2.p()) || mpfr_cmp(w2.p(), target.p()) < 0) {
        ZeroCertResult r;
        r.kind = ZeroCertResult::Zero;
        r.choices = ov;
        r.width_log2 = val2.width_log2(2 * P);
        r.precision = 2 * P;
        return r;
      }
      all_nonzero = false;  // contained zero but did not shrink yet
    }
    if (all_nonzero &&
        std::all_of(concluded_nonzero.begin(), concluded_nonzero.end(),
                    [](bool b) { return b; })) {
      best.kind = ZeroCertResult::Nonzero;
      return best;
    }
    if (seen != sided) {
      // new cut information: redo this precision level with side choices
      sided = std::move(seen);
      re_enumerate();
      P /= 2;
    }
  }
  best.kind = ZeroCertResult::Undecided;
  return best;
}

// Residual evaluator: F(P) as a ball function of the parameters.
inline std::function<CBall(const EvalCtx&)> surface_residual_fn(
    const MPoly& F, const RadParam& P) {
  return [&F, &P](const EvalCtx& ctx) {
    std::unordered_map<const RxNode*, CBall> memo;
    std::map<Sym, CBall> xyz;
    static const Sym slots[3] = {Sym::x, Sym::y, Sym::z};
    for (int i = 0; i < 3; ++i)
      xyz.emplace(slots[i], detail::rad_eval_rec(P.components[i], ctx, memo));
    return mpoly_eval_ball(F, xyz, ctx.prec);
  };
}

// True when every tower radicand stays certifiedly away from zero at the
// point (by at least 2^exp2).
inline bool sample_clears_radicands(const std::vector<Rx>& tower,
                                    const std::map<Sym, Rat>& pt,
                                    mpfr_prec_t prec, long exp2 = -20) {
  EvalCtx ctx;
  ctx.prec = prec;
  for (auto& [v, q] : pt) ctx.vars.emplace(v, CBall::from_rat(q, prec));
  Mpf threshold(prec);
  mpfr_set_ui_2exp(threshold.p(), 1, exp2, MPFR_RNDN);
  std::unordered_map<const RxNode*, CBall> memo;
  for (auto& step : tower) {
    try {
      CBall rad = detail::rad_eval_rec(step->args[0], ctx, memo);
      Mpf lower = rad.mig(prec);
      if (mpfr_cmp(lower.p(), threshold.p()) < 0) return false;
    } catch (const PrecisionError&) {
      return false;
    }
  }
  return true;
}

// Draws a parameter sample, rejecting points too close to a radicand zero.
inline std::optional<std::map<Sym, Rat>> draw_sample(
    std::mt19937_64& rng, const RadParam& P, const VerifyOptions& opt) {
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::map<Sym, Rat> pt{{P.params.first, detail::sample_rat(rng)},
                          {P.params.second, detail::sample_rat(rng)}};
    if (sample_clears_radicands(P.tower, pt, opt.precision)) return pt;
  }
  return std::nullopt;
}

// Definition check, first bullet: certified vanishing of F(P) at seeded
// random parameter samples with branch search and adaptive precision.
inline Certificate verify_on_surface(const MPoly& F, const RadParam& P,
                                     const VerifyOptions& opt = {}) {
  Certificate cert;
  cert.kind = "surface-residual";
  cert.seed = opt.seed;
  cert.tower_depth = static_cast<unsigned>(P.tower.size());
  std::mt19937_64 rng(opt.seed);
  auto fn = surface_residual_fn(F, P);
  BranchOverride hint;
  for (int i = 0; i < opt.n_samples; ++i) {
    auto pt = draw_sample(rng, P, opt);
    if (!pt) {
      cert.status = VerifyStatus::Inconclusive;
      cert.note = "could not find sample points away from radicand zeros";
      return cert;
    }
    ZeroCertResult r = certify_zero_at(fn, P.tower, *pt, opt, &hint);
    if (r.kind == ZeroCertResult::Zero) {
      SampleCert sc;
      sc.point = {pt->at(P.params.first), pt->at(P.params.second)};
      for (auto& step : P.tower) {
        auto it = r.choices.find(step.get());
        sc.choices.push_back(it == r.choices.end()
                                 ? std::make_pair(step->branch, 0)
                                 : std::make_pair(it->second.branch,
                                                  it->second.side));
      }
      sc.residual_width_log2 = r.width_log2;
      sc.precision = r.precision;
      cert.samples.push_back(std::move(sc));
      hint = r.choices;
    } else if (r.kind == ZeroCertResult::Nonzero) {
      cert.status = VerifyStatus::Failed;
      cert.note = "residual certified nonzero at sample " + std::to_string(i);
      return cert;
    } else {
      cert.status = VerifyStatus::Inconclusive;
      cert.note = "residual undecided at sample " + std::to_string(i) +
                  " at the precision cap";
      return cert;
    }
  }
  cert.status = VerifyStatus::Certified;
  return cert;
}

// Definition check, second bullet: a 2x2 minor of the Jacobian certified
// nonzero at one of the certified samples.
inline std::optional<RankWitness> jacobian_rank_witness(
    const RadParam& P, const Certificate& residual_cert,
    const VerifyOptions& opt = {}) {
  std::array<std::array<Rx, 2>, 3> J;
  for (int i = 0; i < 3; ++i) {
    J[i][0] = rad_simplify(rad_diff(P.components[i], P.params.first));
    J[i][1] = rad_simplify(rad_diff(P.components[i], P.params.second));
  }
  static const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (std::size_t si = 0; si < residual_cert.samples.size(); ++si) {
    const SampleCert& sc = residual_cert.samples[si];
    BranchOverride ov;
    for (std::size_t k = 0; k < P.tower.size(); ++k)
      ov[P.tower[k].get()] =
          BranchChoice{sc.choices[k].first, sc.choices[k].second};
    std::map<Sym, Rat> pt{{P.params.first, sc.point[0]},
                          {P.params.second, sc.point[1]}};
    for (mpfr_prec_t prec = opt.precision; prec <= opt.max_precision;
         prec *= 2) {
      EvalCtx ctx;
      ctx.prec = prec;
      ctx.overrides = &ov;
      for (auto& [v, q] : pt) ctx.vars.emplace(v, CBall::from_rat(q, prec));
      try {
        std::unordered_map<const RxNode*, CBall> memo;
        std::array<std::array<CBall, 2>, 3> vals{
            {{CBall(prec), CBall(prec)},
             {CBall(prec), CBall(prec)},
             {CBall(prec), CBall(prec)}}};
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 2; ++j)
            vals[i][j] = detail::rad_eval_rec(J[i][j], ctx, memo);
        for (auto& pr : pairs) {
          CBall minor = CBall::sub(
              CBall::mul(vals[pr[0]][0], vals[pr[1]][1], prec),
              CBall::mul(vals[pr[0]][1], vals[pr[1]][0], prec), prec);
          if (minor.excludes_zero()) {
            RankWitness w;
            w.sample_index = si;
            w.rows[0] = pr[0];
            w.rows[1] = pr[1];
            Mpf lb = minor.mig(prec);
            w.lower_bound_log2 =
                mpfr_zero_p(lb.p()) ? 0 : mpfr_get_exp(lb.p()) - 1;
            w.precision = prec;
            return w;
          }
        }
      } catch (const PrecisionError&) {
        // raise precision
      }
    }
  }
  return std::nullopt;
}

// Full Definition check; returns the certificate with the rank witness
// attached (status downgraded to Inconclusive when no witness was found).
inline Certificate certify_radparam(const MPoly& F, RadParam& P,
                                    const VerifyOptions& opt = {}) {
  Certificate cert = verify_on_surface(F, P, opt);
  if (cert.status != VerifyStatus::Certified) {
    P.cert = cert;
    return cert;
  }
  auto w = jacobian_rank_witness(P, cert, opt);
  if (!w) {
    cert.status = VerifyStatus::Inconclusive;
    cert.note = "no Jacobian minor could be certified nonzero";
  } else {
    cert.rank = *w;
  }
  P.cert = cert;
  return cert;
}

}  // namespace radsurf
