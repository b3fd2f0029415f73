#pragma once

#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "radsurf/mpoly.hpp"
#include "radsurf/ratfunc.hpp"

namespace radsurf {

// Nested-radical expression trees. Nodes are immutable and hash-consed, so
// structural equality is pointer equality and towers deduplicate for free.
enum class RxKind : std::uint8_t { Const, Var, Add, Mul, Neg, Inv, IPow, Root };

struct RxNode;
using Rx = std::shared_ptr<const RxNode>;

struct RxNode {
  RxKind kind;
  Rat value;            // Const
  Sym var = Sym::x;     // Var
  unsigned n = 0;       // IPow exponent (>= 1)
  unsigned k = 0;       // Root index (>= 2)
  unsigned branch = 0;  // Root branch in [0, k)
  std::vector<Rx> args;
  std::size_t hash = 0;
};

namespace detail {

struct RxKeyHash {
  std::size_t operator()(const RxNode* n) const { return n->hash; }
};
struct RxKeyEq {
  bool operator()(const RxNode* a, const RxNode* b) const {
    if (a->kind != b->kind || a->n != b->n || a->k != b->k ||
        a->branch != b->branch || a->var != b->var ||
        a->args.size() != b->args.size())
      return false;
    for (std::size_t i = 0; i < a->args.size(); ++i)
      if (a->args[i].get() != b->args[i].get()) return false;
    return a->value == b->value;
  }
};

inline Rx intern(RxNode&& node) {
  static std::unordered_map<const RxNode*, Rx, RxKeyHash, RxKeyEq> pool;
  std::size_t h = static_cast<std::size_t>(node.kind) * 0x9e3779b97f4a7c15ULL;
  h = h * 31 + node.value.hash();
  h = h * 31 + static_cast<std::size_t>(node.var);
  h = h * 31 + node.n;
  h = h * 31 + node.k;
  h = h * 31 + node.branch;
  for (auto& a : node.args) h = h * 31 + reinterpret_cast<std::size_t>(a.get());
  node.hash = h;
  auto probe = pool.find(&node);
  if (probe != pool.end()) return probe->second;
  auto sp = std::make_shared<RxNode>(std::move(node));
  pool.emplace(sp.get(), sp);
  return sp;
}

}  // namespace detail

inline Rx rx_const(const Rat& c) {
  RxNode n{RxKind::Const};
  n.value = c;
  return detail::intern(std::move(n));
}
inline Rx rx_int(long v) { return rx_const(Rat(v)); }
inline Rx rx_var(Sym v) {
  RxNode n{RxKind::Var};
  n.var = v;
  return detail::intern(std::move(n));
}
inline Rx rx_add(std::vector<Rx> args) {
  if (args.empty()) return rx_int(0);
  if (args.size() == 1) return args[0];
  RxNode n{RxKind::Add};
  n.args = std::move(args);
  return detail::intern(std::move(n));
}
inline Rx rx_mul(std::vector<Rx> args) {
  if (args.empty()) return rx_int(1);
  if (args.size() == 1) return args[0];
  RxNode n{RxKind::Mul};
  n.args = std::move(args);
  return detail::intern(std::move(n));
}
inline Rx rx_neg(Rx a) {
  RxNode n{RxKind::Neg};
  n.args = {std::move(a)};
  return detail::intern(std::move(n));
}
inline bool rx_is_zero(const Rx& a) {
  return a->kind == RxKind::Const && a->value.is_zero();
}
inline bool rx_is_const(const Rx& a) { return a->kind == RxKind::Const; }
inline Rx rx_inv(Rx a) {
  if (rx_is_zero(a)) throw DivisionError("inverse of syntactic zero");
  RxNode n{RxKind::Inv};
  n.args = {std::move(a)};
  return detail::intern(std::move(n));
}
inline Rx rx_ipow(Rx a, unsigned e) {
  if (e == 0) throw ArgumentError("ipow exponent must be >= 1");
  if (e == 1) return a;
  RxNode n{RxKind::IPow};
  n.n = e;
  n.args = {std::move(a)};
  return detail::intern(std::move(n));
}
inline Rx rx_root(Rx a, unsigned k, unsigned branch = 0) {
  if (k < 2) throw ArgumentError("root index must be >= 2");
  if (branch >= k) throw ArgumentError("root branch out of range");
  RxNode n{RxKind::Root};
  n.k = k;
  n.branch = branch;
  n.args = {std::move(a)};
  return detail::intern(std::move(n));
}

inline Rx rx_sub(Rx a, Rx b) { return rx_add({std::move(a), rx_neg(std::move(b))}); }
inline Rx rx_div(Rx a, Rx b) { return rx_mul({std::move(a), rx_inv(std::move(b))}); }

inline Rx rx_from_mpoly(const MPoly& p) {
  std::vector<Rx> terms;
  for (auto& [m, c] : p.terms()) {
    std::vector<Rx> factors;
    if (!c.is_one() || m.is_unit()) factors.push_back(rx_const(c));
    for (std::size_t i = 0; i < kSymCount; ++i) {
      if (!m.e[i]) continue;
      Rx v = rx_var(static_cast<Sym>(i));
      factors.push_back(m.e[i] == 1 ? v : rx_ipow(v, m.e[i]));
    }
    terms.push_back(rx_mul(std::move(factors)));
  }
  return rx_add(std::move(terms));
}
inline Rx rx_from_ratfunc(const RatFunc& f) {
  Rx n = rx_from_mpoly(f.num());
  if (f.is_polynomial()) return n;
  return rx_mul({n, rx_inv(rx_from_mpoly(f.den()))});
}

// Deterministic structural order, independent of interning history.
inline int rx_cmp(const Rx& a, const Rx& b) {
  if (a.get() == b.get()) return 0;
  if (a->kind != b->kind) return a->kind < b->kind ? -1 : 1;
  switch (a->kind) {
    case RxKind::Const:
      return a->value < b->value ? -1 : (b->value < a->value ? 1 : 0);
    case RxKind::Var:
      return a->var < b->var ? -1 : (b->var < a->var ? 1 : 0);
    default: {
      if (a->n != b->n) return a->n < b->n ? -1 : 1;
      if (a->k != b->k) return a->k < b->k ? -1 : 1;
      if (a->branch != b->branch) return a->branch < b->branch ? -1 : 1;
      if (a->args.size() != b->args.size())
        return a->args.size() < b->args.size() ? -1 : 1;
      for (std::size_t i = 0; i < a->args.size(); ++i) {
        int c = rx_cmp(a->args[i], b->args[i]);
        if (c) return c;
      }
      return 0;
    }
  }
}

// Branch-preserving normal form: constant folding, 0/1 identities, flattening
// of nested sums and products, sign extraction through products. Radicands
// are never rewritten.
inline Rx rad_simplify(const Rx& e) {
  static std::unordered_map<const RxNode*, Rx> memo;
  auto it = memo.find(e.get());
  if (it != memo.end()) return it->second;

  auto result = [&](Rx r) {
    memo.emplace(e.get(), r);
    return r;
  };

  switch (e->kind) {
    case RxKind::Const:
    case RxKind::Var:
      return result(e);
    case RxKind::Neg: {
      Rx a = rad_simplify(e->args[0]);
      if (rx_is_const(a)) return result(rx_const(-a->value));
      if (a->kind == RxKind::Neg) return result(a->args[0]);
      return result(rx_neg(a));
    }
    case RxKind::Inv: {
      Rx a = rad_simplify(e->args[0]);
      if (rx_is_const(a)) {
        if (a->value.is_zero()) return result(rx_inv(e->args[0]));
        return result(rx_const(a->value.inv()));
      }
      if (a->kind == RxKind::Inv) return result(a->args[0]);
      if (a->kind == RxKind::Neg) return result(rx_neg(rx_inv(a->args[0])));
      return result(rx_inv(a));
    }
    case RxKind::IPow: {
      Rx a = rad_simplify(e->args[0]);
      if (rx_is_const(a)) return result(rx_const(a->value.pow(e->n)));
      if (a->kind == RxKind::IPow) return result(rx_ipow(a->args[0], a->n * e->n));
      return result(rx_ipow(a, e->n));
    }
    case RxKind::Add: {
      std::vector<Rx> flat;
      Rat c(0);
      // depth-first flatten
      std::vector<Rx> stack(e->args.rbegin(), e->args.rend());
      while (!stack.empty()) {
        Rx a = rad_simplify(stack.back());
        stack.pop_back();
        if (a->kind == RxKind::Add) {
          for (auto ai = a->args.rbegin(); ai != a->args.rend(); ++ai)
            stack.push_back(*ai);
        } else if (rx_is_const(a)) {
          c += a->value;
        } else {
          flat.push_back(a);
        }
      }
      std::stable_sort(flat.begin(), flat.end(),
                       [](const Rx& x, const Rx& y) { return rx_cmp(x, y) < 0; });
      if (!c.is_zero() || flat.empty()) flat.push_back(rx_const(c));
      return result(rx_add(std::move(flat)));
    }
    case RxKind::Mul: {
      std::vector<Rx> flat;
      Rat c(1);
      bool negate = false;
      std::vector<Rx> stack(e->args.rbegin(), e->args.rend());
      while (!stack.empty()) {
        Rx a = rad_simplify(stack.back());
        stack.pop_back();
        if (a->kind == RxKind::Neg) {
          negate = !negate;
          stack.push_back(a->args[0]);
          continue;
        }
        if (a->kind == RxKind::Mul) {
          for (auto ai = a->args.rbegin(); ai != a->args.rend(); ++ai)
            stack.push_back(*ai);
        } else if (rx_is_const(a)) {
          c *= a->value;
        } else {
          flat.push_back(a);
        }
      }
      if (negate) c = -c;
      if (c.is_zero()) return result(rx_int(0));
      std::stable_sort(flat.begin(), flat.end(),
                       [](const Rx& x, const Rx& y) { return rx_cmp(x, y) < 0; });
      if (flat.empty()) return result(rx_const(c));
      Rx core = rx_mul(std::move(flat));
      if (c.is_one()) return result(core);
      if (c == Rat(-1)) return result(rx_neg(core));
      std::vector<Rx> with_const{rx_const(c.abs())};
      for (auto& f : core->kind == RxKind::Mul ? core->args : std::vector<Rx>{core})
        with_const.push_back(f);
      Rx r = rx_mul(std::move(with_const));
      return result(c.sign() < 0 ? rx_neg(r) : r);
    }
    case RxKind::Root: {
      Rx a = rad_simplify(e->args[0]);
      if (rx_is_const(a)) {
        if (a->value.is_zero()) return result(rx_int(0));
        auto exact = a->value.exact_root(e->k);
        if (exact) {
          if (e->branch == 0) return result(rx_const(*exact));
          if (e->k % 2 == 0 && e->branch == e->k / 2)
            return result(rx_const(-*exact));
        }
      }
      return result(rx_root(a, e->k, e->branch));
    }
  }
  throw InternalError("unreachable expression kind");
}

// Formal partial derivative; root nodes are reused so that the derivative
// shares the original tower.
inline Rx rad_diff(const Rx& e, Sym v) {
  switch (e->kind) {
    case RxKind::Const:
      return rx_int(0);
    case RxKind::Var:
      return rx_int(e->var == v ? 1 : 0);
    case RxKind::Add: {
      std::vector<Rx> d;
      d.reserve(e->args.size());
      for (auto& a : e->args) d.push_back(rad_diff(a, v));
      return rx_add(std::move(d));
    }
    case RxKind::Mul: {
      std::vector<Rx> sum;
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        std::vector<Rx> prod = e->args;
        prod[i] = rad_diff(e->args[i], v);
        sum.push_back(rx_mul(std::move(prod)));
      }
      return rx_add(std::move(sum));
    }
    case RxKind::Neg:
      return rx_neg(rad_diff(e->args[0], v));
    case RxKind::Inv: {
      const Rx& u = e->args[0];
      return rx_neg(rx_mul({rad_diff(u, v), rx_inv(rx_ipow(u, 2))}));
    }
    case RxKind::IPow: {
      const Rx& u = e->args[0];
      Rx inner = rad_diff(u, v);
      Rx power = e->n == 2 ? u : rx_ipow(u, e->n - 1);
      return rx_mul({rx_int(static_cast<long>(e->n)), power, inner});
    }
    case RxKind::Root: {
      // d root(u,k) = root(u,k) * u' / (k*u), valid away from u = 0
      const Rx& u = e->args[0];
      Rx self = e;
      return rx_mul({self, rad_diff(u, v),
                     rx_inv(rx_mul({rx_int(static_cast<long>(e->k)), u}))});
    }
  }
  throw InternalError("unreachable expression kind");
}

// Root tower: the distinct root nodes of an expression in dependency order
// (radicands listed before the roots that use them).
inline void tower_collect(const Rx& e, std::vector<Rx>& out,
                          std::unordered_map<const RxNode*, bool>& seen) {
  if (seen.count(e.get())) return;
  seen.emplace(e.get(), true);
  for (auto& a : e->args) tower_collect(a, out, seen);
  if (e->kind == RxKind::Root) out.push_back(e);
}
inline std::vector<Rx> tower_of(const Rx& e) {
  std::vector<Rx> out;
  std::unordered_map<const RxNode*, bool> seen;
  tower_collect(e, out, seen);
  return out;
}
inline std::vector<Rx> tower_of(const std::vector<Rx>& es) {
  std::vector<Rx> out;
  std::unordered_map<const RxNode*, bool> seen;
  for (auto& e : es) tower_collect(e, out, seen);
  return out;
}

// Parseable rendering (the grammar of parse_radex).
inline std::string rx_text(const Rx& e) {
  auto paren = [](const std::string& s) { return "(" + s + ")"; };
  switch (e->kind) {
    case RxKind::Const: {
      return e->value.str();
    }
    case RxKind::Var:
      return std::string(name_of(e->var));
    case RxKind::Add: {
      std::string out;
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        const Rx& a = e->args[i];
        if (i == 0) {
          out += rx_text(a);
        } else if (a->kind == RxKind::Neg) {
          out += " - " + rx_text(a->args[0]);
        } else if (rx_is_const(a) && a->value.sign() < 0) {
          out += " - " + (-a->value).str();
        } else {
          out += " + " + rx_text(a);
        }
      }
      return out;
    }
    case RxKind::Mul: {
      std::string out;
      for (std::size_t i = 0; i < e->args.size(); ++i) {
        const Rx& a = e->args[i];
        if (a->kind == RxKind::Inv) {
          const Rx& d = a->args[0];
          if (out.empty()) out = "1";
          out += "/";
          bool atom = d->kind == RxKind::Const || d->kind == RxKind::Var ||
                      d->kind == RxKind::Root;
          out += atom && !(rx_is_const(d) && d->value.sign() < 0)
                     ? rx_text(d) : paren(rx_text(d));
        } else {
          if (!out.empty()) out += "*";
          bool atom = a->kind == RxKind::Const || a->kind == RxKind::Var ||
                      a->kind == RxKind::Root || a->kind == RxKind::IPow;
          atom = atom && !(rx_is_const(a) && a->value.sign() < 0);
          out += atom ? rx_text(a) : paren(rx_text(a));
        }
      }
      return out;
    }
    case RxKind::Neg:
      return "-" + ((e->args[0]->kind == RxKind::Add ||
                     e->args[0]->kind == RxKind::Mul)
                        ? paren(rx_text(e->args[0]))
                        : rx_text(e->args[0]));
    case RxKind::Inv: {
      const Rx& d = e->args[0];
      bool atom = d->kind == RxKind::Const || d->kind == RxKind::Var ||
                  d->kind == RxKind::Root;
      return "1/" + (atom && !(rx_is_const(d) && d->value.sign() < 0)
                         ? rx_text(d) : paren(rx_text(d)));
    }
    case RxKind::IPow: {
      const Rx& b = e->args[0];
      bool atom = b->kind == RxKind::Var || b->kind == RxKind::Root;
      return (atom ? rx_text(b) : paren(rx_text(b))) + "^" + std::to_string(e->n);
    }
    case RxKind::Root:
      if (e->k == 2 && e->branch == 0) return "sqrt(" + rx_text(e->args[0]) + ")";
      return "root(" + rx_text(e->args[0]) + ", " + std::to_string(e->k) + ", " +
             std::to_string(e->branch) + ")";
  }
  throw InternalError("unreachable expression kind");
}

// A radical parametrization triple with its tower and parameter pair.
struct RadParam;  // completed in verify.hpp (carries the certificate)

}  // namespace radsurf
