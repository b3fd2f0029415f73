#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "radsurf/errors.hpp"
#include "radsurf/rat.hpp"
#include "radsurf/symbols.hpp"

namespace radsurf {

// Exponent vector over the global symbol table.
struct Mono {
  std::array<std::uint16_t, kSymCount> e{};

  unsigned total() const {
    unsigned d = 0;
    for (auto v : e) d += v;
    return d;
  }
  bool is_unit() const {
    for (auto v : e) if (v) return false;
    return true;
  }
  bool divides(const Mono& o) const {
    for (std::size_t i = 0; i < kSymCount; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Mono operator*(const Mono& o) const {
    Mono r;
    for (std::size_t i = 0; i < kSymCount; ++i)
      r.e[i] = static_cast<std::uint16_t>(e[i] + o.e[i]);
    return r;
  }
  Mono operator/(const Mono& o) const {
    Mono r;
    for (std::size_t i = 0; i < kSymCount; ++i) {
      if (o.e[i] > e[i]) throw DivisionError("monomial quotient undefined");
      r.e[i] = static_cast<std::uint16_t>(e[i] - o.e[i]);
    }
    return r;
  }
  bool operator==(const Mono& o) const { return e == o.e; }

  static Mono var(Sym v, unsigned k = 1) {
    Mono m;
    m.e[idx(v)] = static_cast<std::uint16_t>(k);
    return m;
  }
};

// Graded lexicographic, biggest first (map begin() = leading term).
struct MonoGrlexGreater {
  bool operator()(const Mono& a, const Mono& b) const {
    unsigned da = a.total(), db = b.total();
    if (da != db) return da > db;
    return a.e > b.e;
  }
};

// Sparse multivariate polynomial with rational coefficients, canonical form:
// no zero terms, terms ordered grlex-descending.
class MPoly {
 public:
  using Terms = std::map<Mono, Rat, MonoGrlexGreater>;

  MPoly() = default;
  explicit MPoly(const Rat& c) {
    if (!c.is_zero()) terms_[Mono{}] = c;
  }
  MPoly(long c) : MPoly(Rat(c)) {}  // NOLINT

  static MPoly var(Sym v, unsigned k = 1) {
    MPoly p;
    if (k == 0) return MPoly(1);
    p.terms_[Mono::var(v, k)] = Rat(1);
    return p;
  }
  static MPoly term(const Rat& c, const Mono& m) {
    MPoly p;
    if (!c.is_zero()) p.terms_[m] = c;
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_unit());
  }
  Rat constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw ArgumentError("not a constant polynomial");
    return terms_.begin()->second;
  }
  std::size_t term_count() const { return terms_.size(); }

  unsigned total_degree() const {
    return terms_.empty() ? 0 : terms_.begin()->first.total();
  }
  unsigned degree(Sym v) const {
    unsigned d = 0;
    for (auto& [m, c] : terms_) d = std::max<unsigned>(d, m.e[idx(v)]);
    return d;
  }
  bool depends_on(Sym v) const {
    for (auto& [m, c] : terms_)
      if (m.e[idx(v)]) return true;
    return false;
  }
  // Bitmask of used symbols.
  std::uint32_t vars_mask() const {
    std::uint32_t mask = 0;
    for (auto& [m, c] : terms_)
      for (std::size_t i = 0; i < kSymCount; ++i)
        if (m.e[i]) mask |= (1u << i);
    return mask;
  }

  const Mono& leading_mono() const {
    if (terms_.empty()) throw ArgumentError("leading term of zero");
    return terms_.begin()->first;
  }
  const Rat& leading_coeff() const {
    if (terms_.empty()) throw ArgumentError("leading term of zero");
    return terms_.begin()->second;
  }

  void add_term(const Mono& m, const Rat& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MPoly operator-() const {
    MPoly r;
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  MPoly operator+(const MPoly& o) const {
    MPoly r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  MPoly operator-(const MPoly& o) const {
    MPoly r = *this;
    for (auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }
  MPoly operator*(const MPoly& o) const {
    MPoly r;
    if (terms_.empty() || o.terms_.empty()) return r;
    for (auto& [ma, ca] : terms_)
      for (auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  MPoly operator*(const Rat& c) const {
    MPoly r;
    if (c.is_zero()) return r;
    for (auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
  }
  MPoly& operator+=(const MPoly& o) { *this = *this + o; return *this; }
  MPoly& operator-=(const MPoly& o) { *this = *this - o; return *this; }
  MPoly& operator*=(const MPoly& o) { *this = *this * o; return *this; }

  bool operator==(const MPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  MPoly pow(unsigned e) const {
    MPoly r(1), base = *this;
    while (e) {
      if (e & 1) r *= base;
      base = (e >>= 1) ? base * base : base;
    }
    return r;
  }

  // Exact division; throws DivisionError when the remainder is nonzero.
  MPoly exact_div(const MPoly& d) const {
    if (d.is_zero()) throw DivisionError("exact_div by zero");
    MPoly q, r = *this;
    const Mono& dm = d.leading_mono();
    const Rat& dc = d.leading_coeff();
    while (!r.is_zero()) {
      const Mono& rm = r.leading_mono();
      if (!dm.divides(rm)) throw DivisionError("exact_div with remainder");
      Mono qm = rm / dm;
      Rat qc = r.leading_coeff() / dc;
      q.add_term(qm, qc);
      r -= d * MPoly::term(qc, qm);
    }
    return q;
  }
  std::optional<MPoly> try_exact_div(const MPoly& d) const {
    if (d.is_zero()) return std::nullopt;
    MPoly q, r = *this;
    const Mono& dm = d.leading_mono();
    const Rat& dc = d.leading_coeff();
    while (!r.is_zero()) {
      const Mono& rm = r.leading_mono();
      if (!dm.divides(rm)) return std::nullopt;
      Mono qm = rm / dm;
      Rat qc = r.leading_coeff() / dc;
      q.add_term(qm, qc);
      r -= d * MPoly::term(qc, qm);
    }
    return q;
  }

  MPoly derivative(Sym v) const {
    MPoly r;
    std::size_t i = idx(v);
    for (auto& [m, c] : terms_) {
      if (!m.e[i]) continue;
      Mono dm = m;
      dm.e[i] -= 1;
      r.add_term(dm, c * Rat(static_cast<long>(m.e[i])));
    }
    return r;
  }

  // Coefficient of v^k, with the v-exponent removed.
  MPoly coeff_of(Sym v, unsigned k) const {
    MPoly r;
    std::size_t i = idx(v);
    for (auto& [m, c] : terms_) {
      if (m.e[i] != k) continue;
      Mono mm = m;
      mm.e[i] = 0;
      r.add_term(mm, c);
    }
    return r;
  }
  // Dense coefficient list in v, ascending: p = sum coeffs[k] * v^k.
  std::vector<MPoly> coeffs_in(Sym v) const {
    std::vector<MPoly> out(degree(v) + 1);
    std::size_t i = idx(v);
    for (auto& [m, c] : terms_) {
      Mono mm = m;
      unsigned k = mm.e[i];
      mm.e[i] = 0;
      out[k].add_term(mm, c);
    }
    return out;
  }
  static MPoly from_coeffs(Sym v, const std::vector<MPoly>& coeffs) {
    MPoly r;
    for (std::size_t k = 0; k < coeffs.size(); ++k)
      r += coeffs[k] * MPoly::var(v, static_cast<unsigned>(k));
    return r;
  }
  MPoly leading_coeff_in(Sym v) const { return coeff_of(v, degree(v)); }

  MPoly substitute(Sym v, const MPoly& value) const {
    MPoly r;
    std::size_t i = idx(v);
    // Cache powers of the replacement.
    std::vector<MPoly> powers = {MPoly(1)};
    for (auto& [m, c] : terms_) {
      unsigned k = m.e[i];
      while (powers.size() <= k) powers.push_back(powers.back() * value);
      Mono mm = m;
      mm.e[i] = 0;
      r += powers[k] * MPoly::term(c, mm);
    }
    return r;
  }
  MPoly substitute(const std::map<Sym, MPoly>& bindings) const {
    // Sequential substitution is safe only when replacement values do not use
    // substituted variables; route through fresh accumulation instead.
    MPoly r;
    for (auto& [m, c] : terms_) {
      MPoly term(MPoly::term(c, Mono{}));
      Mono rest{};
      for (std::size_t i = 0; i < kSymCount; ++i) {
        if (!m.e[i]) continue;
        Sym v = static_cast<Sym>(i);
        auto it = bindings.find(v);
        if (it == bindings.end()) {
          rest.e[i] = m.e[i];
        } else {
          term *= it->second.pow(m.e[i]);
        }
      }
      r += term * MPoly::term(Rat(1), rest);
    }
    return r;
  }

  MPoly rename(const std::map<Sym, Sym>& renames) const {
    MPoly r;
    for (auto& [m, c] : terms_) {
      Mono mm{};
      for (std::size_t i = 0; i < kSymCount; ++i) {
        if (!m.e[i]) continue;
        auto it = renames.find(static_cast<Sym>(i));
        std::size_t j = (it == renames.end()) ? i : idx(it->second);
        mm.e[j] = static_cast<std::uint16_t>(mm.e[j] + m.e[i]);
      }
      r.add_term(mm, c);
    }
    return r;
  }

  Rat eval(const std::map<Sym, Rat>& point) const {
    Rat acc(0);
    for (auto& [m, c] : terms_) {
      Rat v = c;
      for (std::size_t i = 0; i < kSymCount; ++i) {
        if (!m.e[i]) continue;
        auto it = point.find(static_cast<Sym>(i));
        if (it == point.end()) throw EvalError("unbound variable in eval");
        v *= it->second.pow(m.e[i]);
      }
      acc += v;
    }
    return acc;
  }

  // Homogenize in (vars..., hvar) to the given degree.
  MPoly homogenize(Sym hvar, const std::vector<Sym>& vars, unsigned deg) const {
    MPoly r;
    for (auto& [m, c] : terms_) {
      unsigned d = 0;
      for (Sym v : vars) d += m.e[idx(v)];
      if (d > deg) throw ArgumentError("homogenize: degree too small");
      Mono mm = m;
      mm.e[idx(hvar)] = static_cast<std::uint16_t>(mm.e[idx(hvar)] + (deg - d));
      r.add_term(mm, c);
    }
    return r;
  }

  // Rational content: gcd of numerators over lcm of denominators, carrying the
  // sign of the leading coefficient. primitive() has coprime integer
  // coefficients and positive leading coefficient.
  Rat content_rat() const {
    if (terms_.empty()) return Rat(0);
    Rat g(0);
    for (auto& [m, c] : terms_) g = radsurf::gcd(g, c);
    if (leading_coeff().sign() < 0) g = -g;
    return g;
  }
  MPoly primitive_rat() const {
    if (terms_.empty()) return *this;
    Rat c = content_rat();
    MPoly r;
    for (auto& [m, k] : terms_) r.terms_.emplace(m, k / c);
    return r;
  }

  // Minimal total degree over the support (order of vanishing at the origin).
  unsigned min_total_degree() const {
    if (terms_.empty()) throw ArgumentError("min degree of zero");
    unsigned d = terms_.begin()->first.total();
    for (auto& [m, c] : terms_) d = std::min(d, m.total());
    return d;
  }
  // Sum of terms of the given total degree.
  MPoly degree_part(unsigned d) const {
    MPoly r;
    for (auto& [m, c] : terms_)
      if (m.total() == d) r.add_term(m, c);
    return r;
  }

  // Deterministic structural order (for sorting polynomial collections).
  int cmp(const MPoly& o) const {
    auto a = terms_.begin(), b = o.terms_.begin();
    MonoGrlexGreater lt;
    for (; a != terms_.end() && b != o.terms_.end(); ++a, ++b) {
      if (lt(a->first, b->first)) return -1;
      if (lt(b->first, a->first)) return 1;
      if (a->second < b->second) return -1;
      if (b->second < a->second) return 1;
    }
    if (a != terms_.end()) return 1;
    if (b != o.terms_.end()) return -1;
    return 0;
  }

  std::string str() const;

 private:
  Terms terms_;
};

inline MPoly operator*(const Rat& c, const MPoly& p) { return p * c; }

inline std::string MPoly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : terms_) {
    Rat a = c;
    if (first) {
      if (a.sign() < 0) { out += "-"; a = -a; }
    } else {
      out += a.sign() < 0 ? " - " : " + ";
      if (a.sign() < 0) a = -a;
    }
    first = false;
    std::string vars;
    for (std::size_t i = 0; i < kSymCount; ++i) {
      if (!m.e[i]) continue;
      if (!vars.empty()) vars += "*";
      vars += std::string(kSymNames[i]);
      if (m.e[i] > 1) vars += "^" + std::to_string(m.e[i]);
    }
    if (vars.empty()) {
      out += a.str();
    } else if (a.is_one()) {
      out += vars;
    } else {
      out += a.str() + "*" + vars;
    }
  }
  return out;
}

}  // namespace radsurf
