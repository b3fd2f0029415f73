#pragma once

#include <string>
#include <vector>

#include "radsurf/mpoly_gcd.hpp"

namespace radsurf {

// Rational function num/den over a parameter-variable set (typically {s}).
// Canonical: gcd(num, den) trivial, den integer-primitive with positive lead.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(const Rat& c) : num_(c), den_(1) {}  // NOLINT
  RatFunc(long c) : num_(Rat(c)), den_(1) {}   // NOLINT
  explicit RatFunc(const MPoly& n) : num_(n), den_(1) {}
  RatFunc(MPoly n, MPoly d) {
    if (d.is_zero()) throw EvalError("rational function with zero denominator");
    num_ = std::move(n);
    den_ = std::move(d);
    normalize();
  }

  const MPoly& num() const { return num_; }
  const MPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_ == MPoly(1) && num_ == MPoly(1); }
  bool is_polynomial() const { return den_ == MPoly(1); }

  RatFunc operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  RatFunc operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
  }
  RatFunc operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    return RatFunc(num_ * o.num_, den_ * o.den_);
  }
  RatFunc operator/(const RatFunc& o) const {
    if (o.is_zero()) throw DivisionError("rational function division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
  }
  RatFunc& operator+=(const RatFunc& o) { *this = *this + o; return *this; }
  RatFunc& operator-=(const RatFunc& o) { *this = *this - o; return *this; }
  RatFunc& operator*=(const RatFunc& o) { *this = *this * o; return *this; }
  RatFunc& operator/=(const RatFunc& o) { *this = *this / o; return *this; }

  RatFunc inv() const {
    if (is_zero()) throw DivisionError("inverse of zero rational function");
    return RatFunc(den_, num_);
  }

  bool operator==(const RatFunc& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  int cmp(const RatFunc& o) const {
    int c = num_.cmp(o.num_);
    return c != 0 ? c : den_.cmp(o.den_);
  }

  std::string str() const {
    if (is_polynomial()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = MPoly(1);
      return;
    }
    MPoly g = gcd_poly(num_, den_);
    if (!(g == MPoly(1))) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    Rat c = den_.content_rat();
    if (!c.is_one()) {
      den_ = den_ * c.inv();
      num_ = num_ * c.inv();
    }
  }

  MPoly num_, den_;
};

// Dense univariate polynomial over RatFunc; the main variable is tracked by
// the caller. Coefficients ascending, trailing zeros trimmed.
class UPolyF {
 public:
  UPolyF() = default;
  explicit UPolyF(RatFunc c) { c_.push_back(std::move(c)); trim(); }
  explicit UPolyF(std::vector<RatFunc> c) : c_(std::move(c)) { trim(); }

  static UPolyF variable() {
    return UPolyF(std::vector<RatFunc>{RatFunc(), RatFunc(1)});
  }
  static UPolyF monomial(const RatFunc& c, unsigned k) {
    std::vector<RatFunc> v(k + 1);
    v[k] = c;
    return UPolyF(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const RatFunc& operator[](std::size_t i) const {
    static const RatFunc zero;
    return i < c_.size() ? c_[i] : zero;
  }
  const std::vector<RatFunc>& coeffs() const { return c_; }
  const RatFunc& lead() const {
    if (c_.empty()) throw ArgumentError("leading coefficient of zero");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  UPolyF operator-() const {
    std::vector<RatFunc> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
    return UPolyF(std::move(v));
  }
  UPolyF operator+(const UPolyF& o) const {
    std::vector<RatFunc> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)[i] + o[i];
    return UPolyF(std::move(v));
  }
  UPolyF operator-(const UPolyF& o) const {
    std::vector<RatFunc> v(std::max(c_.size(), o.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = (*this)[i] - o[i];
    return UPolyF(std::move(v));
  }
  UPolyF operator*(const UPolyF& o) const {
    if (is_zero() || o.is_zero()) return UPolyF();
    std::vector<RatFunc> v(c_.size() + o.c_.size() - 1);
    for (std::size_t i = 0; i < c_.size(); ++i)
      for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return UPolyF(std::move(v));
  }
  UPolyF operator*(const RatFunc& k) const {
    std::vector<RatFunc> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i] * k;
    return UPolyF(std::move(v));
  }

  // Field-coefficient division with remainder.
  std::pair<UPolyF, UPolyF> divrem(const UPolyF& d) const {
    if (d.is_zero()) throw DivisionError("UPolyF division by zero");
    UPolyF q, r = *this;
    std::vector<RatFunc> qc(degree() >= d.degree() ? degree() - d.degree() + 1 : 0);
    while (!r.is_zero() && r.degree() >= d.degree()) {
      RatFunc k = r.lead() / d.lead();
      unsigned shift = r.degree() - d.degree();
      qc[shift] = k;
      r = r - d * UPolyF::monomial(k, shift);
    }
    return {UPolyF(std::move(qc)), r};
  }
  UPolyF mod(const UPolyF& d) const { return divrem(d).second; }
  UPolyF exact_div(const UPolyF& d) const {
    auto [q, r] = divrem(d);
    if (!r.is_zero()) throw DivisionError("UPolyF exact division with remainder");
    return q;
  }

  UPolyF monic() const {
    if (is_zero()) return *this;
    return *this * lead().inv();
  }

  UPolyF derivative() const {
    if (c_.size() <= 1) return UPolyF();
    std::vector<RatFunc> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i)
      v[i - 1] = c_[i] * RatFunc(Rat(static_cast<long>(i)));
    return UPolyF(std::move(v));
  }

  RatFunc eval(const RatFunc& x) const {
    RatFunc acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  bool operator==(const UPolyF& o) const { return c_ == o.c_; }

  // Conversion to MPoly in the given variable; denominators must be cleared
  // by the caller when they matter (use clear_denominators()).
  MPoly to_mpoly(Sym v) const {
    MPoly r;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!c_[i].is_polynomial())
        throw ArgumentError("to_mpoly with non-polynomial coefficient");
      r += c_[i].num() * MPoly::var(v, static_cast<unsigned>(i));
    }
    return r;
  }
  // Scale by the lcm-ish product of denominators; returns a polynomial with
  // MPoly coefficients equal to unit * this.
  UPolyF clear_denominators() const {
    RatFunc scale(Rat(1));
    for (auto& c : c_)
      if (!c.is_polynomial()) scale = scale * RatFunc(c.den());
    UPolyF r = *this * scale;
    return r;
  }

  static UPolyF from_mpoly(const MPoly& p, Sym v) {
    auto cs = p.coeffs_in(v);
    std::vector<RatFunc> v2(cs.size());
    for (std::size_t i = 0; i < cs.size(); ++i) v2[i] = RatFunc(cs[i]);
    return UPolyF(std::move(v2));
  }

  std::string str(const std::string& varname = "T") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + c_[i].str() + ")";
      if (i > 0) out += "*" + varname + (i > 1 ? "^" + std::to_string(i) : "");
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<RatFunc> c_;
};

inline UPolyF gcd_upoly(UPolyF a, UPolyF b) {
  while (!b.is_zero()) {
    UPolyF r = a.mod(b);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// Composition with rational-function values; denominators are tracked
// exactly. A binding whose denominator vanishes identically is impossible by
// construction of RatFunc, so the only failure is an unbound division inside
// the accumulation, which RatFunc itself reports.
inline RatFunc substitute_rf(const MPoly& p,
                             const std::map<Sym, RatFunc>& bindings) {
  RatFunc acc;
  for (auto& [m, c] : p.terms()) {
    RatFunc term{Rat(1)};
    Mono rest{};
    for (std::size_t i = 0; i < kSymCount; ++i) {
      if (!m.e[i]) continue;
      auto it = bindings.find(static_cast<Sym>(i));
      if (it == bindings.end()) {
        rest.e[i] = m.e[i];
        continue;
      }
      RatFunc power{Rat(1)};
      for (unsigned k = 0; k < m.e[i]; ++k) power *= it->second;
      term *= power;
    }
    acc += term * RatFunc(MPoly::term(c, rest));
  }
  return acc;
}

}  // namespace radsurf
