#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "radsurf/errors.hpp"

namespace radsurf {

// Arbitrary-precision rational, always canonical: gcd(num, den) = 1, den >= 1.
class Rat {
 public:
  Rat() : q_(0) {}
  Rat(long n) : q_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rat(long n, long d) : q_(n, d) {
    if (d == 0) throw DivisionError("rational with zero denominator");
    q_.canonicalize();
  }
  explicit Rat(const mpz_class& n) : q_(n) {}
  Rat(const mpz_class& n, const mpz_class& d) : q_(n, d) {
    if (d == 0) throw DivisionError("rational with zero denominator");
    q_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  static Rat from_string(const std::string& text) {
    mpq_class q;
    if (q.set_str(text, 10) != 0)
      throw ArgumentError("bad rational literal: " + text);
    q.canonicalize();
    return Rat(q);
  }

  const mpq_class& raw() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  bool is_zero() const { return q_ == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
  Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
  Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
  Rat operator/(const Rat& o) const {
    if (o.is_zero()) throw DivisionError("rational division by zero");
    return Rat(mpq_class(q_ / o.q_));
  }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  bool operator==(const Rat& o) const { return q_ == o.q_; }
  bool operator!=(const Rat& o) const { return q_ != o.q_; }
  bool operator<(const Rat& o) const { return q_ < o.q_; }
  bool operator<=(const Rat& o) const { return q_ <= o.q_; }
  bool operator>(const Rat& o) const { return q_ > o.q_; }
  bool operator>=(const Rat& o) const { return q_ >= o.q_; }

  Rat abs() const { return sign() < 0 ? -*this : *this; }

  Rat pow(long e) const {
    if (e == 0) return Rat(1);
    if (is_zero()) {
      if (e < 0) throw DivisionError("0 to a negative power");
      return Rat(0);
    }
    mpz_class n, d;
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_pow_ui(n.get_mpz_t(), q_.get_num().get_mpz_t(), a);
    mpz_pow_ui(d.get_mpz_t(), q_.get_den().get_mpz_t(), a);
    return e < 0 ? Rat(d, n) : Rat(n, d);
  }

  Rat inv() const {
    if (is_zero()) throw DivisionError("inverse of zero");
    return Rat(den(), num());
  }

  // True if this equals u^2 for some rational u.
  bool is_square() const {
    if (sign() < 0) return false;
    return mpz_perfect_square_p(q_.get_num().get_mpz_t()) &&
           mpz_perfect_square_p(q_.get_den().get_mpz_t());
  }

  // Exact k-th root when one exists.
  std::optional<Rat> exact_root(unsigned k) const {
    if (k == 0) throw ArgumentError("0th root");
    if (sign() < 0) return std::nullopt;
    mpz_class rn, rd;
    if (!mpz_root(rn.get_mpz_t(), q_.get_num().get_mpz_t(), k))
      return std::nullopt;
    if (!mpz_root(rd.get_mpz_t(), q_.get_den().get_mpz_t(), k))
      return std::nullopt;
    return Rat(rn, rd);
  }

  std::string str() const { return q_.get_str(); }

  std::size_t hash() const {
    // Cheap but stable: fold limbs of num and den.
    auto fold = [](const mpz_class& z) {
      std::size_t acc = static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()));
      std::size_t n = mpz_size(z.get_mpz_t());
      for (std::size_t i = 0; i < n; ++i)
        acc = acc * 1099511628211ULL + mpz_getlimbn(z.get_mpz_t(), i);
      return acc;
    };
    return fold(q_.get_num()) * 31 + fold(q_.get_den());
  }

 private:
  mpq_class q_;
};

inline Rat gcd(const Rat& a, const Rat& b) {
  // gcd over Q as used for content bookkeeping: gcd of numerators over
  // lcm of denominators; result nonnegative.
  mpz_class gn, ld;
  mpz_gcd(gn.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
  mpz_lcm(ld.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
  return Rat(gn, ld);
}

}  // namespace radsurf

template <>
struct std::hash<radsurf::Rat> {
  std::size_t operator()(const radsurf::Rat& r) const { return r.hash(); }
};
