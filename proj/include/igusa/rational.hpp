#pragma once

// Exact rational arithmetic on top of GMP.  Rat keeps the usual invariants
// (lowest terms, positive denominator) by canonicalizing on construction;
// mpq_class alone does not canonicalize its (num, den) constructor.

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>

#include "igusa/errors.hpp"

namespace igusa {

using Int = mpz_class;

// Sentinel for ord(0) = +infinity.
inline constexpr long kOrdInf = std::numeric_limits<long>::max();

class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}           // NOLINT: implicit by design
  Rat(const Int& n) : v_(n) {}     // NOLINT
  Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }  // NOLINT
  Rat(const Int& n, const Int& d) : v_(n, d) {
    require(d != 0, ErrorCode::DomainError, "rational with zero denominator");
    v_.canonicalize();
  }
  Rat(long n, long d) : Rat(Int(n), Int(d)) {}

  const mpq_class& q() const { return v_; }
  Int num() const { return v_.get_num(); }
  Int den() const { return v_.get_den(); }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) {
    require(!o.is_zero(), ErrorCode::DomainError, "division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

  Rat abs() const { return sign() < 0 ? -*this : *this; }

  // Integer power; e may be negative for nonzero values.
  Rat pow(long e) const {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-(e + 1)) + 1UL
                          : static_cast<unsigned long>(e);
    Int n, d;
    mpz_pow_ui(n.get_mpz_t(), v_.get_num_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), v_.get_den_mpz_t(), k);
    Rat out{n, d};
    if (inv) return Rat(1) / out;
    return out;
  }

  std::string str() const { return v_.get_str(); }

 private:
  mpq_class v_;
};

inline Int int_pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

// p-adic valuation of a nonzero integer.
inline long ord_int(const Int& n, const Int& p) {
  if (n == 0) return kOrdInf;
  Int a = ::abs(n);
  long v = 0;
  Int q, r;
  while (true) {
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
    if (r != 0) break;
    a = q;
    ++v;
  }
  return v;
}

// p-adic valuation of a rational; ord(0) = kOrdInf.
inline long ord_rat(const Rat& x, const Int& p) {
  if (x.is_zero()) return kOrdInf;
  return ord_int(x.num(), p) - ord_int(x.den(), p);
}

// gcd helper for rational contents: gcd(a,b) with gcd(0,x)=|x|.
inline Int int_gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

inline Int int_lcm(const Int& a, const Int& b) {
  Int g;
  mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

}  // namespace igusa
