#pragma once

// Exact arithmetic in Q(p^(1/b)), embedded into R at the positive real
// root.  Elements are polynomials in u = p^(1/b) of degree < b; since
// u^b - p is irreducible (Eisenstein at p), that representation is unique
// once b is reduced to its minimal value for the element's support.
// Comparisons refine a dyadic interval around u until the sign of the
// value is certified.

#include <cmath>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "igusa/errors.hpp"
#include "igusa/rational.hpp"
#include "igusa/unipoly.hpp"

namespace igusa {

class AlgebraicReal {
 public:
  AlgebraicReal() : p_(2), b_(1), c_{Rat(0)} {}
  AlgebraicReal(const Int& p, long b, std::vector<Rat> coeffs)
      : p_(p), b_(b), c_(std::move(coeffs)) {
    require(b_ >= 1, ErrorCode::DomainError, "root index must be positive");
    c_.resize(static_cast<size_t>(b_), Rat(0));
    canonicalize();
  }
  static AlgebraicReal from_rat(const Int& p, const Rat& x) {
    return AlgebraicReal(p, 1, {x});
  }
  // u^a with u = p^(1/b); a may be negative (u^{-1} = u^{b-1} / p).
  static AlgebraicReal root_power(const Int& p, long a, long b) {
    long quot = a >= 0 ? a / b : -((-a + b - 1) / b);
    long rem = a - quot * b;  // in [0, b)
    std::vector<Rat> c(static_cast<size_t>(b), Rat(0));
    c[static_cast<size_t>(rem)] = Rat(p).pow(quot);
    return AlgebraicReal(p, b, std::move(c));
  }
  // p^e for rational e = a/b.
  static AlgebraicReal rational_power_of_p(const Int& p, const Rat& e) {
    long b = e.den().get_si();
    long a = e.num().get_si();
    return root_power(p, a, b);
  }

  const Int& p() const { return p_; }
  long index() const { return b_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& c : c_)
      if (!c.is_zero()) return false;
    return true;
  }
  bool is_rational() const { return b_ == 1; }
  Rat rational_value() const {
    require(b_ == 1, ErrorCode::DomainError, "value is irrational");
    return c_[0];
  }

  friend AlgebraicReal operator+(const AlgebraicReal& a,
                                 const AlgebraicReal& b) {
    auto [ca, cb, p, L] = common(a, b);
    for (size_t i = 0; i < ca.size(); ++i) ca[i] += cb[i];
    return AlgebraicReal(p, L, std::move(ca));
  }
  friend AlgebraicReal operator-(const AlgebraicReal& a,
                                 const AlgebraicReal& b) {
    auto [ca, cb, p, L] = common(a, b);
    for (size_t i = 0; i < ca.size(); ++i) ca[i] -= cb[i];
    return AlgebraicReal(p, L, std::move(ca));
  }
  AlgebraicReal operator-() const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return AlgebraicReal(p_, b_, std::move(c));
  }
  friend AlgebraicReal operator*(const AlgebraicReal& a,
                                 const AlgebraicReal& b) {
    auto [ca, cb, p, L] = common(a, b);
    std::vector<Rat> prod(2 * static_cast<size_t>(L), Rat(0));
    for (size_t i = 0; i < ca.size(); ++i) {
      if (ca[i].is_zero()) continue;
      for (size_t j = 0; j < cb.size(); ++j) prod[i + j] += ca[i] * cb[j];
    }
    // Reduce u^k for k >= L via u^L = p.
    std::vector<Rat> red(static_cast<size_t>(L), Rat(0));
    Rat pr(p);
    for (size_t k = 0; k < prod.size(); ++k)
      red[k % static_cast<size_t>(L)] +=
          prod[k] * (k >= static_cast<size_t>(L) ? pr : Rat(1));
    return AlgebraicReal(p, L, std::move(red));
  }
  friend AlgebraicReal operator*(const AlgebraicReal& a, const Rat& s) {
    std::vector<Rat> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.c_[i] * s;
    return AlgebraicReal(a.p_, a.b_, std::move(c));
  }
  friend AlgebraicReal operator*(const Rat& s, const AlgebraicReal& a) {
    return a * s;
  }

  AlgebraicReal inverse() const {
    require(!is_zero(), ErrorCode::DomainError, "inverse of zero");
    // Extended Euclid in Q[u] against the minimal polynomial u^b - p.
    UniPoly m = UniPoly::monomial(static_cast<int>(b_)) -
                UniPoly::constant(Rat(p_));
    UniPoly a(c_);
    UniPoly r0 = m, r1 = a, s0, s1 = UniPoly::constant(Rat(1));
    while (!r1.is_zero()) {
      auto [q, r2] = UniPoly::divmod(r0, r1);
      UniPoly s2 = s0 - q * s1;
      r0 = std::move(r1);
      r1 = std::move(r2);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    require(r0.deg() == 0, ErrorCode::InternalInvariant,
            "minimal polynomial not coprime to nonzero element");
    UniPoly inv = s0 * (Rat(1) / r0.leading());
    std::vector<Rat> c(static_cast<size_t>(b_), Rat(0));
    for (int i = 0; i <= inv.deg(); ++i) c[static_cast<size_t>(i)] = inv[i];
    return AlgebraicReal(p_, b_, std::move(c));
  }
  friend AlgebraicReal operator/(const AlgebraicReal& a,
                                 const AlgebraicReal& b) {
    return a * b.inverse();
  }

  friend bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) {
    if (a.p_ != b.p_) return false;
    return a.b_ == b.b_ && a.c_ == b.c_;  // canonical form is unique
  }
  friend bool operator!=(const AlgebraicReal& a, const AlgebraicReal& b) {
    return !(a == b);
  }

  // Sign of the real value; exact (interval refinement terminates because
  // nonzero-ness is certified symbolically first).
  int sign() const {
    if (is_zero()) return 0;
    // u lies in (1, p]; refine [lo, hi] by bisection.
    Rat lo(1), hi(p_);
    Rat pr(p_);
    for (int iter = 0; iter < 512; ++iter) {
      // Interval for the value: sum of c_i * [lo^i, hi^i] (u > 0).
      Rat L(0), H(0);
      Rat lop(1), hip(1);
      for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].is_zero()) {
          if (c_[i].sign() > 0) {
            L += c_[i] * lop;
            H += c_[i] * hip;
          } else {
            L += c_[i] * hip;
            H += c_[i] * lop;
          }
        }
        lop *= lo;
        hip *= hi;
      }
      if (L.sign() > 0) return 1;
      if (H.sign() < 0) return -1;
      Rat mid = (lo + hi) * Rat(1, 2);
      if (mid.pow(b_) <= pr)
        lo = mid;
      else
        hi = mid;
    }
    fail(ErrorCode::InternalInvariant, "sign refinement did not converge");
  }

  friend bool operator<(const AlgebraicReal& a, const AlgebraicReal& b) {
    return (a - b).sign() < 0;
  }

  double to_double() const {
    double u = std::pow(p_.get_d(), 1.0 / static_cast<double>(b_));
    double r = 0, up = 1;
    for (const auto& c : c_) {
      r += c.q().get_d() * up;
      up *= u;
    }
    return r;
  }

  std::string str() const {
    if (is_rational()) return c_[0].str();
    UniPoly poly(c_);
    return poly.str("u") + "  [u = " + p_.get_str() + "^(1/" +
           std::to_string(b_) + ")]";
  }

 private:
  static long gcd_l(long a, long b) {
    while (b) {
      long t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a;
  }

  void canonicalize() {
    long g = b_;
    for (size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) g = gcd_l(g, static_cast<long>(i));
    if (g > 1) {
      long nb = b_ / g;
      std::vector<Rat> nc(static_cast<size_t>(nb), Rat(0));
      for (size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].is_zero()) nc[i / static_cast<size_t>(g)] = c_[i];
      b_ = nb;
      c_ = std::move(nc);
    }
  }

  // Lift both to the lcm of their indices (requires same p).
  static std::tuple<std::vector<Rat>, std::vector<Rat>, Int, long> common(
      const AlgebraicReal& a, const AlgebraicReal& b) {
    require(a.p_ == b.p_, ErrorCode::MismatchedPrime,
            "mixing algebraic values over different primes");
    long L = a.b_ / gcd_l(a.b_, b.b_) * b.b_;
    auto lift = [&](const AlgebraicReal& x) {
      std::vector<Rat> c(static_cast<size_t>(L), Rat(0));
      long f = L / x.b_;
      for (size_t i = 0; i < x.c_.size(); ++i)
        c[i * static_cast<size_t>(f)] = x.c_[i];
      return c;
    };
    return {lift(a), lift(b), a.p_, L};
  }

  Int p_;
  long b_;
  std::vector<Rat> c_;
};

}  // namespace igusa
