#pragma once

// Exact rational-function arithmetic over Q in three commuting
// indeterminates.  Polynomials are sparse maps from exponent triples to
// coefficients; fractions are numerator/denominator pairs compared by
// cross-multiplication, so no polynomial gcd is needed.  Sized for
// identity checking, not for heavy computation.

#include <array>
#include <map>
#include <utility>

#include "igusa/errors.hpp"
#include "igusa/rational.hpp"

namespace igusa {

class Sym3Poly {
 public:
  using Key = std::array<int, 3>;

  Sym3Poly() = default;
  static Sym3Poly constant(const Rat& c) {
    Sym3Poly r;
    r.add_term({0, 0, 0}, c);
    return r;
  }
  static Sym3Poly var(int i) {
    require(i >= 0 && i < 3, ErrorCode::DomainError, "variable index");
    Key k{0, 0, 0};
    k[static_cast<size_t>(i)] = 1;
    Sym3Poly r;
    r.add_term(k, Rat(1));
    return r;
  }

  void add_term(const Key& k, const Rat& c) {
    if (c.is_zero()) return;
    auto it = t_.find(k);
    if (it == t_.end()) {
      t_.emplace(k, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  bool is_zero() const { return t_.empty(); }

  friend Sym3Poly operator+(const Sym3Poly& a, const Sym3Poly& b) {
    Sym3Poly r = a;
    for (const auto& [k, c] : b.t_) r.add_term(k, c);
    return r;
  }
  Sym3Poly operator-() const {
    Sym3Poly r;
    for (const auto& [k, c] : t_) r.t_.emplace(k, -c);
    return r;
  }
  friend Sym3Poly operator-(const Sym3Poly& a, const Sym3Poly& b) {
    return a + (-b);
  }
  friend Sym3Poly operator*(const Sym3Poly& a, const Sym3Poly& b) {
    Sym3Poly r;
    for (const auto& [ka, ca] : a.t_)
      for (const auto& [kb, cb] : b.t_) {
        Key k{ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]};
        r.add_term(k, ca * cb);
      }
    return r;
  }
  friend bool operator==(const Sym3Poly& a, const Sym3Poly& b) {
    return a.t_ == b.t_;
  }
  friend bool operator!=(const Sym3Poly& a, const Sym3Poly& b) {
    return !(a == b);
  }

 private:
  std::map<Key, Rat> t_;
};

// Fraction of Sym3Poly with a nonzero denominator.  Fractions are never
// reduced; equality is decided by cross-multiplication.
struct SymbolicRF {
  Sym3Poly num;
  Sym3Poly den = Sym3Poly::constant(Rat(1));

  static SymbolicRF constant(const Rat& c) {
    return {Sym3Poly::constant(c), Sym3Poly::constant(Rat(1))};
  }
  static SymbolicRF var(int i) {
    return {Sym3Poly::var(i), Sym3Poly::constant(Rat(1))};
  }

  friend SymbolicRF operator+(const SymbolicRF& a, const SymbolicRF& b) {
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  friend SymbolicRF operator-(const SymbolicRF& a, const SymbolicRF& b) {
    return {a.num * b.den - b.num * a.den, a.den * b.den};
  }
  friend SymbolicRF operator*(const SymbolicRF& a, const SymbolicRF& b) {
    return {a.num * b.num, a.den * b.den};
  }
  friend SymbolicRF operator/(const SymbolicRF& a, const SymbolicRF& b) {
    require(!b.num.is_zero(), ErrorCode::DomainError,
            "division by the zero rational function");
    return {a.num * b.den, a.den * b.num};
  }

  bool equals(const SymbolicRF& o) const {
    return num * o.den == o.num * den;
  }
};

}  // namespace igusa
