#pragma once

// Dense univariate polynomials over Q: arithmetic, division, gcd,
// squarefree decomposition support, evaluation, composition with affine
// maps, and a resultant-grade elimination routine (subresultant PRS).

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "igusa/errors.hpp"
#include "igusa/rational.hpp"

namespace igusa {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UniPoly constant(const Rat& a) { return UniPoly({a}); }
  // a + b*x
  static UniPoly linear(const Rat& a, const Rat& b) { return UniPoly({a, b}); }
  // x^k
  static UniPoly monomial(int k, const Rat& a = Rat(1)) {
    std::vector<Rat> c(static_cast<size_t>(k) + 1, Rat(0));
    c.back() = a;
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  // deg(0) = -1 by convention.
  int deg() const { return static_cast<int>(c_.size()) - 1; }
  const Rat& operator[](int i) const {
    static const Rat zero(0);
    if (i < 0 || i >= static_cast<int>(c_.size())) return zero;
    return c_[static_cast<size_t>(i)];
  }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat leading() const { return c_.empty() ? Rat(0) : c_.back(); }
  // Trailing valuation: smallest i with c_i != 0 (0 for the zero polynomial).
  int trailing_val() const {
    for (size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<int>(i);
    return 0;
  }

  UniPoly operator-() const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return UniPoly(std::move(c));
  }

  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rat> c(std::max(a.c_.size(), b.c_.size()), Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return UniPoly(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    return a + (-b);
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rat> c(a.c_.size() + b.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (size_t j = 0; j < b.c_.size(); ++j)
        c[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const UniPoly& a, const Rat& s) {
    std::vector<Rat> c(a.c_.size());
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] = a.c_[i] * s;
    return UniPoly(std::move(c));
  }
  friend UniPoly operator*(const Rat& s, const UniPoly& a) { return a * s; }
  UniPoly& operator+=(const UniPoly& o) { return *this = *this + o; }
  UniPoly& operator-=(const UniPoly& o) { return *this = *this - o; }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly& a, const UniPoly& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) {
    return !(a == b);
  }

  // Quotient and remainder with deg(rem) < deg(divisor).
  static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a,
                                            const UniPoly& b) {
    require(!b.is_zero(), ErrorCode::DomainError, "polynomial division by 0");
    std::vector<Rat> r = a.c_;
    int db = b.deg();
    Rat lb = b.leading();
    if (a.deg() < db) return {UniPoly(), a};
    std::vector<Rat> q(static_cast<size_t>(a.deg() - db) + 1, Rat(0));
    for (int i = a.deg(); i >= db; --i) {
      Rat& ri = r[static_cast<size_t>(i)];
      if (ri.is_zero()) continue;
      Rat f = ri / lb;
      q[static_cast<size_t>(i - db)] = f;
      for (int j = 0; j <= db; ++j)
        r[static_cast<size_t>(i - db + j)] -= f * b[j];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
  }

  // Exact division; errors if the remainder is nonzero.
  static UniPoly div_exact(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divmod(a, b);
    require(r.is_zero(), ErrorCode::InternalInvariant,
            "inexact polynomial division");
    return q;
  }

  UniPoly derivative() const {
    if (deg() <= 0) return UniPoly();
    std::vector<Rat> c(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rat(Int(i));
    return UniPoly(std::move(c));
  }

  Rat eval(const Rat& x) const {
    Rat r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * x + c_[i];
    return r;
  }

  // this(a + b*x)
  UniPoly compose_linear(const Rat& a, const Rat& b) const {
    UniPoly r;
    UniPoly lin = UniPoly::linear(a, b);
    for (size_t i = c_.size(); i-- > 0;)
      r = r * lin + UniPoly::constant(c_[i]);
    return r;
  }

  UniPoly pow(int e) const {
    require(e >= 0, ErrorCode::DomainError, "negative polynomial power");
    UniPoly r = UniPoly::constant(Rat(1));
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
  }

  UniPoly monic() const {
    require(!is_zero(), ErrorCode::DomainError, "monic of zero polynomial");
    return *this * (Rat(1) / leading());
  }

  // Monic gcd over Q.
  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      UniPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
  }

  bool is_squarefree() const {
    if (deg() <= 1) return true;
    return gcd(*this, derivative()).deg() == 0;
  }

  // Common multiplier k > 0 turning k*this into a primitive integer
  // polynomial; returns (k, integer coefficient vector).
  std::pair<Rat, std::vector<Int>> primitive_integer() const {
    require(!is_zero(), ErrorCode::DomainError, "primitive part of 0");
    Int l(1);
    for (const Rat& x : c_) l = int_lcm(l, x.den());
    std::vector<Int> z(c_.size());
    Int g(0);
    for (size_t i = 0; i < c_.size(); ++i) {
      z[i] = c_[i].num() * (l / c_[i].den());
      g = int_gcd(g, z[i]);
    }
    for (auto& v : z) v /= g;
    if (z.back() < 0)
      for (auto& v : z) v = -v;
    Rat scale = Rat(l, g);
    if (leading().sign() < 0) scale = -scale;
    return {scale, z};
  }

  std::string str(const std::string& var = "x") const;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rat> c_;
};

inline std::string UniPoly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = deg(); i >= 0; --i) {
    const Rat& a = (*this)[i];
    if (a.is_zero()) continue;
    Rat mag = a.abs();
    if (out.empty()) {
      if (a.sign() < 0) out += "-";
    } else {
      out += a.sign() < 0 ? " - " : " + ";
    }
    bool unit = (mag == Rat(1));
    if (i == 0 || !unit) out += mag.str();
    if (i > 0) {
      if (!unit) out += "*";
      out += var;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out;
}

// Squarefree decomposition (Yun): returns list of (g_i, i) with
// f = lc * prod g_i^i, each g_i monic squarefree, pairwise coprime.
inline std::vector<std::pair<UniPoly, int>> squarefree_decompose(
    const UniPoly& f0) {
  std::vector<std::pair<UniPoly, int>> out;
  require(!f0.is_zero(), ErrorCode::DomainError, "squarefree of 0");
  UniPoly f = f0.monic();
  if (f.deg() == 0) return out;
  UniPoly fp = f.derivative();
  UniPoly a = UniPoly::gcd(f, fp);
  UniPoly b = UniPoly::div_exact(f, a);
  UniPoly c = UniPoly::div_exact(fp, a);
  UniPoly d = c - b.derivative();
  int i = 1;
  while (b.deg() > 0) {
    UniPoly g = UniPoly::gcd(b, d);
    if (g.deg() > 0) out.emplace_back(g, i);
    b = UniPoly::div_exact(b, g);
    c = UniPoly::div_exact(d, g);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

// Monic gcd computed with a primitive pseudo-remainder sequence: content is
// stripped every step, which keeps coefficients integral and small on the
// large numerators/denominators the zeta accumulation produces.
inline UniPoly gcd_primitive(const UniPoly& a0, const UniPoly& b0) {
  if (a0.is_zero()) return b0.is_zero() ? b0 : b0.monic();
  if (b0.is_zero()) return a0.monic();
  auto prim = [](const UniPoly& f) {
    auto [k, z] = f.primitive_integer();
    std::vector<Rat> c(z.size());
    for (size_t i = 0; i < z.size(); ++i) c[i] = Rat(z[i]);
    return UniPoly(std::move(c));
  };
  UniPoly a = prim(a0), b = prim(b0);
  if (a.deg() < b.deg()) std::swap(a, b);
  while (!b.is_zero() && b.deg() > 0) {
    // Pseudo-remainder: scale a so the division is fraction-free.
    Rat scale = b.leading().pow(a.deg() - b.deg() + 1);
    UniPoly r = UniPoly::divmod(a * scale, b).second;
    a = std::move(b);
    b = r.is_zero() ? UniPoly() : prim(r);
  }
  if (!b.is_zero()) return UniPoly::constant(Rat(1));  // constant gcd
  return a.monic();
}

// Resultant of a and b via the Euclidean remainder chain; zero iff they
// share a root in an algebraic closure.
inline Rat resultant(UniPoly a, UniPoly b) {
  if (a.is_zero() || b.is_zero()) return Rat(0);
  if (a.deg() == 0 && b.deg() == 0) return Rat(1);
  Rat acc(1);
  while (true) {
    if (b.deg() == 0) return acc * b.leading().pow(a.deg());
    UniPoly r = UniPoly::divmod(a, b).second;
    if (r.is_zero()) return Rat(0);
    if ((a.deg() % 2) == 1 && (b.deg() % 2) == 1) acc = -acc;
    acc *= b.leading().pow(a.deg() - r.deg());
    a = std::move(b);
    b = std::move(r);
  }
}

}  // namespace igusa
