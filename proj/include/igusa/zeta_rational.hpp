#pragma once

// Exact rational functions of t = q^{-s} with denominators kept in the
// factored form prod (1 - q^{-nu} t^N)^mult.  This is the value type all
// the integrators accumulate into.  Queries:
//   - pole_order_at(s0): multiplicity of the real candidate pole s0 < 0,
//     read off the fully reduced denominator via the minimal polynomial
//     t^b - p^a of q^{-s0} (irreducible for gcd(a,b) = 1),
//   - evaluate_mc(s0): exact evaluation at t = p^{a/b} in Q(p^{1/b}),
//   - series_coeffs(M): Taylor coefficients at t = 0 for the counting
//     bridge,
//   - evaluate at a complex t for numeric spot checks.

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "igusa/algebraic_real.hpp"
#include "igusa/errors.hpp"
#include "igusa/rational.hpp"
#include "igusa/unipoly.hpp"

namespace igusa {

class ZetaRational {
 public:
  // Denominator factor key: (nu, N) stands for (1 - q^{-nu} t^N).
  using DenKey = std::pair<long, long>;

  explicit ZetaRational(const Int& q) : q_(q) {
    require(q >= 2, ErrorCode::DomainError, "q must be at least 2");
  }
  static ZetaRational zero(const Int& q) { return ZetaRational(q); }
  static ZetaRational scalar(const Int& q, const Rat& c) {
    ZetaRational z(q);
    z.num_ = UniPoly::constant(c);
    return z;
  }
  static ZetaRational monomial(const Int& q, const Rat& c, int tpow) {
    ZetaRational z(q);
    z.num_ = UniPoly::monomial(tpow, c);
    return z;
  }

  // Integral of |w|^{a s + b} over the shell p^m Z_p (one variable):
  //   (1 - 1/q) (q^{-(b+1)} t^a)^m / (1 - q^{-(b+1)} t^a)   for a >= 1,
  // and the geometric-series constant for a = 0.
  static ZetaRational shell(const Int& q, long a, long b, long m) {
    require(a >= 0 && b >= 0 && m >= 0, ErrorCode::DomainError,
            "shell parameters out of range");
    Rat qinv_pow = Rat(Int(1), int_pow(q, static_cast<unsigned long>(b + 1)));
    Rat lead = (Rat(q) - Rat(1)) / Rat(q);
    if (a == 0) {
      Rat val = lead * qinv_pow.pow(m) / (Rat(1) - qinv_pow);
      return scalar(q, val);
    }
    ZetaRational z(q);
    z.num_ = UniPoly::monomial(static_cast<int>(a * m),
                               lead * qinv_pow.pow(m));
    z.den_[{b + 1, a}] = 1;
    return z;
  }

  const Int& q() const { return q_; }
  const UniPoly& num() const { return num_; }
  const std::map<DenKey, int>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // The polynomial 1 - q^{-nu} t^N.
  static UniPoly den_factor_poly(const Int& q, long nu, long N) {
    UniPoly f = UniPoly::constant(Rat(1)) -
                UniPoly::monomial(static_cast<int>(N),
                                  Rat(Int(1), int_pow(q, static_cast<unsigned long>(nu))));
    return f;
  }

  ZetaRational& mul_den_factor(long nu, long N, int mult = 1) {
    require(nu >= 1 && N >= 1 && mult >= 1, ErrorCode::DomainError,
            "invalid denominator factor");
    den_[{nu, N}] += mult;
    cache_.reset();
    return *this;
  }

  friend ZetaRational operator+(const ZetaRational& a, const ZetaRational& b) {
    require(a.q_ == b.q_, ErrorCode::MismatchedPrime,
            "adding zeta functions over different primes");
    ZetaRational r(a.q_);
    // Common denominator: per-key maximum multiplicity.
    r.den_ = a.den_;
    for (const auto& [k, m] : b.den_)
      r.den_[k] = std::max(r.den_[k], m);
    UniPoly na = a.num_, nb = b.num_;
    for (const auto& [k, m] : r.den_) {
      auto ita = a.den_.find(k);
      auto itb = b.den_.find(k);
      int ma = ita == a.den_.end() ? 0 : ita->second;
      int mb = itb == b.den_.end() ? 0 : itb->second;
      UniPoly f = den_factor_poly(a.q_, k.first, k.second);
      if (m - ma > 0) na = na * f.pow(m - ma);
      if (m - mb > 0) nb = nb * f.pow(m - mb);
    }
    r.num_ = na + nb;
    if (r.num_.is_zero()) r.den_.clear();
    return r;
  }
  friend ZetaRational operator-(const ZetaRational& a, const ZetaRational& b) {
    return a + (Rat(-1) * b);
  }
  friend ZetaRational operator*(const ZetaRational& a, const ZetaRational& b) {
    require(a.q_ == b.q_, ErrorCode::MismatchedPrime,
            "multiplying zeta functions over different primes");
    ZetaRational r(a.q_);
    r.num_ = a.num_ * b.num_;
    if (r.num_.is_zero()) return r;
    r.den_ = a.den_;
    for (const auto& [k, m] : b.den_) r.den_[k] += m;
    return r;
  }
  friend ZetaRational operator*(const Rat& s, const ZetaRational& a) {
    ZetaRational r(a.q_);
    r.num_ = a.num_ * s;
    if (!r.num_.is_zero()) r.den_ = a.den_;
    return r;
  }
  friend ZetaRational operator*(const ZetaRational& a, const Rat& s) {
    return s * a;
  }
  ZetaRational& operator+=(const ZetaRational& o) { return *this = *this + o; }
  ZetaRational& operator*=(const ZetaRational& o) { return *this = *this * o; }

  // Fully reduced numerator / denominator (gcd removed).  Cached.
  std::pair<UniPoly, UniPoly> reduced() const {
    if (!cache_) {
      UniPoly d = UniPoly::constant(Rat(1));
      for (const auto& [k, m] : den_)
        d = d * den_factor_poly(q_, k.first, k.second).pow(m);
      if (num_.is_zero()) {
        cache_ = {UniPoly(), UniPoly::constant(Rat(1))};
      } else {
        UniPoly g = gcd_primitive(num_, d);
        cache_ = {UniPoly::div_exact(num_, g), UniPoly::div_exact(d, g)};
      }
    }
    return *cache_;
  }

  // Decompose a negative rational s0 = -a/b (gcd(a,b) = 1, a, b > 0).
  static std::pair<long, long> pole_parameters(const Rat& s0) {
    require(s0.sign() < 0, ErrorCode::DomainError,
            "candidate poles are negative reals");
    long a = static_cast<long>(-(s0.num().get_si()));
    long b = static_cast<long>(s0.den().get_si());
    return {a, b};
  }

  // Order of the pole of this function at s = s0 < 0 (0 if regular).
  int pole_order_at(const Rat& s0) const {
    auto [a, b] = pole_parameters(s0);
    UniPoly phi = UniPoly::monomial(static_cast<int>(b)) -
                  UniPoly::constant(Rat(int_pow(q_, static_cast<unsigned long>(a))));
    auto [n, d] = reduced();
    int order = 0;
    UniPoly dd = d;
    while (true) {
      auto [quot, rem] = UniPoly::divmod(dd, phi);
      if (!rem.is_zero()) break;
      ++order;
      dd = quot;
    }
    return order;
  }

  // Exact value at t = q^{-s0} = p^{a/b}, living in Q(p^{1/b}).
  AlgebraicReal evaluate_mc(const Rat& s0) const {
    long a, b;
    if (s0.sign() < 0) {
      auto ab = pole_parameters(s0);
      a = ab.first;
      b = ab.second;
    } else {
      a = -s0.num().get_si();
      b = s0.den().get_si();
    }
    auto [n, d] = reduced();
    auto eval_poly = [&](const UniPoly& f) {
      AlgebraicReal acc = AlgebraicReal::from_rat(q_, Rat(0));
      for (int i = 0; i <= f.deg(); ++i) {
        if (f[i].is_zero()) continue;
        acc = acc + AlgebraicReal::root_power(q_, a * i, b) * f[i];
      }
      return acc;
    };
    AlgebraicReal dv = eval_poly(d);
    require(!dv.is_zero(), ErrorCode::PoleAtEvaluation,
            "evaluation point is a pole");
    if (n.is_zero()) return AlgebraicReal::from_rat(q_, Rat(0));
    return eval_poly(n) / dv;
  }

  // Numeric evaluation at complex t (spot checks at non-real points).
  std::complex<double> evaluate_complex(const std::complex<double>& t) const {
    std::complex<double> n(0.0, 0.0), tp(1.0, 0.0);
    for (int i = 0; i <= num_.deg(); ++i) {
      n += num_[i].q().get_d() * tp;
      tp *= t;
    }
    std::complex<double> d(1.0, 0.0);
    for (const auto& [k, m] : den_) {
      std::complex<double> f =
          1.0 - std::pow(t, static_cast<double>(k.second)) /
                    std::pow(q_.get_d(), static_cast<double>(k.first));
      for (int i = 0; i < m; ++i) d *= f;
    }
    return n / d;
  }

  // Taylor coefficients c_0..c_M of the series expansion at t = 0.
  std::vector<Rat> series_coeffs(long M) const {
    std::vector<Rat> c(static_cast<size_t>(M) + 1, Rat(0));
    for (int i = 0; i <= num_.deg() && i <= M; ++i)
      c[static_cast<size_t>(i)] = num_[i];
    for (const auto& [k, m] : den_) {
      Rat r(Int(1), int_pow(q_, static_cast<unsigned long>(k.first)));
      long N = k.second;
      for (int rep = 0; rep < m; ++rep)
        for (long j = N; j <= M; ++j)
          c[static_cast<size_t>(j)] += r * c[static_cast<size_t>(j - N)];
    }
    return c;
  }

  // Structural equality of the represented functions (cross-multiplied).
  friend bool operator==(const ZetaRational& a, const ZetaRational& b) {
    if (a.q_ != b.q_) return false;
    auto [na, da] = a.reduced();
    auto [nb, db] = b.reduced();
    return na * db == nb * da;
  }
  friend bool operator!=(const ZetaRational& a, const ZetaRational& b) {
    return !(a == b);
  }

  std::string str() const {
    std::string s = "(" + num_.str("t") + ")";
    if (!den_.empty()) {
      s += " / [";
      bool first = true;
      for (const auto& [k, m] : den_) {
        if (!first) s += " ";
        first = false;
        s += "(1 - t^" + std::to_string(k.second) + "/q^" +
             std::to_string(k.first) + ")";
        if (m > 1) s += "^" + std::to_string(m);
      }
      s += "]";
    }
    return s;
  }

 private:
  Int q_;
  UniPoly num_;                 // numerator in t (scalars folded in)
  std::map<DenKey, int> den_;   // factored denominator
  mutable std::optional<std::pair<UniPoly, UniPoly>> cache_;
};

}  // namespace igusa
