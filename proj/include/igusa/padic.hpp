#pragma once

// p-adic basics: valuations, absolute values, residues, the coset / box
// types the integrators recurse over, and exact congruence solution counts.

#include <string>
#include <utility>
#include <vector>

#include "igusa/bipoly.hpp"
#include "igusa/errors.hpp"
#include "igusa/rational.hpp"

namespace igusa {

inline bool is_prime_small(const Int& p) {
  return mpz_probab_prime_p(p.get_mpz_t(), 40) != 0;
}

// |x|_p = p^{-ord(x)} as an exact rational; |0| = 0.
inline Rat abs_p(const Rat& x, const Int& p) {
  if (x.is_zero()) return Rat(0);
  long v = ord_rat(x, p);
  Int pw = int_pow(p, static_cast<unsigned long>(v < 0 ? -v : v));
  return v >= 0 ? Rat(Int(1), pw) : Rat(pw);
}

// x must be p-integral (ord >= 0); returns the residue in [0, p).
inline long residue_of(const Rat& x, const Int& p) {
  require(ord_rat(x, p) >= 0, ErrorCode::DomainError,
          "residue of non-integral value");
  Int n = x.num(), d = x.den(), dinv, r;
  require(mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), p.get_mpz_t()) != 0,
          ErrorCode::InternalInvariant, "denominator not invertible mod p");
  r = n * dinv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return r.get_si();
}

// x mod p^k in [0, p^k) for p-integral x.
inline Int residue_mod_pk(const Rat& x, const Int& p, long k) {
  require(ord_rat(x, p) >= 0, ErrorCode::DomainError,
          "residue of non-integral value");
  Int m = int_pow(p, static_cast<unsigned long>(k));
  Int dinv, r;
  require(mpz_invert(dinv.get_mpz_t(), x.den().get_mpz_t(), m.get_mpz_t()) != 0,
          ErrorCode::InternalInvariant, "denominator not invertible mod p^k");
  r = x.num() * dinv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  return r;
}

// One-dimensional coset c + p^depth Z_p.  Centers are p-integral rationals.
struct Coset1 {
  Rat center;
  long depth = 0;

  Rat measure(const Int& p) const {
    return Rat(Int(1), int_pow(p, static_cast<unsigned long>(depth)));
  }
  std::vector<Coset1> children(const Int& p) const {
    std::vector<Coset1> out;
    Rat step(int_pow(p, static_cast<unsigned long>(depth)));
    for (Int i(0); i < p; ++i)
      out.push_back(Coset1{center + Rat(i) * step, depth + 1});
    return out;
  }
  bool contains(const Rat& x, const Int& p) const {
    return ord_rat(x - center, p) >= depth;
  }
};

namespace detail_padic {

// Coefficients of f reduced into [0, p^m), indexed rows[j][i] for x^i y^j.
// Requires every coefficient to be p-integral.
inline std::vector<std::vector<Int>> reduced_rows(const BiPoly& f,
                                                  const Int& p, long m) {
  int dx = std::max(f.deg_x(), 0), dy = std::max(f.deg_y(), 0);
  std::vector<std::vector<Int>> rows(
      static_cast<size_t>(dy) + 1,
      std::vector<Int>(static_cast<size_t>(dx) + 1, Int(0)));
  for (const auto& [k, a] : f.terms()) {
    require(ord_rat(a, p) >= 0, ErrorCode::DomainError,
            "coefficient denominators must be prime to p");
    rows[static_cast<size_t>(k.second)][static_cast<size_t>(k.first)] =
        residue_mod_pk(a, p, m);
  }
  return rows;
}

// f(x, y) mod `mod`, split so the x-dependent part is shared across the
// inner y loop: eval_rows fixes x, eval_col then runs Horner in y.
inline std::vector<Int> eval_rows(const std::vector<std::vector<Int>>& rows,
                                  const Int& x, const Int& mod) {
  std::vector<Int> v(rows.size());
  for (size_t j = 0; j < rows.size(); ++j) {
    Int acc(0);
    for (size_t i = rows[j].size(); i-- > 0;) {
      acc = acc * x + rows[j][i];
      mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
    }
    v[j] = acc;
  }
  return v;
}

inline Int eval_col(const std::vector<Int>& v, const Int& y, const Int& mod) {
  Int acc(0);
  for (size_t j = v.size(); j-- > 0;) {
    acc = acc * y + v[j];
    mpz_fdiv_r(acc.get_mpz_t(), acc.get_mpz_t(), mod.get_mpz_t());
  }
  return acc;
}

}  // namespace detail_padic

// Exact number of pairs (x, y) mod p^m with f(x, y) ≡ 0 mod p^m.  Found by
// recursive lifting: only the residue classes that already solve the
// congruence mod p^j are refined mod p^{j+1}, so the work is proportional
// to the number of solutions, never to the full p^{2m} grid (m > 1).
inline Int count_congruence_solutions(const BiPoly& f, long m, const Int& p) {
  require(m >= 0, ErrorCode::DomainError, "modulus exponent must be >= 0");
  require(is_prime_small(p), ErrorCode::DomainError, "p must be prime");
  if (m == 0) return Int(1);
  // Pull out the p-power content: f = p^e g with g nonzero mod p, so that
  // {f ≡ 0 mod p^m} = {g ≡ 0 mod p^{m-e}} and each class inflates by p^{2e}.
  long e = kOrdInf;
  for (const auto& [k, a] : f.terms()) {
    long v = ord_rat(a, p);
    require(v >= 0, ErrorCode::DomainError,
            "coefficient denominators must be prime to p");
    e = std::min(e, v);
  }
  if (e >= m)  // includes f = 0: the congruence is vacuous
    return int_pow(p, static_cast<unsigned long>(2 * m));
  if (e > 0) {
    BiPoly g = f * Rat(Int(1), int_pow(p, static_cast<unsigned long>(e)));
    return int_pow(p, static_cast<unsigned long>(2 * e)) *
           count_congruence_solutions(g, m - e, p);
  }

  auto rows = detail_padic::reduced_rows(f, p, m);
  std::vector<std::pair<Int, Int>> sols;
  Int mod = p;
  for (Int x(0); x < p; ++x) {
    auto v = detail_padic::eval_rows(rows, x, mod);
    for (Int y(0); y < p; ++y)
      if (detail_padic::eval_col(v, y, mod) == 0) sols.emplace_back(x, y);
  }
  for (long level = 2; level <= m; ++level) {
    Int step = mod;
    mod *= p;
    std::vector<std::pair<Int, Int>> next;
    for (const auto& [x0, y0] : sols)
      for (Int i(0); i < p; ++i) {
        Int x = x0 + i * step;
        auto v = detail_padic::eval_rows(rows, x, mod);
        for (Int j(0); j < p; ++j) {
          Int y = y0 + j * step;
          if (detail_padic::eval_col(v, y, mod) == 0) next.emplace_back(x, y);
        }
      }
    sols = std::move(next);
  }
  return Int(sols.size());
}

// Reference implementation by full enumeration of [0, p^m)^2; O(p^{2m}).
// Used to cross-check the lifting counter on small instances.
inline Int count_congruence_exhaustive(const BiPoly& f, long m, const Int& p) {
  require(m >= 0, ErrorCode::DomainError, "modulus exponent must be >= 0");
  if (m == 0) return Int(1);
  Int mod = int_pow(p, static_cast<unsigned long>(m));
  auto rows = detail_padic::reduced_rows(f, p, m);
  Int cnt(0);
  for (Int x(0); x < mod; ++x) {
    auto v = detail_padic::eval_rows(rows, x, mod);
    for (Int y(0); y < mod; ++y)
      if (detail_padic::eval_col(v, y, mod) == 0) ++cnt;
  }
  return cnt;
}

// Square two-dimensional box (cx, cy) + (p^depth Z_p)^2.
struct Box2 {
  Rat cx, cy;
  long depth = 0;

  Rat measure(const Int& p) const {
    return Rat(Int(1), int_pow(p, static_cast<unsigned long>(2 * depth)));
  }
  std::vector<Box2> children(const Int& p) const {
    std::vector<Box2> out;
    Rat step(int_pow(p, static_cast<unsigned long>(depth)));
    for (Int i(0); i < p; ++i)
      for (Int j(0); j < p; ++j)
        out.push_back(Box2{cx + Rat(i) * step, cy + Rat(j) * step, depth + 1});
    return out;
  }
  bool contains(const Rat& x, const Rat& y, const Int& p) const {
    return ord_rat(x - cx, p) >= depth && ord_rat(y - cy, p) >= depth;
  }
};

}  // namespace igusa
