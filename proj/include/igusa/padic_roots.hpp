#pragma once

// Root detection and liveness scans over Z_p:
//  - congruence solution counting for f(x,y) = 0 mod p^m (with an
//    exhaustive cross-checker),
//  - breadth-first "live class" scans for one variable (which residue
//    classes mod p^k can still reach valuation >= k),
//  - Hensel certificates that a Z_p root exists,
//  - certificates that a polynomial has no zero on (Z/p)^2 (constant
//    absolute value on unit boxes).

#include <optional>
#include <vector>

#include "igusa/bipoly.hpp"
#include "igusa/errors.hpp"
#include "igusa/padic.hpp"
#include "igusa/rational.hpp"
#include "igusa/unipoly.hpp"

namespace igusa {

// Number of (x, y) mod p^m with f(x, y) = 0 mod p^m, computed by lifting
// solutions level by level (a solution mod p^(j+1) reduces to one mod p^j,
// so only live classes need refining).  N_0 = 1 by convention.
inline Int count_congruence_solutions(const BiPoly& f, const Int& p, long m) {
  require(m >= 0, ErrorCode::DomainError, "negative precision");
  if (m == 0) return Int(1);
  Int mod = int_pow(p, static_cast<unsigned long>(m));
  // Reduce coefficients mod p^m once.
  std::vector<std::pair<BiPoly::Key, Int>> terms;
  for (const auto& [k, a] : f.terms())
    terms.emplace_back(k, residue_mod_pk(a, p, m));
  auto eval_mod = [&](const Int& x, const Int& y) {
    Int acc(0);
    // Plain term-by-term evaluation with cached powers.
    int dx = f.deg_x(), dy = f.deg_y();
    std::vector<Int> xs(static_cast<size_t>(std::max(dx, 0)) + 1, Int(1));
    std::vector<Int> ys(static_cast<size_t>(std::max(dy, 0)) + 1, Int(1));
    for (int i = 1; i <= dx; ++i)
      xs[static_cast<size_t>(i)] = xs[static_cast<size_t>(i - 1)] * x % mod;
    for (int j = 1; j <= dy; ++j)
      ys[static_cast<size_t>(j)] = ys[static_cast<size_t>(j - 1)] * y % mod;
    for (const auto& [k, a] : terms)
      acc = (acc + a * xs[static_cast<size_t>(k.first)] % mod *
                       ys[static_cast<size_t>(k.second)]) %
            mod;
    return acc;
  };
  std::vector<std::pair<Int, Int>> live{{Int(0), Int(0)}};
  Int level(1);
  for (long j = 1; j <= m; ++j) {
    Int next_level = level * p;
    std::vector<std::pair<Int, Int>> next;
    Int pj = int_pow(p, static_cast<unsigned long>(j));
    for (const auto& [a, b] : live)
      for (Int i(0); i < p; ++i)
        for (Int i2(0); i2 < p; ++i2) {
          Int x = a + i * level, y = b + i2 * level;
          Int v = eval_mod(x, y);
          mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), pj.get_mpz_t());
          if (v == 0) next.emplace_back(x, y);
        }
    live = std::move(next);
    level = next_level;
  }
  return Int(static_cast<long>(live.size()));
}

// Exhaustive reference count; only valid to call when p^(2m) is small.
inline Int count_congruence_exhaustive(const BiPoly& f, const Int& p, long m) {
  if (m == 0) return Int(1);
  Int mod = int_pow(p, static_cast<unsigned long>(m));
  std::vector<std::pair<BiPoly::Key, Int>> terms;
  for (const auto& [k, a] : f.terms())
    terms.emplace_back(k, residue_mod_pk(a, p, m));
  Int count(0);
  for (Int x(0); x < mod; ++x)
    for (Int y(0); y < mod; ++y) {
      Int acc(0);
      for (const auto& [k, a] : terms) {
        Int t = a;
        for (int i = 0; i < k.first; ++i) t = t * x % mod;
        for (int j = 0; j < k.second; ++j) t = t * y % mod;
        acc = (acc + t) % mod;
      }
      if (acc == 0) ++count;
    }
  return count;
}

// Valuation of h at a rational point, exactly.
inline long poly_ord_at(const UniPoly& h, const Rat& x, const Int& p) {
  return ord_rat(h.eval(x), p);
}

// Live classes of h at depth k: integer representatives c in [0, p^k) with
// ord h(c) >= k.  (For p-integral coefficients this only depends on the
// class of c mod p^k.)
struct LiveScan {
  long depth = 0;                // deepest level scanned
  std::vector<Int> alive;        // representatives alive at `depth`
  bool died_out = false;         // true if some level had no live classes
  long died_at = -1;             // first empty level if died_out
};

inline LiveScan live_scan(const UniPoly& h, const Int& p, long max_depth) {
  LiveScan out;
  std::vector<Int> cur{Int(0)};
  long k = 0;
  while (k < max_depth) {
    Int level = int_pow(p, static_cast<unsigned long>(k));
    Int pnext = level * p;
    std::vector<Int> next;
    for (const auto& c : cur)
      for (Int i(0); i < p; ++i) {
        Int cand = c + i * level;
        if (ord_rat(h.eval(Rat(cand)), p) >= k + 1) next.push_back(cand);
      }
    ++k;
    if (next.empty()) {
      out.died_out = true;
      out.died_at = k;
      out.depth = k - 1;
      out.alive = std::move(cur);
      return out;
    }
    cur = std::move(next);
  }
  out.depth = max_depth;
  out.alive = std::move(cur);
  return out;
}

// Hensel certificate: if for some x0 we find ord h(x0) > 2 ord h'(x0), then
// h has a root in Z_p (so |h| is unbounded in valuation on Z_p).
inline std::optional<Rat> find_hensel_root_witness(const UniPoly& h,
                                                  const Int& p,
                                                  long max_depth) {
  UniPoly hp = h.derivative();
  std::vector<Int> cur{Int(0)};
  for (long k = 0; k <= max_depth; ++k) {
    Int level = int_pow(p, static_cast<unsigned long>(k));
    for (const auto& c : cur) {
      Rat x(c);
      long vh = ord_rat(h.eval(x), p);
      if (vh == kOrdInf) return x;  // exact rational root
      long vd = ord_rat(hp.eval(x), p);
      if (vd != kOrdInf && vh > 2 * vd) return x;
    }
    if (k == max_depth) break;
    std::vector<Int> next;
    for (const auto& c : cur)
      for (Int i(0); i < p; ++i) {
        Int cand = c + i * level;
        if (ord_rat(h.eval(Rat(cand)), p) >= k + 1) next.push_back(cand);
      }
    if (next.empty()) return std::nullopt;  // valuation bounded: no root
    cur = std::move(next);
  }
  return std::nullopt;
}

// True if g(x, y) = 0 mod p has no solution on (Z/p)^2; then |g| = |g|(any
// point) is constant on every unit box around p-integral centers...  Note:
// callers use this on polynomials whose value at every residue pair is a
// p-adic unit, which makes |g| identically 1 on Z_p^2.
inline bool no_zero_mod_p(const BiPoly& g, const Int& p) {
  for (Int x(0); x < p; ++x)
    for (Int y(0); y < p; ++y)
      if (ord_rat(g.eval(Rat(x), Rat(y)), p) >= 1) return false;
  return true;
}

// Same certificate for a homogeneous form on primitive pairs: no zero
// (x, y) mod p with (x, y) != (0, 0).  Certifies the form has no root in
// P^1(Q_p) with Z_p-primitive coordinates.
inline bool no_primitive_zero_mod_p(const BiPoly& h, const Int& p) {
  for (Int x(0); x < p; ++x)
    for (Int y(0); y < p; ++y) {
      if (x == 0 && y == 0) continue;
      if (ord_rat(h.eval(Rat(x), Rat(y)), p) >= 1) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Two-variable residue-class scans over a box D = D1 x Z_p, where D1 is Z_p
// (ord1_min = 0) or pZ_p (ord1_min = 1).  All polynomials must have
// p-integral coefficients so that values on a class are determined mod p^k
// by the class representative.
// ---------------------------------------------------------------------------

struct SystemScan {
  long depth = 0;                            // deepest fully processed level
  std::vector<std::pair<Int, Int>> alive;    // class reps alive at `depth`
  bool died_out = false;                     // some level had no live classes
  long died_at = -1;                         // first empty level if died_out
  bool breadth_capped = false;               // gave up: too many live classes
};

// Keeps the residue classes (a, b) mod p^k on which every polynomial of the
// system vanishes mod p^k.  If the scan dies out, the system has no common
// zero on D (any common zero would keep its own class alive at every level).
inline SystemScan system_live_scan(const std::vector<BiPoly>& sys, const Int& p,
                                   int ord1_min, long max_depth,
                                   std::size_t breadth_cap = 20000) {
  SystemScan out;
  auto vanishes_to = [&](const Int& a, const Int& b, long k) {
    Rat x(a), y(b);
    for (const auto& g : sys)
      if (ord_rat(g.eval(x, y), p) < k) return false;
    return true;
  };
  std::vector<std::pair<Int, Int>> cur{{Int(0), Int(0)}};
  long k = 0;
  while (k < max_depth) {
    Int level = int_pow(p, static_cast<unsigned long>(k));
    std::vector<std::pair<Int, Int>> next;
    for (const auto& [a, b] : cur)
      for (Int i(0); i < p; ++i) {
        Int ca = a + i * level;
        if (k == 0 && ord1_min == 1 && ca != 0) continue;
        for (Int j(0); j < p; ++j) {
          Int cb = b + j * level;
          if (vanishes_to(ca, cb, k + 1)) next.emplace_back(ca, cb);
        }
      }
    ++k;
    if (next.empty()) {
      out.died_out = true;
      out.died_at = k;
      out.depth = k - 1;
      out.alive = std::move(cur);
      return out;
    }
    if (next.size() > breadth_cap) {
      out.breadth_capped = true;
      out.depth = k;
      out.alive = std::move(next);
      return out;
    }
    cur = std::move(next);
  }
  out.depth = max_depth;
  out.alive = std::move(cur);
  return out;
}

inline BiPoly jacobian_det(const BiPoly& g1, const BiPoly& g2) {
  return g1.d_dx() * g2.d_dy() - g1.d_dy() * g2.d_dx();
}

// Two-variable Newton certificate: if min(ord g1(P), ord g2(P)) exceeds
// 2 ord det J(P), the square system (g1, g2) has a common zero in the ball
// |X - P| <= |(g1, g2)(P)| / |det J(P)| around P, hence one congruent to P
// mod p.  Exact common rational zeros certify trivially.
inline bool newton_pair_certifies(const BiPoly& g1, const BiPoly& g2,
                                  const Rat& a, const Rat& b, const Int& p) {
  long v1 = ord_rat(g1.eval(a, b), p);
  long v2 = ord_rat(g2.eval(a, b), p);
  long m = std::min(v1, v2);
  if (m == kOrdInf) return true;  // exact common zero
  long vj = ord_rat(jacobian_det(g1, g2).eval(a, b), p);
  if (vj == kOrdInf) return false;
  return m > 2 * vj;
}

}  // namespace igusa
