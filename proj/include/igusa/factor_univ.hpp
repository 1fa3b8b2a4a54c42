#pragma once

// Factorization of univariate polynomials over Q:
//   squarefree split, then for each squarefree primitive integer part:
//   factor mod a small prime l (distinct-degree + equal-degree splitting),
//   Hensel-lift the modular factors to l^k past the coefficient bound,
//   and recombine subsets with exact trial division.
// Randomized steps draw from a fixed-seed generator, so results (and
// orderings) are reproducible run to run.

#include <algorithm>
#include <random>
#include <utility>
#include <vector>

#include "igusa/errors.hpp"
#include "igusa/rational.hpp"
#include "igusa/unipoly.hpp"

namespace igusa {
namespace detail_factor {

// ---- arithmetic on dense polynomials over Z/l, coefficients in [0, l) ----

using MPoly = std::vector<long long>;

inline Int to_int(long long v) { return Int(static_cast<long>(v)); }

inline void m_trim(MPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int m_deg(const MPoly& a) { return static_cast<int>(a.size()) - 1; }

inline long long m_mulc(long long a, long long b, long long l) {
  return static_cast<long long>(
      static_cast<__int128>(a) * b % l);
}
inline long long m_inv(long long a, long long l) {
  long long t = 0, nt = 1, r = l, nr = a % l;
  if (nr < 0) nr += l;
  while (nr != 0) {
    long long qq = r / nr;
    long long tmp = t - qq * nt; t = nt; nt = tmp;
    tmp = r - qq * nr; r = nr; nr = tmp;
  }
  require(r == 1, ErrorCode::InternalInvariant, "non-invertible mod l");
  return t < 0 ? t + l : t;
}

inline MPoly m_mul(const MPoly& a, const MPoly& b, long long l) {
  if (a.empty() || b.empty()) return {};
  MPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + m_mulc(a[i], b[j], l)) % l;
  }
  m_trim(c);
  return c;
}

inline MPoly m_sub(MPoly a, const MPoly& b, long long l) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] = ((a[i] - b[i]) % l + l) % l;
  m_trim(a);
  return a;
}

inline MPoly m_scale(MPoly a, long long s, long long l) {
  for (auto& c : a) c = m_mulc(c, s, l);
  m_trim(a);
  return a;
}

// Remainder of a by b (lc(b) invertible).
inline MPoly m_rem(MPoly a, const MPoly& b, long long l) {
  int db = m_deg(b);
  long long inv = m_inv(b.back(), l);
  while (m_deg(a) >= db) {
    long long f = m_mulc(a.back(), inv, l);
    int shift = m_deg(a) - db;
    for (int j = 0; j <= db; ++j) {
      auto& t = a[static_cast<size_t>(shift + j)];
      t = ((t - m_mulc(f, b[static_cast<size_t>(j)], l)) % l + l) % l;
    }
    m_trim(a);
  }
  return a;
}

inline std::pair<MPoly, MPoly> m_divmod(MPoly a, const MPoly& b, long long l) {
  int db = m_deg(b);
  long long inv = m_inv(b.back(), l);
  if (m_deg(a) < db) return {MPoly{}, a};
  MPoly q(static_cast<size_t>(m_deg(a) - db) + 1, 0);
  while (m_deg(a) >= db) {
    long long f = m_mulc(a.back(), inv, l);
    int shift = m_deg(a) - db;
    q[static_cast<size_t>(shift)] = f;
    for (int j = 0; j <= db; ++j) {
      auto& t = a[static_cast<size_t>(shift + j)];
      t = ((t - m_mulc(f, b[static_cast<size_t>(j)], l)) % l + l) % l;
    }
    m_trim(a);
  }
  m_trim(q);
  return {q, a};
}

inline MPoly m_gcd(MPoly a, MPoly b, long long l) {
  while (!b.empty()) {
    MPoly r = m_rem(a, b, l);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) a = m_scale(a, m_inv(a.back(), l), l);  // monic
  return a;
}

inline MPoly m_deriv(const MPoly& a, long long l) {
  MPoly d;
  for (size_t i = 1; i < a.size(); ++i)
    d.push_back(m_mulc(a[i], static_cast<long long>(i % static_cast<size_t>(l)),
                       l));
  m_trim(d);
  return d;
}

// a^e mod f, exponent a big integer.
inline MPoly m_powmod(const MPoly& a, const Int& e, const MPoly& f,
                      long long l) {
  MPoly r{1};
  MPoly base = m_rem(a, f, l);
  size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return r;
  for (size_t i = bits; i-- > 0;) {
    r = m_rem(m_mul(r, r, l), f, l);
    if (mpz_tstbit(e.get_mpz_t(), i))
      r = m_rem(m_mul(r, base, l), f, l);
  }
  return r;
}

// Equal-degree splitting of h (a product of distinct monic irreducibles of
// degree d) over Z/l, l odd.
inline void m_equal_degree(const MPoly& h, int d, long long l,
                           std::mt19937_64& rng, std::vector<MPoly>& out) {
  if (m_deg(h) == d) {
    out.push_back(h);
    return;
  }
  Int e = (int_pow(to_int(l), static_cast<unsigned long>(d)) - 1) / 2;
  std::uniform_int_distribution<long long> dist(0, l - 1);
  while (true) {
    MPoly a(static_cast<size_t>(m_deg(h)), 0);
    for (auto& c : a) c = dist(rng);
    m_trim(a);
    if (m_deg(a) < 1) continue;
    MPoly b = m_powmod(a, e, h, l);
    if (b.empty()) b = MPoly{};
    b = m_sub(b, MPoly{1}, l);
    MPoly g = m_gcd(b, h, l);
    if (m_deg(g) > 0 && m_deg(g) < m_deg(h)) {
      MPoly rest = m_divmod(h, g, l).first;
      rest = m_scale(rest, m_inv(rest.back(), l), l);
      m_equal_degree(g, d, l, rng, out);
      m_equal_degree(rest, d, l, rng, out);
      return;
    }
  }
}

// Full factorization of a squarefree monic polynomial over Z/l into monic
// irreducibles (distinct-degree, then equal-degree).
inline std::vector<MPoly> m_factor_squarefree(MPoly f, long long l,
                                              std::mt19937_64& rng) {
  std::vector<MPoly> out;
  MPoly h{0, 1};  // x
  int d = 0;
  while (m_deg(f) > 0) {
    ++d;
    if (2 * d > m_deg(f)) {  // remainder is irreducible
      out.push_back(f);
      break;
    }
    h = m_powmod(h, to_int(l), f, l);
    MPoly g = m_gcd(m_sub(h, MPoly{0, 1}, l), f, l);
    if (m_deg(g) > 0) {
      m_equal_degree(g, d, l, rng, out);
      f = m_divmod(f, g, l).first;
      f = m_scale(f, m_inv(f.back(), l), l);
      h = m_rem(h, f, l);
    }
  }
  return out;
}

// ---- arithmetic on dense polynomials over Z/m, m a big prime power ----

using ZkPoly = std::vector<Int>;

inline void zk_trim(ZkPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
inline int zk_deg(const ZkPoly& a) { return static_cast<int>(a.size()) - 1; }

inline Int zk_red(const Int& x, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline ZkPoly zk_mod(ZkPoly a, const Int& m) {
  for (auto& c : a) c = zk_red(c, m);
  zk_trim(a);
  return a;
}

inline ZkPoly zk_mul(const ZkPoly& a, const ZkPoly& b, const Int& m) {
  if (a.empty() || b.empty()) return {};
  ZkPoly c(a.size() + b.size() - 1, Int(0));
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  return zk_mod(std::move(c), m);
}

inline ZkPoly zk_add(ZkPoly a, const ZkPoly& b, const Int& m) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return zk_mod(std::move(a), m);
}

inline ZkPoly zk_sub(ZkPoly a, const ZkPoly& b, const Int& m) {
  if (a.size() < b.size()) a.resize(b.size(), Int(0));
  for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  return zk_mod(std::move(a), m);
}

// Divide by monic b.
inline std::pair<ZkPoly, ZkPoly> zk_divmod_monic(ZkPoly a, const ZkPoly& b,
                                                 const Int& m) {
  int db = zk_deg(b);
  require(db >= 0 && b.back() == 1, ErrorCode::InternalInvariant,
          "zk division needs monic divisor");
  if (zk_deg(a) < db) return {ZkPoly{}, a};
  ZkPoly q(static_cast<size_t>(zk_deg(a) - db) + 1, Int(0));
  while (zk_deg(a) >= db) {
    Int f = a.back();
    int shift = zk_deg(a) - db;
    q[static_cast<size_t>(shift)] = f;
    for (int j = 0; j <= db; ++j)
      a[static_cast<size_t>(shift + j)] =
          zk_red(a[static_cast<size_t>(shift + j)] -
                     f * b[static_cast<size_t>(j)],
                 m);
    zk_trim(a);
  }
  zk_trim(q);
  return {q, a};
}

inline ZkPoly zk_scale(ZkPoly a, const Int& s, const Int& m) {
  for (auto& c : a) c = zk_red(c * s, m);
  zk_trim(a);
  return a;
}

// Representative with coefficients in (-m/2, m/2].
inline std::vector<Int> zk_symmetric(const ZkPoly& a, const Int& m) {
  std::vector<Int> out(a.size());
  Int half = m / 2;
  for (size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] > half ? Int(a[i] - m) : a[i];
  return out;
}

// One quadratic Hensel step: from f = g*h (mod m), s*g + t*h = 1 (mod m),
// h monic, to the same data mod m^2.
struct HenselPair {
  ZkPoly g, h, s, t;
  Int m;
};

inline void hensel_step(const ZkPoly& f, HenselPair& hp) {
  Int m2 = hp.m * hp.m;
  ZkPoly fm = zk_mod(f, m2);
  ZkPoly e = zk_sub(fm, zk_mul(hp.g, hp.h, m2), m2);
  auto [q, r] = zk_divmod_monic(zk_mul(hp.s, e, m2), hp.h, m2);
  ZkPoly g2 = zk_add(zk_add(hp.g, zk_mul(hp.t, e, m2), m2),
                     zk_mul(q, hp.g, m2), m2);
  ZkPoly h2 = zk_add(hp.h, r, m2);
  ZkPoly b = zk_sub(zk_add(zk_mul(hp.s, g2, m2), zk_mul(hp.t, h2, m2), m2),
                    ZkPoly{Int(1)}, m2);
  auto [c, d] = zk_divmod_monic(zk_mul(hp.s, b, m2), h2, m2);
  ZkPoly s2 = zk_sub(hp.s, d, m2);
  ZkPoly t2 = zk_sub(zk_sub(hp.t, zk_mul(hp.t, b, m2), m2),
                     zk_mul(c, g2, m2), m2);
  hp = HenselPair{g2, h2, s2, t2, m2};
}

// Bezout cofactors mod l for coprime a, b: s*a + t*b = 1, deg s < deg b,
// deg t < deg a.
inline std::pair<MPoly, MPoly> m_bezout(const MPoly& a, const MPoly& b,
                                        long long l) {
  MPoly r0 = a, r1 = b;
  MPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r2] = m_divmod(r0, r1, l);
    MPoly s2 = m_sub(s0, m_mul(q, s1, l), l);
    MPoly t2 = m_sub(t0, m_mul(q, t1, l), l);
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  require(m_deg(r0) == 0, ErrorCode::InternalInvariant,
          "expected coprime factors in bezout");
  long long inv = m_inv(r0[0], l);
  MPoly s = m_scale(s0, inv, l), t = m_scale(t0, inv, l);
  // Enforce degree bounds: replace s by s mod b and fold qs*a into t, since
  // (s - qs*b)*a + (t + qs*a)*b = s*a + t*b.
  auto [qs, sr] = m_divmod(s, b, l);
  t = m_sub(t, m_sub(MPoly{}, m_mul(qs, a, l), l), l);
  return {sr, t};
}

inline ZkPoly zk_from_m(const MPoly& a) {
  ZkPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = to_int(a[i]);
  return r;
}

// Lift a list of monic mod-l factors of F (F = lc(F) * prod gs mod l,
// lc(F) invertible mod l) to monic factors mod M (M a power of l).
inline void hensel_list(const ZkPoly& F, const std::vector<MPoly>& gs,
                        long long l, const Int& M,
                        std::vector<ZkPoly>& out) {
  if (gs.size() == 1) {
    ZkPoly f = zk_mod(F, M);
    Int lead = f.back();
    Int inv;
    require(mpz_invert(inv.get_mpz_t(), lead.get_mpz_t(), M.get_mpz_t()) != 0,
            ErrorCode::InternalInvariant, "leading coeff not invertible");
    out.push_back(zk_scale(f, inv, M));
    return;
  }
  size_t half = gs.size() / 2;
  std::vector<MPoly> ls(gs.begin(), gs.begin() + static_cast<long>(half));
  std::vector<MPoly> rs(gs.begin() + static_cast<long>(half), gs.end());
  Int lint = to_int(l);
  ZkPoly Fl = zk_mod(F, lint);
  require(!Fl.empty() && zk_deg(Fl) == zk_deg(F), ErrorCode::InternalInvariant,
          "degree drop mod l in lifting");
  // g = lc(F) * prod(ls) mod l ; h = prod(rs) mod l (monic)
  MPoly g{Fl.back().get_si()};
  for (const auto& x : ls) g = m_mul(g, x, l);
  MPoly h{1};
  for (const auto& x : rs) h = m_mul(h, x, l);
  auto [s, t] = m_bezout(g, h, l);
  HenselPair hp{zk_from_m(g), zk_from_m(h), zk_from_m(s), zk_from_m(t),
                lint};
  while (hp.m < M) hensel_step(F, hp);
  ZkPoly G = zk_mod(hp.g, M), H = zk_mod(hp.h, M);
  hensel_list(G, ls, l, M, out);
  hensel_list(H, rs, l, M, out);
}

}  // namespace detail_factor

// Factorization over Q: f = lead * prod factors[i].first ^ factors[i].second,
// each factor monic irreducible over Q, sorted (degree, then coefficients).
struct Factorization {
  Rat lead;
  std::vector<std::pair<UniPoly, int>> factors;
};

namespace detail_factor {

// Factor a primitive squarefree integer polynomial (deg >= 1) into its
// irreducible primitive integer factors.
inline std::vector<UniPoly> factor_sf_primitive(const std::vector<Int>& z0) {
  std::vector<UniPoly> out;
  int n = static_cast<int>(z0.size()) - 1;
  std::vector<Rat> zr(z0.size());
  for (size_t i = 0; i < z0.size(); ++i) zr[i] = Rat(z0[i]);
  UniPoly Z(zr);
  if (n <= 1) {
    out.push_back(Z);
    return out;
  }
  // Choose an odd prime l: squarefree reduction, lc not divisible.
  long long l = 0;
  Int cand(2);
  std::mt19937_64 rng(0x5eed1234abcd99ULL);
  while (true) {
    mpz_nextprime(cand.get_mpz_t(), cand.get_mpz_t());
    long long lc = cand.get_si();
    if (z0.back() % cand == 0) continue;
    MPoly zm(z0.size());
    for (size_t i = 0; i < z0.size(); ++i)
      zm[i] = zk_red(z0[i], cand).get_si();
    m_trim(zm);
    if (m_deg(zm) != n) continue;
    MPoly d = m_deriv(zm, lc);
    if (m_deg(m_gcd(zm, d, lc)) != 0) continue;
    l = lc;
    break;
  }
  // Factor mod l.
  MPoly zm(z0.size());
  for (size_t i = 0; i < z0.size(); ++i) zm[i] = zk_red(z0[i], to_int(l)).get_si();
  MPoly zmon = m_scale(zm, m_inv(zm.back(), l), l);
  std::vector<MPoly> mf = m_factor_squarefree(zmon, l, rng);
  std::sort(mf.begin(), mf.end());
  if (mf.size() == 1) {
    out.push_back(Z);
    return out;
  }
  // Landau-Mignotte style bound: |coeff of lc * any factor| <= lc * 2^n * |z|_2.
  Int norm2(0);
  for (const auto& c : z0) norm2 += c * c;
  Int b = sqrt(norm2) + 1;
  Int bound = ::abs(z0.back()) * int_pow(Int(2), static_cast<unsigned long>(n + 1)) * b * 2;
  Int M = to_int(l);
  while (M < bound) M *= M;
  ZkPoly F(z0.begin(), z0.end());
  std::vector<ZkPoly> lifted;
  hensel_list(zk_mod(F, M), mf, l, M, lifted);
  // Subset recombination with exact trial division.
  std::vector<int> alive(lifted.size());
  for (size_t i = 0; i < lifted.size(); ++i) alive[i] = static_cast<int>(i);
  UniPoly rem = Z;
  auto try_subset = [&](const std::vector<int>& subset) -> bool {
    ZkPoly prod{zk_red(Int(rem.leading().num()), M)};
    for (int i : subset) prod = zk_mul(prod, lifted[static_cast<size_t>(i)], M);
    std::vector<Int> sym = zk_symmetric(prod, M);
    // Primitive part of the candidate.
    Int g(0);
    for (const auto& c : sym) g = int_gcd(g, c);
    if (g == 0) return false;
    std::vector<Rat> cr(sym.size());
    for (size_t i = 0; i < sym.size(); ++i) cr[i] = Rat(Int(sym[i] / g));
    UniPoly candp(cr);
    if (candp.deg() < 1) return false;
    auto [q, r] = UniPoly::divmod(rem, candp);
    if (!r.is_zero()) return false;
    // Accept: candidate is a true factor.
    auto [ks, kz] = candp.primitive_integer();
    std::vector<Rat> kr(kz.size());
    for (size_t i = 0; i < kz.size(); ++i) kr[i] = Rat(kz[i]);
    out.push_back(UniPoly(kr));
    auto [qs, qz] = q.primitive_integer();
    std::vector<Rat> qr(qz.size());
    for (size_t i = 0; i < qz.size(); ++i) qr[i] = Rat(qz[i]);
    rem = UniPoly(qr);
    std::vector<int> next;
    for (int i : alive)
      if (std::find(subset.begin(), subset.end(), i) == subset.end())
        next.push_back(i);
    alive = next;
    return true;
  };
  for (size_t card = 1; card <= lifted.size(); ++card) {
    bool progressed = true;
    while (progressed && 2 * card <= alive.size()) {
      progressed = false;
      // Enumerate subsets of `alive` of size `card`.
      std::vector<int> idx(card);
      for (size_t i = 0; i < card; ++i) idx[i] = static_cast<int>(i);
      while (true) {
        std::vector<int> subset(card);
        for (size_t i = 0; i < card; ++i)
          subset[i] = alive[static_cast<size_t>(idx[i])];
        if (try_subset(subset)) {
          progressed = true;
          break;
        }
        // next combination
        int i = static_cast<int>(card) - 1;
        while (i >= 0 &&
               idx[static_cast<size_t>(i)] ==
                   static_cast<int>(alive.size() - card + static_cast<size_t>(i)))
          --i;
        if (i < 0) break;
        ++idx[static_cast<size_t>(i)];
        for (size_t j = static_cast<size_t>(i) + 1; j < card; ++j)
          idx[j] = idx[j - 1] + 1;
      }
    }
  }
  if (rem.deg() >= 1) out.push_back(rem);
  return out;
}

}  // namespace detail_factor

// Full factorization over Q into monic irreducibles with multiplicities.
inline Factorization factor_rational(const UniPoly& f) {
  require(!f.is_zero(), ErrorCode::DomainError, "factorization of 0");
  Factorization res;
  res.lead = f.leading();
  if (f.deg() == 0) return res;
  auto sq = squarefree_decompose(f);
  for (const auto& [g, mult] : sq) {
    auto [k, z] = g.primitive_integer();
    auto irr = detail_factor::factor_sf_primitive(z);
    for (const auto& h : irr) res.factors.emplace_back(h.monic(), mult);
  }
  std::sort(res.factors.begin(), res.factors.end(),
            [](const auto& a, const auto& b) {
              if (a.first.deg() != b.first.deg())
                return a.first.deg() < b.first.deg();
              for (int i = a.first.deg(); i >= 0; --i) {
                if (a.first[i] != b.first[i]) return a.first[i] < b.first[i];
              }
              return a.second < b.second;
            });
  return res;
}

inline bool is_irreducible_q(const UniPoly& f) {
  if (f.deg() <= 0) return false;
  if (f.deg() == 1) return true;
  auto fac = factor_rational(f);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

// Rational roots with multiplicities, sorted ascending.
inline std::vector<std::pair<Rat, int>> rational_roots(const UniPoly& f) {
  std::vector<std::pair<Rat, int>> out;
  if (f.deg() < 1) return out;
  auto fac = factor_rational(f);
  for (const auto& [g, m] : fac.factors)
    if (g.deg() == 1) out.emplace_back(-g[0], m);  // monic x + c -> root -c
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace igusa
