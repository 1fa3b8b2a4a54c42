#pragma once
// Bivariate polynomial factorization over Q.
//
// Tools: content/primitive split with respect to y, bivariate gcd by a
// primitive pseudo-remainder sequence, radical, and full irreducible
// factorization.  The irreducible split of a squarefree primitive part
// specializes x to a good rational value, factors the resulting univariate
// polynomial over Q, Hensel-lifts the factors (x - x0)-adically with exact
// rational arithmetic, and recombines subsets of the lifted factors; every
// recombination candidate is certified by exact trial division, so the
// output carries its own proof.  Homogeneous forms factor through
// dehomogenization and need no lifting.

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "igusa/bipoly.hpp"
#include "igusa/errors.hpp"
#include "igusa/factor_univ.hpp"
#include "igusa/rational.hpp"
#include "igusa/unipoly.hpp"

namespace igusa {

// Monic gcd over Q[x] of the y-coefficients; zero polynomial for f = 0.
inline UniPoly content_y(const BiPoly& f) {
  UniPoly g;
  for (const auto& c : f.y_coeffs()) {
    if (c.is_zero()) continue;
    g = g.is_zero() ? c.monic() : gcd_primitive(g, c);
    if (g.deg() == 0) return UniPoly::constant(Rat(1));
  }
  return g;
}

// f with its y-content removed (f = 0 stays 0).
inline BiPoly primitive_part_y(const BiPoly& f) {
  if (f.is_zero()) return f;
  return BiPoly::div_exact(f, BiPoly::from_x_poly(content_y(f)));
}

namespace detail_biv {

// Coefficient vector in y over Q[x]; index = power of y.
using YV = std::vector<UniPoly>;

inline void yv_norm(YV& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}
inline int yv_deg(const YV& a) { return static_cast<int>(a.size()) - 1; }

// Pseudo-remainder of a by b in y: repeated elimination of the leading
// y-term after scaling by lc_y(b), so every division is fraction-free in
// the coefficient ring Q[x].
inline YV yv_prem(YV a, const YV& b) {
  yv_norm(a);
  int db = yv_deg(b);
  require(db >= 0, ErrorCode::DomainError, "pseudo-remainder by 0");
  const UniPoly& lb = b.back();
  while (yv_deg(a) >= db && db >= 0) {
    int da = yv_deg(a);
    UniPoly la = a.back();
    YV nx(static_cast<size_t>(da), UniPoly());
    // nx = lb*a - la*y^(da-db)*b, which drops the degree-da term.
    for (int i = 0; i < da; ++i) nx[static_cast<size_t>(i)] = a[static_cast<size_t>(i)] * lb;
    for (int i = 0; i < db; ++i)
      nx[static_cast<size_t>(i + da - db)] =
          nx[static_cast<size_t>(i + da - db)] - la * b[static_cast<size_t>(i)];
    a = std::move(nx);
    yv_norm(a);
  }
  return a;
}

inline YV yv_primitive(const YV& a) {
  UniPoly g;
  for (const auto& c : a)
    if (!c.is_zero()) {
      g = g.is_zero() ? c.monic() : gcd_primitive(g, c);
      if (g.deg() == 0) break;
    }
  if (g.is_zero() || g.deg() == 0) return a;
  YV r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i] = a[i].is_zero() ? a[i] : UniPoly::div_exact(a[i], g);
  return r;
}

}  // namespace detail_biv

// Gcd in Q[x,y], normalized to integer coefficients with unit content and a
// positive lexicographically-last term.  gcd(0, 0) = 0.
inline BiPoly gcd_biv(const BiPoly& a, const BiPoly& b) {
  using namespace detail_biv;
  if (a.is_zero()) return b.is_zero() ? b : b.primitive();
  if (b.is_zero()) return a.primitive();
  UniPoly ca = content_y(a), cb = content_y(b);
  UniPoly cg = gcd_primitive(ca, cb);
  BiPoly A = primitive_part_y(a), B = primitive_part_y(b);
  if (A.deg_y() == 0 || B.deg_y() == 0) {
    // One side has no y-dependence beyond its content, so the primitive
    // parts are coprime and only the contents share factors.
    return BiPoly::from_x_poly(cg).primitive();
  }
  YV u = A.y_coeffs(), v = B.y_coeffs();
  if (yv_deg(u) < yv_deg(v)) std::swap(u, v);
  while (true) {
    YV r = yv_prem(u, v);
    if (r.empty()) break;
    if (yv_deg(r) == 0) {
      // Constant in y: the primitive parts are coprime.
      return BiPoly::from_x_poly(cg).primitive();
    }
    u = std::move(v);
    v = yv_primitive(r);
  }
  BiPoly g = primitive_part_y(BiPoly::from_y_coeffs(v));
  return (g * BiPoly::from_x_poly(cg)).primitive();
}

// Product of the distinct irreducible factors, without multiplicity.
inline BiPoly radical_biv(const BiPoly& f) {
  require(!f.is_zero(), ErrorCode::DomainError, "radical of 0");
  UniPoly cx = content_y(f);
  BiPoly P = primitive_part_y(f);
  BiPoly out = BiPoly::constant(Rat(1));
  if (cx.deg() > 0) out = BiPoly::from_x_poly(UniPoly::div_exact(cx, gcd_primitive(cx, cx.derivative())));
  if (P.deg_y() > 0) {
    BiPoly d = gcd_biv(P, P.d_dy());
    out = out * (d.is_constant() ? P : BiPoly::div_exact(P, d));
  }
  return out.primitive();
}

namespace detail_biv {

// ---- truncated power series in X = x - x0, exact rational coefficients ----

inline UniPoly strunc(const UniPoly& s, long m) {
  if (s.deg() < m) return s;
  std::vector<Rat> c(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) c[static_cast<size_t>(i)] = s[static_cast<int>(i)];
  return UniPoly(std::move(c));
}

// Multiplicative inverse of s mod X^m (s(0) != 0).
inline UniPoly sinv(const UniPoly& s, long m) {
  require(!s[0].is_zero(), ErrorCode::InternalInvariant,
          "series inverse needs a unit constant term");
  std::vector<Rat> c(static_cast<size_t>(m), Rat(0));
  c[0] = Rat(1) / s[0];
  for (long k = 1; k < m; ++k) {
    Rat acc(0);
    for (long j = 1; j <= k; ++j) acc += s[static_cast<int>(j)] * c[static_cast<size_t>(k - j)];
    c[static_cast<size_t>(k)] = -acc / s[0];
  }
  return UniPoly(std::move(c));
}

// Polynomial in y whose coefficients are series in X truncated mod X^m.
using SPoly = std::vector<UniPoly>;

inline void sp_norm(SPoly& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}
inline int sp_deg(const SPoly& a) { return static_cast<int>(a.size()) - 1; }

inline SPoly sp_trunc(const SPoly& a, long m) {
  SPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = strunc(a[i], m);
  sp_norm(r);
  return r;
}
inline SPoly sp_add(const SPoly& a, const SPoly& b) {
  SPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  sp_norm(r);
  return r;
}
inline SPoly sp_sub(const SPoly& a, const SPoly& b) {
  SPoly r(std::max(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
  sp_norm(r);
  return r;
}
inline SPoly sp_mul(const SPoly& a, const SPoly& b, long m) {
  if (a.empty() || b.empty()) return {};
  SPoly r(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = r[i + j] + strunc(a[i] * b[j], m);
  }
  return sp_trunc(r, m);
}
inline SPoly sp_one() { return {UniPoly::constant(Rat(1))}; }

// Division by b monic in y; exact long division, coefficients mod X^m.
inline std::pair<SPoly, SPoly> sp_divmod_monic(const SPoly& a0, const SPoly& b,
                                               long m) {
  SPoly a = sp_trunc(a0, m);
  int db = sp_deg(b);
  require(db >= 0 && b.back().deg() == 0 && b.back()[0] == Rat(1),
          ErrorCode::InternalInvariant, "series division needs a monic divisor");
  if (sp_deg(a) < db) return {{}, a};
  SPoly q(static_cast<size_t>(sp_deg(a) - db) + 1);
  for (int i = sp_deg(a); i >= db; --i) {
    UniPoly c = a[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    q[static_cast<size_t>(i - db)] = c;
    for (int j = 0; j <= db; ++j)
      a[static_cast<size_t>(i - db + j)] =
          strunc(a[static_cast<size_t>(i - db + j)] - c * b[static_cast<size_t>(j)], m);
  }
  sp_norm(a);
  sp_norm(q);
  return {q, a};
}

inline SPoly sp_from_ypoly(const UniPoly& u) {
  SPoly r(u.coeffs().size());
  for (size_t i = 0; i < u.coeffs().size(); ++i)
    r[i] = UniPoly::constant(u.coeffs()[i]);
  sp_norm(r);
  return r;
}

// Bezout cofactors over Q[y] for coprime a, b: s*a + t*b = 1 with
// deg s < deg b and deg t < deg a.
inline std::pair<UniPoly, UniPoly> ue_bezout(const UniPoly& a,
                                             const UniPoly& b) {
  UniPoly r0 = a, r1 = b;
  UniPoly s0 = UniPoly::constant(Rat(1)), s1, t0, t1 = UniPoly::constant(Rat(1));
  while (!r1.is_zero()) {
    auto [q, r2] = UniPoly::divmod(r0, r1);
    UniPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1); r1 = std::move(r2);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  require(r0.deg() == 0, ErrorCode::InternalInvariant,
          "expected coprime polynomials in bezout");
  Rat inv = Rat(1) / r0.leading();
  UniPoly s = s0 * inv, t = t0 * inv;
  auto [qs, sr] = UniPoly::divmod(s, b);
  t = t + qs * a;
  return {sr, t};
}

// Quadratic lifting step: from f = g*h and s*g + t*h = 1 mod X^m, with h
// monic in y, to the same data mod X^(2m).
struct SHenselPair {
  SPoly g, h, s, t;
  long m = 1;
};

inline void s_hensel_step(const SPoly& f, SHenselPair& hp) {
  long m2 = 2 * hp.m;
  SPoly e = sp_sub(sp_trunc(f, m2), sp_mul(hp.g, hp.h, m2));
  auto [q, r] = sp_divmod_monic(sp_mul(hp.s, e, m2), hp.h, m2);
  SPoly g2 = sp_add(sp_add(hp.g, sp_mul(hp.t, e, m2)), sp_mul(q, hp.g, m2));
  SPoly h2 = sp_add(hp.h, r);
  SPoly b = sp_sub(sp_add(sp_mul(hp.s, g2, m2), sp_mul(hp.t, h2, m2)), sp_one());
  auto [c, d] = sp_divmod_monic(sp_mul(hp.s, b, m2), h2, m2);
  SPoly s2 = sp_sub(hp.s, d);
  SPoly t2 = sp_sub(sp_sub(hp.t, sp_mul(hp.t, b, m2)), sp_mul(c, g2, m2));
  hp = SHenselPair{sp_trunc(g2, m2), sp_trunc(h2, m2), sp_trunc(s2, m2),
                   sp_trunc(t2, m2), m2};
}

// Lift the coprime monic factors gs of f(x0, y)/lc to monic-in-y factors of
// F mod X^M by recursive pair splitting.
inline void s_hensel_list(const SPoly& F, const std::vector<UniPoly>& gs,
                          long M, std::vector<SPoly>& out) {
  if (gs.size() == 1) {
    SPoly f = sp_trunc(F, M);
    require(!f.empty(), ErrorCode::InternalInvariant, "zero polynomial in lifting");
    UniPoly inv = sinv(f.back(), M);
    SPoly r(f.size());
    for (size_t i = 0; i + 1 < f.size(); ++i) r[i] = strunc(f[i] * inv, M);
    r[f.size() - 1] = UniPoly::constant(Rat(1));
    out.push_back(std::move(r));
    return;
  }
  size_t half = gs.size() / 2;
  std::vector<UniPoly> ls(gs.begin(), gs.begin() + static_cast<long>(half));
  std::vector<UniPoly> rs(gs.begin() + static_cast<long>(half), gs.end());
  UniPoly g0 = UniPoly::constant(F.back()[0]);
  for (const auto& u : ls) g0 = g0 * u;
  UniPoly h0 = UniPoly::constant(Rat(1));
  for (const auto& u : rs) h0 = h0 * u;
  auto [s0, t0] = ue_bezout(g0, h0);
  SHenselPair hp{sp_from_ypoly(g0), sp_from_ypoly(h0), sp_from_ypoly(s0),
                 sp_from_ypoly(t0), 1};
  while (hp.m < M) s_hensel_step(F, hp);
  s_hensel_list(sp_trunc(hp.g, M), ls, M, out);
  s_hensel_list(sp_trunc(hp.h, M), rs, M, out);
}

// Deterministic ordering used for factor lists.
inline bool bipoly_less(const BiPoly& a, const BiPoly& b) {
  if (a.total_deg() != b.total_deg()) return a.total_deg() < b.total_deg();
  if (a.deg_y() != b.deg_y()) return a.deg_y() < b.deg_y();
  if (a.deg_x() != b.deg_x()) return a.deg_x() < b.deg_x();
  auto ia = a.terms().begin(), ib = b.terms().begin();
  for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first < ib->first;
    if (!(ia->second == ib->second)) return ia->second < ib->second;
  }
  return a.terms().size() < b.terms().size();
}

}  // namespace detail_biv

// Irreducible factors (each primitive-normalized, no multiplicities) of a
// squarefree polynomial with trivial y-content and deg_y >= 1.
inline std::vector<BiPoly> factor_squarefree_primitive_y(const BiPoly& F0) {
  using namespace detail_biv;
  BiPoly F = F0.primitive();
  int dy = F.deg_y();
  require(dy >= 1, ErrorCode::DomainError,
          "squarefree factorization step needs deg_y >= 1");
  std::vector<BiPoly> out;
  if (dy == 1) {
    out.push_back(F);
    return out;
  }
  if (F.deg_x() <= 0) {
    for (const auto& [u, e] : factor_rational(F.eval_x(Rat(0))).factors) {
      require(e == 1, ErrorCode::InternalInvariant, "unexpected repeated factor");
      out.push_back(BiPoly::from_y_poly(u).primitive());
    }
    std::sort(out.begin(), out.end(), bipoly_less);
    return out;
  }

  // Good specialization: leading y-coefficient survives and the specialized
  // polynomial is squarefree of full degree.
  UniPoly L = F.y_coeffs().back();
  long trials = 10 * static_cast<long>(F.deg_x() + 1) * (dy + 1) + 10;
  std::optional<Rat> found;
  UniPoly f0;
  for (long k = 0; k <= trials; ++k) {
    Rat x0 = (k % 2 == 0) ? Rat(Int(k / 2), Int(1)) : Rat(Int(-(k + 1) / 2), Int(1));
    if (L.eval(x0).is_zero()) continue;
    UniPoly cand = F.eval_x(x0);
    if (cand.deg() != dy) continue;
    if (UniPoly::gcd(cand, cand.derivative()).deg() != 0) continue;
    found = x0;
    f0 = cand;
    break;
  }
  require(found.has_value(), ErrorCode::InternalInvariant,
          "no good specialization found");
  Rat x0 = *found;

  auto uf = factor_rational(f0);
  std::vector<UniPoly> mods;
  for (const auto& [u, e] : uf.factors) {
    require(e == 1, ErrorCode::InternalInvariant, "unexpected repeated factor");
    mods.push_back(u);
  }
  if (mods.size() == 1) {
    out.push_back(F);
    return out;
  }

  // Shift to X = x - x0 and lift the modular split.
  long m = static_cast<long>(F.deg_x()) + L.deg() + 1;
  YV yc = F.y_coeffs();
  SPoly Fs(yc.size());
  for (size_t i = 0; i < yc.size(); ++i)
    Fs[i] = yc[i].is_zero() ? yc[i] : strunc(yc[i].compose_linear(x0, Rat(1)), m);
  sp_norm(Fs);
  std::vector<SPoly> lifted;
  s_hensel_list(Fs, mods, m, lifted);
  UniPoly Lsh = strunc(L.compose_linear(x0, Rat(1)), m);

  // Recombine subsets; exact trial division certifies each candidate.
  BiPoly rem = F;
  std::vector<size_t> alive(lifted.size());
  for (size_t i = 0; i < alive.size(); ++i) alive[i] = i;
  auto candidate = [&](const std::vector<size_t>& pick) {
    SPoly prod{Lsh};
    for (size_t idx : pick) prod = sp_mul(prod, lifted[idx], m);
    std::vector<UniPoly> cs(prod.size());
    for (size_t i = 0; i < prod.size(); ++i)
      cs[i] = prod[i].is_zero() ? prod[i] : prod[i].compose_linear(-x0, Rat(1));
    return primitive_part_y(BiPoly::from_y_coeffs(cs)).primitive();
  };
  size_t take = 1;
  while (2 * take <= alive.size()) {
    // Lexicographic combinations of `take` members of alive.
    std::vector<size_t> pos(take);
    for (size_t i = 0; i < take; ++i) pos[i] = i;
    bool accepted = false;
    while (true) {
      std::vector<size_t> pick(take);
      for (size_t i = 0; i < take; ++i) pick[i] = alive[pos[i]];
      BiPoly C = candidate(pick);
      auto q = BiPoly::try_div_exact(rem, C);
      if (q.has_value() && !C.is_constant()) {
        out.push_back(C);
        rem = *q;
        std::vector<size_t> na;
        for (size_t v : alive)
          if (std::find(pick.begin(), pick.end(), v) == pick.end()) na.push_back(v);
        alive = std::move(na);
        accepted = true;
        break;
      }
      // next combination
      size_t i = take;
      while (i-- > 0) {
        if (pos[i] + (take - i) < alive.size()) {
          ++pos[i];
          for (size_t j = i + 1; j < take; ++j) pos[j] = pos[j - 1] + 1;
          break;
        }
        if (i == 0) { i = take + 1; break; }
      }
      if (i == take + 1) break;
    }
    if (!accepted) ++take;
  }
  if (!rem.is_constant()) out.push_back(rem.primitive());
  std::sort(out.begin(), out.end(), bipoly_less);
  return out;
}

// Full factorization over Q: f = lead * prod factors[i] ^ mult[i], each
// factor irreducible with integer unit-content coefficients and positive
// lexicographically-last term, sorted.  The reassembled product is checked
// exactly before returning.
struct BivFactorization {
  Rat lead;
  std::vector<std::pair<BiPoly, int>> factors;
};

inline BivFactorization factor_biv(const BiPoly& f) {
  using namespace detail_biv;
  require(!f.is_zero(), ErrorCode::DomainError, "factorization of 0");
  std::vector<std::pair<BiPoly, int>> fac;
  UniPoly cx = content_y(f);
  BiPoly P = primitive_part_y(f);
  if (cx.deg() > 0)
    for (const auto& [u, e] : factor_rational(cx).factors)
      fac.emplace_back(BiPoly::from_x_poly(u).primitive(), e);
  if (P.deg_y() > 0) {
    BiPoly D = gcd_biv(P, P.d_dy());
    BiPoly S = D.is_constant() ? P : BiPoly::div_exact(P, D);
    for (const BiPoly& G : factor_squarefree_primitive_y(S)) {
      int e = 0;
      while (true) {
        auto q = BiPoly::try_div_exact(P, G);
        if (!q.has_value()) break;
        P = *q;
        ++e;
      }
      require(e >= 1, ErrorCode::InternalInvariant, "lost factor in recombination");
      fac.emplace_back(G, e);
    }
  }
  std::sort(fac.begin(), fac.end(),
            [](const auto& a, const auto& b) { return bipoly_less(a.first, b.first); });

  BiPoly prod = BiPoly::constant(Rat(1));
  for (const auto& [g, e] : fac) prod = prod * g.pow(e);
  auto lq = BiPoly::try_div_exact(f, prod);
  require(lq.has_value() && lq->is_constant(), ErrorCode::InternalInvariant,
          "factorization reassembly failed");
  return BivFactorization{lq->coeff(0, 0), std::move(fac)};
}

// Factorization of a nonzero homogeneous form: coordinate factors split off
// directly and the rest factors through its dehomogenization, so no lifting
// is involved.  Same normalization and verification as factor_biv.
inline BivFactorization factor_homogeneous(const BiPoly& h) {
  using namespace detail_biv;
  require(!h.is_zero() && h.is_homogeneous(), ErrorCode::DomainError,
          "homogeneous factorization needs a nonzero homogeneous form");
  std::vector<std::pair<BiPoly, int>> fac;
  int jx = std::max(h.min_deg_x(), 0), ky = std::max(h.min_deg_y(), 0);
  BiPoly H = h.shift_down_x(jx).shift_down_y(ky);
  if (jx > 0) fac.emplace_back(BiPoly::var_x(), jx);
  if (ky > 0) fac.emplace_back(BiPoly::var_y(), ky);
  if (!H.is_constant()) {
    int D = H.total_deg();
    UniPoly u = H.eval_x(Rat(1));
    require(u.deg() == D, ErrorCode::InternalInvariant,
            "dehomogenization dropped degree");
    for (const auto& [ui, e] : factor_rational(u).factors) {
      BiPoly U;
      for (int l = 0; l <= ui.deg(); ++l)
        U = U + BiPoly::monomial(ui.deg() - l, l, ui[l]);
      fac.emplace_back(U.primitive(), e);
    }
  }
  std::sort(fac.begin(), fac.end(),
            [](const auto& a, const auto& b) { return bipoly_less(a.first, b.first); });
  BiPoly prod = BiPoly::constant(Rat(1));
  for (const auto& [g, e] : fac) prod = prod * g.pow(e);
  auto lq = BiPoly::try_div_exact(h, prod);
  require(lq.has_value() && lq->is_constant(), ErrorCode::InternalInvariant,
          "homogeneous reassembly failed");
  return BivFactorization{lq->coeff(0, 0), std::move(fac)};
}

}  // namespace igusa
