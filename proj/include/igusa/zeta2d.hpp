#pragma once

// Exact two-variable p-adic integration: computes
//     Z_f(s) = integral over Z_p^2 of |f(x,y)|_p^s dx dy
// as a rational function of t = q^{-s}, by summing closed-form pieces over
// the leaf charts of a resolution (resolve.hpp).
//
// On a leaf chart with coordinates (z1, z2) the integrand pulls back to
//     |lead|^s * |jac_lead| * prod_c |G_c(z1,z2)|^{N_c s + m_c}
// over the chart domain D x Z_p (D = Z_p, or pZ_p when the chart's first
// coordinate is restricted), where the G_c are the chart equations of the
// components, N_c the multiplicities of f along them, and m_c = nu_c - 1
// for exceptional components (their Jacobian contribution), 0 for strict
// ones.  The leaf domains map onto a partition of Z_p^2 up to measure zero,
// so the chart integrals sum to Z_f.
//
// Each chart integral is decomposed into boxes (products of one-dimensional
// cosets) on which every factor either
//   - has constant absolute value, folded into the scalar prefactor, or
//   - is an isometric image of a coordinate offset: |G| = q^{-w} |z - r|
//     on the box, certified by a Newton-lemma criterion that is uniform
//     over the other coordinate,
// and at most one factor per coordinate stays active.  A terminal box then
// contributes (prefactor) x (shell sum or measure per coordinate), where
//     shell(a, b, k) = integral over p^k Z_p of |w|^{a s + b} dw
// is the closed-form geometric sum of zeta_rational.hpp.  Two active curves
// crossing at a rational point of a box are separated by splitting the box
// along the two standard quadratic substitutions
//     (x, y) = (a + z1, b + z1 z2)   with |y - b| <= |x - a|   (Jacobian |z1|)
//     (x, y) = (a + z1 z2, b + z2)   with |x - a| <  |y - b|   (Jacobian |z2|)
// which cover the box exactly up to measure zero; the factors divide out
// exactly and the recursion continues in the two sub-charts.  Boxes where
// no rule applies are subdivided into residue classes; a depth cap guards
// termination (NeedMoreDepth).
//
// Every terminal box is reported as an IntegrationPiece recording the chart,
// the substitution chain, the final box, the per-coordinate exponent pairs,
// and the valuations of the constant prefactors; local_case_integral turns a
// piece into its exact value, and two_var_zeta sums them.

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "igusa/bipoly.hpp"
#include "igusa/dual_graph.hpp"
#include "igusa/errors.hpp"
#include "igusa/padic.hpp"
#include "igusa/padic_roots.hpp"
#include "igusa/rational.hpp"
#include "igusa/resolve.hpp"
#include "igusa/unipoly.hpp"
#include "igusa/zeta_rational.hpp"

namespace igusa {

// Exponent data of one coordinate of a terminal box.  When active (N > 0 or
// m > 0) the coordinate contributes the shell sum
//     integral over p^depth Z_p of |w|^{N s + m} dw,
// after the recorded isometries recentred the factor at the box center;
// otherwise it contributes its measure q^{-depth}.
struct AxisFactor {
  long N = 0;
  long m = 0;
  long depth = 0;

  bool active() const { return N != 0 || m != 0; }
};

// One terminal box of the decomposition.  On the box the integrand equals
//     |eps|^s * |eta| * |w1|^{a1.N s + a1.m} * |w2|^{a2.N s + a2.m}
// where w_i is the offset of the i-th coordinate from the box center and
// |eps| = q^{-f_ord}, |eta| = q^{-jac_ord} collect every constant factor.
struct IntegrationPiece {
  int chart = -1;                  // leaf chart the piece came from
  std::vector<std::string> chain;  // substitutions applied below the chart
  Coset1 box1, box2;               // the terminal box, coordinate by coordinate
  AxisFactor a1, a2;               // per-coordinate exponents
  long f_ord = 0;                  // |eps|^s = t^{f_ord}
  long jac_ord = 0;                // |eta| = q^{-jac_ord}
};

// Closed-form value of a terminal box: the three local cases (two active
// coordinates, one, none) are all products of shell sums and measures.
inline ZetaRational local_case_integral(const Int& q,
                                        const IntegrationPiece& pc) {
  require(pc.f_ord >= 0 && pc.jac_ord >= 0, ErrorCode::InternalInvariant,
          "negative valuation in a terminal box");
  ZetaRational v = ZetaRational::monomial(
      q, Rat(Int(1), int_pow(q, static_cast<unsigned long>(pc.jac_ord))),
      static_cast<int>(pc.f_ord));
  auto axis = [&](const AxisFactor& a) {
    if (!a.active())
      return ZetaRational::scalar(
          q, Rat(Int(1), int_pow(q, static_cast<unsigned long>(a.depth))));
    return ZetaRational::shell(q, a.N, a.m, a.depth);
  };
  v *= axis(pc.a1);
  v *= axis(pc.a2);
  return v;
}

struct ZetaOptions {
  long depth_cap = 40;  // recursion budget (subdivisions + splits) per chart
};

struct ZetaResult {
  ZetaRational zeta;
  std::vector<IntegrationPiece> pieces;
};

namespace detail_zeta {

// One multiplicative factor |G|^{N s + m} of a chart integrand.
struct Term2 {
  BiPoly G;
  long N = 0;
  long m = 0;
};

// Its one-variable counterpart |g|^{N s + m}.
struct Term1 {
  UniPoly g;
  long N = 0;
  long m = 0;
};

// Constant valuations picked up while factors fold away.
struct Scalars {
  long f_ord = 0;    // contributes t^{f_ord}
  long jac_ord = 0;  // contributes q^{-jac_ord}

  void fold(long v, long N, long m) {
    f_ord += v * N;
    jac_ord += v * m;
  }
  Scalars operator+(const Scalars& o) const {
    return {f_ord + o.f_ord, jac_ord + o.jac_ord};
  }
};

// Result of integrating one coordinate over its coset: a shell-or-measure
// axis, constants folded on the way down, and notes for the piece chain.
struct AxisPiece {
  AxisFactor ax;
  Scalars sc;
  std::vector<std::string> notes;
};

// One-variable recursion over a coset: folds factors of constant absolute
// value, reduces a single active factor to a shell sum (directly for a
// rational root, through the Newton isometry |g| = q^{-w} |x - r| for an
// irrational one), and subdivides into residue classes otherwise.
inline void one_dim_pieces(const std::vector<Term1>& terms, const Coset1& dom,
                           const Int& p, long budget,
                           std::vector<AxisPiece>& out,
                           const Scalars& carried = {}) {
  Scalars sc = carried;
  std::vector<const Term1*> active;
  for (const auto& t : terms) {
    require(t.g.deg() >= 1, ErrorCode::InternalInvariant,
            "constant factor reached the one-variable recursion");
    long v = poly_ord_at(t.g, dom.center, p);
    if (v < dom.depth) {
      sc.fold(v, t.N, t.m);  // |g| = q^{-v} on the whole coset
    } else {
      active.push_back(&t);
    }
  }

  if (active.empty()) {
    out.push_back({AxisFactor{0, 0, dom.depth}, sc, {}});
    return;
  }

  if (active.size() == 1) {
    const Term1& t = *active.front();
    if (t.g.deg() == 1) {
      // |g| = |c1| |x - a| with the root a inside the coset (a rational root
      // outside it would have made |g| constant above).
      Rat a = -t.g[0] / t.g[1];
      long va = ord_rat(a - dom.center, p);
      if (va >= dom.depth) {
        sc.fold(ord_rat(t.g[1], p), t.N, t.m);
        out.push_back({AxisFactor{t.N, t.m, dom.depth}, sc, {}});
        return;
      }
      // Root in another class at distance q^{-va}: |g| is constant after all.
      sc.fold(ord_rat(t.g[1], p) + va, t.N, t.m);
      out.push_back({AxisFactor{0, 0, dom.depth}, sc, {}});
      return;
    }
    // Degree >= 2: certify |g| = q^{-w} |x - r| on the coset around a simple
    // root r (rational or not).  Conditions: |g'| constant q^{-w} on the
    // coset, the Newton step from the center lands in the coset, and the
    // coset radius is inside the isometry radius q^{-w-1}.
    long v = poly_ord_at(t.g, dom.center, p);
    long w = poly_ord_at(t.g.derivative(), dom.center, p);
    bool cert = w != kOrdInf && w < dom.depth && dom.depth >= w + 1 &&
                (v == kOrdInf || (v > 2 * w && v - w >= dom.depth));
    if (cert) {
      sc.fold(w, t.N, t.m);
      out.push_back({AxisFactor{t.N, t.m, dom.depth},
                     sc,
                     {"isometry[" + t.g.str() + "]"}});
      return;
    }
  }

  require(budget > 0, ErrorCode::NeedMoreDepth,
          "one-variable integration exceeded the subdivision depth cap");
  std::vector<Term1> rest;
  for (const Term1* t : active) rest.push_back(*t);
  for (const Coset1& child : dom.children(p))
    one_dim_pieces(rest, child, p, budget - 1, out, sc);
}

// Per-coordinate classification of a factor on a box.
enum class TermClass { XOnly, YOnly, Mixed };

inline TermClass classify(const BiPoly& G) {
  if (G.deg_y() == 0) return TermClass::XOnly;
  if (G.deg_x() == 0) return TermClass::YOnly;
  return TermClass::Mixed;
}

inline Term1 to_x_term(const Term2& t) {
  return {t.G.eval_y(Rat(0)), t.N, t.m};
}
inline Term1 to_y_term(const Term2& t) {
  return {t.G.eval_x(Rat(0)), t.N, t.m};
}

// Uniform fiber isometry certificate: on the box bx x by, |dG| is constant
// q^{-w} and every fiber {x} x by carries a unique simple root r(x) of
// G(x, .) with the whole fiber inside the isometry radius, so that
//     |G(x, y)| = q^{-w} |y - r(x)|   for all (x, y) in the box
// and the fiber integral is an x-independent shell sum.  `vG` is the
// valuation of G at the box corner, `kx`/`ky` the box depths.
inline bool fiber_isometry(long vG, long w, long kx, long ky) {
  if (w == kOrdInf || w >= std::min(kx, ky)) return false;
  long g0 = (vG == kOrdInf || vG > kx) ? kx : vG;  // min(vG, kx), inf-safe
  return g0 > 2 * w && g0 - w >= ky && ky >= w + 1;
}

struct BoxFrame {
  int chart = -1;
  std::vector<std::string> chain;
  Scalars sc;
};

inline std::string point_str(const Rat& a, const Rat& b) {
  return "(" + a.str() + "," + b.str() + ")";
}

inline void emit(const BoxFrame& fr, const Coset1& bx, const Coset1& by,
                 const AxisPiece& xp, const AxisPiece& yp,
                 std::vector<IntegrationPiece>& out) {
  IntegrationPiece pc;
  pc.chart = fr.chart;
  pc.chain = fr.chain;
  for (const auto& n : xp.notes) pc.chain.push_back("x:" + n);
  for (const auto& n : yp.notes) pc.chain.push_back("y:" + n);
  pc.box1 = bx;
  pc.box2 = by;
  pc.a1 = xp.ax;
  pc.a2 = yp.ax;
  Scalars total = fr.sc + xp.sc + yp.sc;
  pc.f_ord = total.f_ord;
  pc.jac_ord = total.jac_ord;
  require(pc.f_ord >= 0, ErrorCode::DomainError,
          "f must have p-integral content");
  out.push_back(std::move(pc));
}

inline void box_rec(const std::vector<Term2>& terms, const Coset1& bx,
                    const Coset1& by, const BoxFrame& fr, const Int& p,
                    long budget, std::vector<IntegrationPiece>& out);

// Split a box at a rational point (a, b) of it into the two quadratic
// sub-charts and recurse.  Every active factor divides exactly by the
// corresponding coordinate power (its vanishing order along the new
// exceptional direction); the Jacobian adds one more power.
inline void split_at_point(const std::vector<Term2>& active, const Rat& a,
                           const Rat& b, long k, const BoxFrame& fr,
                           const Int& p, long budget,
                           std::vector<IntegrationPiece>& out) {
  const BiPoly X = BiPoly::var_x(), Y = BiPoly::var_y();
  const BiPoly A = BiPoly::constant(a), B = BiPoly::constant(b);

  // (x, y) = (a + z1, b + z1 z2): z1 in p^k Z_p, z2 in Z_p.
  {
    BoxFrame sub = fr;
    sub.chain.push_back("x-chart@" + point_str(a, b));
    std::vector<Term2> ts;
    long Nz = 0, mz = 1;  // Jacobian |z1|
    for (const Term2& t : active) {
      BiPoly T = t.G.subst(A + X, B + X * Y);
      int mult = T.min_deg_x();
      Nz += t.N * mult;
      mz += t.m * mult;
      BiPoly R = T.shift_down_x(mult);
      if (R.is_constant()) {
        Rat c = R.coeff(0, 0);
        require(!c.is_zero(), ErrorCode::InternalInvariant,
                "vanishing transform in a box split");
        sub.sc.fold(ord_rat(c, p), t.N, t.m);
      } else {
        ts.push_back({R, t.N, t.m});
      }
    }
    ts.push_back({X, Nz, mz});
    box_rec(ts, Coset1{Rat(0), k}, Coset1{Rat(0), 0}, sub, p, budget, out);
  }

  // (x, y) = (a + z1 z2, b + z2): z1 in p Z_p, z2 in p^k Z_p.
  {
    BoxFrame sub = fr;
    sub.chain.push_back("y-chart@" + point_str(a, b));
    std::vector<Term2> ts;
    long Nz = 0, mz = 1;  // Jacobian |z2|
    for (const Term2& t : active) {
      BiPoly T = t.G.subst(A + X * Y, B + Y);
      int mult = T.min_deg_y();
      Nz += t.N * mult;
      mz += t.m * mult;
      BiPoly R = T.shift_down_y(mult);
      if (R.is_constant()) {
        Rat c = R.coeff(0, 0);
        require(!c.is_zero(), ErrorCode::InternalInvariant,
                "vanishing transform in a box split");
        sub.sc.fold(ord_rat(c, p), t.N, t.m);
      } else {
        ts.push_back({R, t.N, t.m});
      }
    }
    ts.push_back({Y, Nz, mz});
    box_rec(ts, Coset1{Rat(0), 1}, Coset1{Rat(0), k}, sub, p, budget, out);
  }
}

inline void box_rec(const std::vector<Term2>& terms, const Coset1& bx,
                    const Coset1& by, const BoxFrame& fr, const Int& p,
                    long budget, std::vector<IntegrationPiece>& out) {
  BoxFrame here = fr;
  std::vector<Term2> active;
  long kmin = std::min(bx.depth, by.depth);
  for (const Term2& t : terms) {
    require(!t.G.is_constant(), ErrorCode::InternalInvariant,
            "constant factor reached the box recursion");
    TermClass cl = classify(t.G);
    long v = ord_rat(t.G.eval(bx.center, by.center), p);
    long thresh = cl == TermClass::XOnly   ? bx.depth
                  : cl == TermClass::YOnly ? by.depth
                                           : kmin;
    if (v < thresh) {
      here.sc.fold(v, t.N, t.m);  // |G| = q^{-v} on the whole box
    } else {
      active.push_back(t);
    }
  }

  std::vector<Term2> xf, yf, mf;
  for (const Term2& t : active) {
    switch (classify(t.G)) {
      case TermClass::XOnly: xf.push_back(t); break;
      case TermClass::YOnly: yf.push_back(t); break;
      case TermClass::Mixed: mf.push_back(t); break;
    }
  }

  // Separable: the two coordinates integrate independently.
  if (mf.empty()) {
    std::vector<Term1> xs, ys;
    for (const Term2& t : xf) xs.push_back(to_x_term(t));
    for (const Term2& t : yf) ys.push_back(to_y_term(t));
    std::vector<AxisPiece> xps, yps;
    one_dim_pieces(xs, bx, p, budget, xps);
    one_dim_pieces(ys, by, p, budget, yps);
    for (const AxisPiece& xp : xps)
      for (const AxisPiece& yp : yps) emit(here, bx, by, xp, yp, out);
    return;
  }

  // One mixed factor, everything else on the other coordinate: integrate
  // the mixed factor along its regular fiber direction (an x-independent
  // shell sum by the uniform isometry), the rest one-dimensionally.
  if (mf.size() == 1) {
    const Term2& t = mf.front();
    long vG = ord_rat(t.G.eval(bx.center, by.center), p);
    if (yf.empty()) {
      long w = ord_rat(t.G.d_dy().eval(bx.center, by.center), p);
      if (fiber_isometry(vG, w, bx.depth, by.depth)) {
        BoxFrame sub = here;
        sub.chain.push_back("y-fiber[" + t.G.str() + "]");
        sub.sc.fold(w, t.N, t.m);
        std::vector<Term1> xs;
        for (const Term2& u : xf) xs.push_back(to_x_term(u));
        std::vector<AxisPiece> xps;
        one_dim_pieces(xs, bx, p, budget, xps);
        AxisPiece yp{AxisFactor{t.N, t.m, by.depth}, Scalars{}, {}};
        for (const AxisPiece& xp : xps) emit(sub, bx, by, xp, yp, out);
        return;
      }
    }
    if (xf.empty()) {
      long w = ord_rat(t.G.d_dx().eval(bx.center, by.center), p);
      if (fiber_isometry(vG, w, by.depth, bx.depth)) {
        BoxFrame sub = here;
        sub.chain.push_back("x-fiber[" + t.G.str() + "]");
        sub.sc.fold(w, t.N, t.m);
        std::vector<Term1> ys;
        for (const Term2& u : yf) ys.push_back(to_y_term(u));
        std::vector<AxisPiece> yps;
        one_dim_pieces(ys, by, p, budget, yps);
        AxisPiece xp{AxisFactor{t.N, t.m, bx.depth}, Scalars{}, {}};
        for (const AxisPiece& yp : yps) emit(sub, bx, by, xp, yp, out);
        return;
      }
    }
  }

  // Two active curves through a rational point of a square box: split the
  // box along the quadratic sub-charts centered there.
  if (bx.depth == by.depth && active.size() >= 2) {
    for (size_t i = 0; i < active.size(); ++i) {
      for (size_t j = i + 1; j < active.size(); ++j) {
        for (const auto& [a, b] :
             detail_resolve::common_rational_points(active[i].G,
                                                    active[j].G)) {
          if (ord_rat(a - bx.center, p) >= bx.depth &&
              ord_rat(b - by.center, p) >= by.depth) {
            // Recenter to the crossing: z = (x - a, y - b) has box depths
            // unchanged and center 0, which split_at_point assumes.
            require(budget > 0, ErrorCode::NeedMoreDepth,
                    "two-variable integration exceeded the subdivision "
                    "depth cap");
            split_at_point(active, a, b, bx.depth, here, p, budget - 1, out);
            return;
          }
        }
      }
    }
  }

  require(budget > 0, ErrorCode::NeedMoreDepth,
          "two-variable integration exceeded the subdivision depth cap");
  if (bx.depth < by.depth) {
    for (const Coset1& cx : bx.children(p))
      box_rec(active, cx, by, here, p, budget - 1, out);
  } else if (by.depth < bx.depth) {
    for (const Coset1& cy : by.children(p))
      box_rec(active, bx, cy, here, p, budget - 1, out);
  } else {
    for (const Coset1& cx : bx.children(p))
      for (const Coset1& cy : by.children(p))
        box_rec(active, cx, cy, here, p, budget - 1, out);
  }
}

}  // namespace detail_zeta

// Exact Igusa zeta function of the resolved input over Z_p^2, with the
// terminal decomposition that produced it.
inline ZetaResult two_var_zeta(const ResolutionData& rd,
                               const ZetaOptions& opt = {}) {
  const Int& p = rd.p;
  ZetaResult res{ZetaRational::zero(p), {}};
  for (int cid : rd.leaf_charts()) {
    const Chart& ch = rd.charts[static_cast<size_t>(cid)];
    detail_zeta::BoxFrame fr;
    fr.chart = ch.id;
    fr.chain = {"chart " + std::to_string(ch.id)};
    long flead = ord_rat(ch.lead, p);
    require(flead != kOrdInf, ErrorCode::InternalInvariant,
            "vanishing chart scalar");
    require(flead >= 0, ErrorCode::DomainError,
            "f must have p-integral content");
    fr.sc.f_ord = flead;
    fr.sc.jac_ord = ord_rat(ch.jac_lead, p);
    require(fr.sc.jac_ord >= 0 && fr.sc.jac_ord != kOrdInf,
            ErrorCode::InternalInvariant, "invalid chart Jacobian scalar");

    std::vector<detail_zeta::Term2> terms;
    for (const auto& [comp_id, eq] : ch.eqs) {
      const Component& c = rd.comps[static_cast<size_t>(comp_id)];
      require(c.id == comp_id, ErrorCode::InternalInvariant,
              "component table out of order");
      long m = c.kind == CompKind::Exceptional ? c.nu - 1 : 0;
      terms.push_back({eq, c.N, m});
    }
    detail_zeta::box_rec(terms, Coset1{Rat(0), ch.ord1_min()},
                         Coset1{Rat(0), 0}, fr, p, opt.depth_cap, res.pieces);
  }
  for (const IntegrationPiece& pc : res.pieces)
    res.zeta += local_case_integral(p, pc);
  return res;
}

// Zeta function of f over the box X = (cx, cy) + (p^depth Z_p)^2: substitute
// x = cx + p^depth x', y = cy + p^depth y' and rescale by the box measure.
inline ZetaResult zeta_on_box(const BiPoly& f, const Box2& X, const Int& p,
                              const ResolveOptions& ropt = {},
                              const ZetaOptions& zopt = {}) {
  require(ord_rat(X.cx, p) >= 0 && ord_rat(X.cy, p) >= 0 && X.depth >= 0,
          ErrorCode::DomainError, "box must sit inside Z_p^2");
  Rat step(int_pow(p, static_cast<unsigned long>(X.depth)));
  BiPoly g = f.subst(BiPoly::constant(X.cx) + BiPoly::var_x() * step,
                     BiPoly::constant(X.cy) + BiPoly::var_y() * step);
  ResolutionData rd = resolve(g, p, ropt);
  ZetaResult res = two_var_zeta(rd, zopt);
  res.zeta = res.zeta * Rat(Int(1), int_pow(p, 2 * static_cast<unsigned long>(
                                                    X.depth)));
  return res;
}

// A candidate pole of Z_f: the negative ratio -nu/N of a component that has
// points on the resolved surface.  The expected order is 2 exactly when two
// components with this ratio cross each other, else 1.  k indexes the
// branch s = s0 + 2 pi i k / (N log q); the real candidate is k = 0.
struct CandidatePole {
  Rat s0;
  std::vector<int> comps;  // contributing component ids
  int expected_order = 1;
  long k = 0;
};

// Candidate poles read off the resolution, grouped by ratio, closest to the
// origin first.
inline std::vector<CandidatePole> candidate_poles(const ResolutionData& rd,
                                                  const DualGraph& g) {
  (void)rd;
  std::map<Rat, CandidatePole> groups;
  for (const DualVertex& v : g.vertices) {
    Rat s0 = -v.ratio;
    auto it = groups.find(s0);
    if (it == groups.end())
      it = groups.emplace(s0, CandidatePole{s0, {}, 1, 0}).first;
    it->second.comps.push_back(v.comp);
  }
  for (auto& [s0, cp] : groups) {
    std::sort(cp.comps.begin(), cp.comps.end());
    for (const DualEdge& e : g.edges) {
      if (std::binary_search(cp.comps.begin(), cp.comps.end(), e.a) &&
          std::binary_search(cp.comps.begin(), cp.comps.end(), e.b)) {
        cp.expected_order = 2;
        break;
      }
    }
  }
  std::vector<CandidatePole> out;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it)
    out.push_back(it->second);
  return out;
}

}  // namespace igusa
