#pragma once

// Embedded resolution of a plane curve over Q by iterated blow-ups at
// rational points, with p-adic normal-crossing certification.
//
// Given f in Q[x, y] and a prime p, the resolver factors f into Q-irreducible
// components and repeatedly blows up rational points at which the
// configuration of strict transforms and exceptional curves fails to be
// normal crossing inside Z_p x Z_p: singular points of a component equation,
// tangential intersections, and triple points.  Every chart keeps the exact
// polynomial identities
//
//     f(map_x, map_y)   = lead     * prod_c              G_c ^ N_c
//     Jac(map_x, map_y) = jac_lead * prod_{c exceptional} G_c ^ (nu_c - 1)
//
// where G_c is the chart equation of component c, N_c its multiplicity in
// the pullback of f, and nu_c - 1 its multiplicity in the Jacobian of the
// composed chart map.
//
// p-adic chart domains.  Each chart integrates over D1 x Z_p where D1 is
// Z_p or pZ_p.  The base chart has D1 = Z_p.  Blowing up a chart at an
// in-domain center (a, b) produces
//   chart A ("x-chart"):  (u, v) = (a + x, b + x y),   new curve {x = 0},
//                         D1 inherited from the parent,
//   chart B ("y-chart"):  (u, v) = (a + x y, b + y),   new curve {y = 0},
//                         D1 = pZ_p.
// Chart A covers the parent points with |v - b| <= |u - a| and chart B those
// with |u - a| < |v - b|, so the leaf-chart domains partition Z_p x Z_p:
// every p-integral point (and every candidate blow-up center) belongs to
// exactly one leaf chart.  All chart equations keep p-integral coefficients
// because the centers are p-integral rationals.
//
// Each blow-up record stores the data of the new curve E_r needed by the
// residue machinery: N, nu, the rational tangent directions at the center
// (set S, with per-direction multiplicities M_i and mu_i read off the lowest
// forms of the pullbacks of f and of the Jacobian), the direction-free
// Q-irreducible form factors (set S', certified to have no root in
// P^1(Q_p)), and the unit scalars d, e with
//     |f-pullback|   = |d| * prod_S |l_i|^{M_i} * prod_{S'} |h_i|^{M_i}
//     |Jacobian|     = |e| * prod_S |l_i|^{mu_i - 1}
// holding identically on E_r in both charts.
//
// After the loop, the final configuration is certified: the product
// identities are re-checked per leaf chart, and three families of residue
// class scans (singular points, non-transverse pairs, triples) must die out
// over each leaf domain.  Scan survival means a bad point exists without
// rational coordinates (or out of reach of the depth caps); such inputs are
// rejected rather than silently mis-resolved.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "igusa/bipoly.hpp"
#include "igusa/errors.hpp"
#include "igusa/factor_biv.hpp"
#include "igusa/factor_univ.hpp"
#include "igusa/padic.hpp"
#include "igusa/padic_roots.hpp"
#include "igusa/rational.hpp"
#include "igusa/unipoly.hpp"

namespace igusa {

enum class CompKind { Strict, Exceptional };

struct Component {
  int id = -1;
  CompKind kind = CompKind::Strict;
  long N = 0;        // multiplicity in the pullback of f
  long nu = 1;       // 1 + multiplicity in the Jacobian of the chart map
  int born_by = 0;   // blow-up record index (1-based); 0 for strict comps
  BiPoly input_eq;   // defining equation in input coordinates (strict comps)
  bool has_points = true;  // has K-points on the resolved surface over Z_p^2
  std::string name;  // "E_r" for exceptional, rendered equation for strict

  Rat ratio() const { return Rat(Int(nu), Int(N)); }
  Rat candidate_s0() const { return -ratio(); }
};

struct Chart {
  int id = -1;
  int parent = -1;
  int sub = 0;               // 0 = base, 1 = x-chart, 2 = y-chart
  bool first_in_pZp = false; // first coordinate ranges over pZ_p (else Z_p)
  bool leaf = true;
  Rat lead;                  // scalar of the f-pullback identity
  Rat jac_lead;              // scalar of the Jacobian identity
  std::vector<std::pair<int, BiPoly>> eqs;  // (component id, chart equation)
  BiPoly map_x, map_y;       // chart coordinates -> input coordinates

  const BiPoly* eq_of(int comp) const {
    for (const auto& [c, g] : eqs)
      if (c == comp) return &g;
    return nullptr;
  }
  int ord1_min() const { return first_in_pZp ? 1 : 0; }
};

// A rational tangent direction (a1 : a2) at a blow-up center (an element of
// the set S of the record).  The exponent pair (M, mu) drives the residue
// integrand factor |a2 - a1 z|^{M s + mu - 1} on the x-chart of E_r.
struct TangentDir {
  Int a1, a2;         // primitive, a1 > 0, or (0, 1)
  long M = 0;         // sum over comps through the center of N_c * mult
  long mu = 1;        // 1 + same sum over exceptional comps with nu_c - 1
  int neighbor = -1;  // final component crossing E_r at the tracked point
  long rho = 0;       // number of later blow-ups centered at the tracked point
};

// A Q-irreducible homogeneous factor of the lowest form with no rational
// direction over Q_p (an element of the set S'); contributes |h(1, z)|^{M s}.
struct UnitForm {
  BiPoly h;
  int deg = 0;
  long M = 0;
};

struct BlowupRecord {
  int index = 0;   // 1-based; the new curve is named E_index
  int chart = -1;  // chart that was blown up
  Rat cx, cy;      // center in that chart's coordinates
  int comp = -1;   // component id of E_index
  int chart_a = -1, chart_b = -1;
  long N = 0, nu = 0;  // data of E_index
  Rat f_unit = Rat(1);    // d: unit scalar of the f lowest form at the center
  Rat jac_unit = Rat(1);  // e: unit scalar of the Jacobian lowest form
  std::vector<TangentDir> dirs;      // S
  std::vector<UnitForm> unit_forms;  // S'

  Rat s0() const { return Rat(-Int(nu), Int(N)); }
};

struct ResolveOptions {
  long max_blowups = 64;
  long cert_depth = 12;        // depth cap for emptiness scans
  long root_depth = 24;        // depth cap for one-variable root certificates
  std::size_t breadth_cap = 6000;   // live-class cap before a scan gives up
  std::size_t witness_tries = 400;  // alive classes examined for witnesses
};

struct ResolutionData {
  Int p;
  BiPoly f;
  Rat f_lead;  // scalar of the input factorization
  std::vector<Component> comps;
  std::vector<Chart> charts;
  std::vector<BlowupRecord> records;

  std::vector<int> leaf_charts() const {
    std::vector<int> v;
    for (const auto& c : charts)
      if (c.leaf) v.push_back(c.id);
    return v;
  }
  int strict_count() const {
    int n = 0;
    for (const auto& c : comps)
      if (c.kind == CompKind::Strict) ++n;
    return n;
  }
};

namespace detail_resolve {

inline bool in_domain(const Chart& ch, const Rat& x0, const Rat& y0,
                      const Int& p) {
  return ord_rat(x0, p) >= ch.ord1_min() && ord_rat(y0, p) >= 0;
}

inline std::vector<Rat> rational_roots_of(const UniPoly& u) {
  std::vector<Rat> out;
  if (u.deg() < 1) return out;
  for (const auto& [r, m] : rational_roots(u)) out.push_back(r);
  return out;
}

inline UniPoly strip_content(const UniPoly& f) {
  auto [k, z] = f.primitive_integer();
  std::vector<Rat> c(z.size());
  for (size_t i = 0; i < z.size(); ++i) c[i] = Rat(z[i]);
  return UniPoly(std::move(c));
}

// Local data of a curve equation at a rational point.
struct LocalGerm {
  int mult = 0;    // multiplicity = min total degree of the shifted equation
  BiPoly shifted;  // G(x0 + s, y0 + t)
  BiPoly lf;       // lowest form (homogeneous of degree `mult`)
};

inline LocalGerm germ_at(const BiPoly& G, const Rat& x0, const Rat& y0) {
  LocalGerm g;
  g.shifted = G.subst(BiPoly::constant(x0) + BiPoly::var_x(),
                      BiPoly::constant(y0) + BiPoly::var_y());
  g.mult = g.shifted.min_total_deg();
  g.lf = g.shifted.lowest_form();
  return g;
}

// The direction (a1 : a2) annihilated by a nonzero linear form
// alpha x + beta y, as a primitive integer pair with a1 > 0 or (0, 1).
inline std::pair<Int, Int> direction_of_linear(const BiPoly& lf) {
  Rat al = lf.coeff(1, 0), be = lf.coeff(0, 1);
  Int l = int_lcm(al.den(), be.den());
  Int A = al.num() * (l / al.den()), B = be.num() * (l / be.den());
  Int a1(-B), a2(A);
  Int g = int_gcd(a1, a2);
  require(g != 0, ErrorCode::InternalInvariant, "zero linear form");
  a1 /= g;
  a2 /= g;
  if (a1 < 0 || (a1 == 0 && a2 < 0)) {
    a1 = -a1;
    a2 = -a2;
  }
  return {a1, a2};
}

// All rational points where both G and H vanish.  G and H must be distinct
// irreducible polynomials (in particular coprime), which the chart equations
// always are.
inline std::vector<std::pair<Rat, Rat>> common_rational_points(
    const BiPoly& G, const BiPoly& H) {
  std::vector<std::pair<Rat, Rat>> pts;
  const bool gy = G.deg_y() >= 1, hy = H.deg_y() >= 1;
  if (gy && hy) {
    UniPoly R = resultant_y(G, H);
    require(!R.is_zero(), ErrorCode::InternalInvariant,
            "vanishing resultant for coprime components");
    for (const Rat& x0 : rational_roots_of(R)) {
      UniPoly a = G.eval_x(x0), b = H.eval_x(x0);
      if (a.is_zero() || b.is_zero()) continue;  // impossible for irreducibles
      for (const Rat& y0 : rational_roots_of(gcd_primitive(a, b)))
        pts.emplace_back(x0, y0);
    }
  } else if (gy != hy) {
    const BiPoly& P = gy ? H : G;  // the equation that only involves x
    const BiPoly& Q = gy ? G : H;
    for (const Rat& x0 : rational_roots_of(P.eval_y(Rat(0)))) {
      UniPoly q0 = Q.eval_x(x0);
      if (q0.is_zero()) continue;
      for (const Rat& y0 : rational_roots_of(q0)) pts.emplace_back(x0, y0);
    }
  }
  // Two distinct irreducible equations in x alone define disjoint unions of
  // vertical lines with no common point.
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Rational points of the chart domain that break normal crossing: singular
// points of one component equation, tangential intersections of two, and
// points lying on three or more.  Sorted lexicographically.
inline std::vector<std::pair<Rat, Rat>> bad_points(const Chart& ch,
                                                   const Int& p) {
  std::set<std::pair<Rat, Rat>> bad;
  auto note = [&](const Rat& x, const Rat& y) {
    if (in_domain(ch, x, y, p)) bad.insert({x, y});
  };

  // Singular points of a single component equation.  An equation in x alone
  // is irreducible, hence squarefree: its vertical lines are smooth.
  for (const auto& [cid, G] : ch.eqs) {
    if (G.deg_y() < 1) continue;
    BiPoly Gx = G.d_dx(), Gy = G.d_dy();
    UniPoly R = resultant_y(G, Gy);
    require(!R.is_zero(), ErrorCode::InternalInvariant,
            "irreducible equation with non-isolated singularities");
    for (const Rat& x0 : rational_roots_of(R)) {
      UniPoly d = G.eval_x(x0);
      if (d.is_zero()) continue;  // impossible: G irreducible with deg_y >= 1
      if (!Gx.is_zero()) {
        UniPoly gx = Gx.eval_x(x0);
        if (!gx.is_zero()) d = gcd_primitive(d, gx);
      }
      UniPoly gyy = Gy.eval_x(x0);
      if (!gyy.is_zero()) d = gcd_primitive(d, gyy);
      for (const Rat& y0 : rational_roots_of(d)) note(x0, y0);
    }
  }

  // Rational pairwise intersections, grouped by location.
  std::map<std::pair<Rat, Rat>, std::set<size_t>> meet;
  for (size_t i = 0; i < ch.eqs.size(); ++i)
    for (size_t j = i + 1; j < ch.eqs.size(); ++j)
      for (const auto& P :
           common_rational_points(ch.eqs[i].second, ch.eqs[j].second)) {
        meet[P].insert(i);
        meet[P].insert(j);
      }
  for (const auto& [P, through] : meet) {
    if (!in_domain(ch, P.first, P.second, p)) continue;
    if (through.size() >= 3) {
      bad.insert(P);
      continue;
    }
    auto it = through.begin();
    const BiPoly& A = ch.eqs[*it].second;
    const BiPoly& B = ch.eqs[*(++it)].second;
    LocalGerm ga = germ_at(A, P.first, P.second);
    LocalGerm gb = germ_at(B, P.first, P.second);
    if (ga.mult >= 2 || gb.mult >= 2) {
      bad.insert(P);  // singular crossing (also caught by the scan above)
      continue;
    }
    Rat det = ga.lf.coeff(1, 0) * gb.lf.coeff(0, 1) -
              ga.lf.coeff(0, 1) * gb.lf.coeff(1, 0);
    if (det.is_zero()) bad.insert(P);  // tangential crossing
  }
  return std::vector<std::pair<Rat, Rat>>(bad.begin(), bad.end());
}

// Certifies that a Q-irreducible homogeneous form of degree >= 2 has no
// root in P^1(Q_p).  Directions (1 : z) with z in Z_p are the Z_p-roots of
// h(1, z); directions (z : 1) with z in pZ_p are the Z_p-roots of h(pz, 1).
inline void certify_no_rational_direction(const BiPoly& h, const Int& p,
                                          const ResolveOptions& opt) {
  UniPoly h1 = h.eval_x(Rat(1));
  UniPoly h2 = h.eval_y(Rat(1)).compose_linear(Rat(0), Rat(p));
  for (const UniPoly* hp : {&h1, &h2}) {
    UniPoly hs = strip_content(*hp);
    if (hs.deg() < 1) continue;
    LiveScan sc = live_scan(hs, p, opt.root_depth);
    if (sc.died_out) continue;
    if (find_hensel_root_witness(hs, p, opt.root_depth).has_value())
      fail(ErrorCode::NonRationalDirectionUnsupported,
           "tangent direction " + h.str() +
               " = 0 has a p-adic but no rational solution");
    fail(ErrorCode::NeedMoreDepth,
         "direction certificate for " + h.str() + " undecided at depth " +
             std::to_string(opt.root_depth));
  }
}

struct GermEntry {
  int comp = -1;
  int mult = 0;
  BiPoly lf;
};

// Blows up leaf chart `cid` of `rd` at the in-domain rational point (x0, y0):
// appends the blow-up record, the new component, and the two child charts.
inline void blow_up(ResolutionData& rd, int cid, const Rat& x0, const Rat& y0,
                    const ResolveOptions& opt) {
  const Chart par = rd.charts[static_cast<size_t>(cid)];  // copy: stable view
  const Int& p = rd.p;

  BlowupRecord rec;
  rec.index = static_cast<int>(rd.records.size()) + 1;
  rec.chart = cid;
  rec.cx = x0;
  rec.cy = y0;
  rec.comp = static_cast<int>(rd.comps.size());
  rec.chart_a = static_cast<int>(rd.charts.size());
  rec.chart_b = rec.chart_a + 1;

  // Local multiplicities and lowest forms of every chart equation.
  std::vector<GermEntry> germs(par.eqs.size());
  long N = 0, nu_extra = 0;
  Rat d = par.lead, e = par.jac_lead;
  auto cmp = [](const BiPoly& a, const BiPoly& b) {
    return detail_biv::bipoly_less(a, b);
  };
  struct DirAcc {
    long M = 0;
    long mu_part = 0;
  };
  std::map<BiPoly, DirAcc, decltype(cmp)> lin(cmp);
  std::map<BiPoly, long, decltype(cmp)> forms(cmp);

  for (size_t i = 0; i < par.eqs.size(); ++i) {
    const auto& [c, G] = par.eqs[i];
    const Component& comp = rd.comps[static_cast<size_t>(c)];
    bool exc = comp.kind == CompKind::Exceptional;
    LocalGerm g = germ_at(G, x0, y0);
    germs[i] = {c, g.mult, g.lf};
    if (g.mult == 0) {
      Rat val = G.eval(x0, y0);
      d *= val.pow(comp.N);
      if (exc) e *= val.pow(comp.nu - 1);
      continue;
    }
    require(!exc || g.mult == 1, ErrorCode::InternalInvariant,
            "exceptional curve became singular");
    N += comp.N * g.mult;
    if (exc) nu_extra += (comp.nu - 1) * g.mult;
    BivFactorization hf = factor_homogeneous(g.lf);
    d *= hf.lead.pow(comp.N);
    if (exc) e *= hf.lead.pow(comp.nu - 1);
    for (const auto& [form, m] : hf.factors) {
      if (form.total_deg() == 1) {
        DirAcc& acc = lin[form];
        acc.M += comp.N * m;
        if (exc) acc.mu_part += (comp.nu - 1) * m;
      } else {
        require(!exc, ErrorCode::InternalInvariant,
                "exceptional curve with a nonlinear tangent cone");
        forms[form] += comp.N * m;
      }
    }
  }
  require(N >= 1, ErrorCode::InternalInvariant,
          "blow-up center lies on no component");
  rec.N = N;
  rec.nu = nu_extra + 2;
  rec.f_unit = d;
  rec.jac_unit = e;
  for (const auto& [form, acc] : lin) {
    auto [a1, a2] = direction_of_linear(form);
    TangentDir td;
    td.a1 = a1;
    td.a2 = a2;
    td.M = acc.M;
    td.mu = acc.mu_part + 1;
    rec.dirs.push_back(std::move(td));
  }
  std::sort(rec.dirs.begin(), rec.dirs.end(),
            [](const TangentDir& a, const TangentDir& b) {
              return a.a1 != b.a1 ? a.a1 < b.a1 : a.a2 < b.a2;
            });
  for (const auto& [form, M] : forms) {
    certify_no_rational_direction(form, p, opt);
    rec.unit_forms.push_back({form, form.total_deg(), M});
  }

  Component ec;
  ec.id = rec.comp;
  ec.kind = CompKind::Exceptional;
  ec.N = rec.N;
  ec.nu = rec.nu;
  ec.born_by = rec.index;
  ec.has_points = true;
  ec.name = "E_" + std::to_string(rec.index);

  // Child charts.
  for (int side = 0; side < 2; ++side) {
    const bool a_side = side == 0;
    Chart ch;
    ch.id = a_side ? rec.chart_a : rec.chart_b;
    ch.parent = cid;
    ch.sub = a_side ? 1 : 2;
    ch.first_in_pZp = a_side ? par.first_in_pZp : true;
    ch.leaf = true;
    BiPoly X = a_side
                   ? BiPoly::constant(x0) + BiPoly::var_x()
                   : BiPoly::constant(x0) + BiPoly::var_x() * BiPoly::var_y();
    BiPoly Y = a_side
                   ? BiPoly::constant(y0) + BiPoly::var_x() * BiPoly::var_y()
                   : BiPoly::constant(y0) + BiPoly::var_y();
    ch.map_x = par.map_x.subst(X, Y);
    ch.map_y = par.map_y.subst(X, Y);
    ch.lead = par.lead;
    ch.jac_lead = par.jac_lead;
    for (size_t i = 0; i < par.eqs.size(); ++i) {
      const auto& [c, G] = par.eqs[i];
      const Component& comp = rd.comps[static_cast<size_t>(c)];
      int m = germs[i].mult;
      BiPoly T = G.subst(X, Y);
      require((a_side ? T.min_deg_x() : T.min_deg_y()) == m,
              ErrorCode::InternalInvariant, "inexact strict transform");
      T = a_side ? T.shift_down_x(m) : T.shift_down_y(m);
      if (T.is_constant()) {
        Rat cv = T.coeff(0, 0);
        require(!cv.is_zero(), ErrorCode::InternalInvariant,
                "component equation transformed to zero");
        ch.lead *= cv.pow(comp.N);
        if (comp.kind == CompKind::Exceptional)
          ch.jac_lead *= cv.pow(comp.nu - 1);
      } else {
        ch.eqs.emplace_back(c, std::move(T));
      }
    }
    ch.eqs.emplace_back(rec.comp,
                        a_side ? BiPoly::var_x() : BiPoly::var_y());
    rd.charts.push_back(std::move(ch));
  }
  rd.charts[static_cast<size_t>(cid)].leaf = false;
  rd.comps.push_back(std::move(ec));
  rd.records.push_back(std::move(rec));
}

// Final-configuration certificate: exact product identities per leaf chart
// plus emptiness of the singular / non-transverse-pair / triple systems over
// each leaf domain.
inline void certify_normal_crossing(const ResolutionData& rd,
                                    const ResolveOptions& opt) {
  const Int& p = rd.p;
  for (int cid : rd.leaf_charts()) {
    const Chart& ch = rd.charts[static_cast<size_t>(cid)];
    BiPoly F = rd.f.subst(ch.map_x, ch.map_y);
    BiPoly prod = BiPoly::constant(ch.lead);
    for (const auto& [c, G] : ch.eqs)
      prod = prod * G.pow(static_cast<int>(rd.comps[static_cast<size_t>(c)].N));
    require(F == prod, ErrorCode::InternalInvariant,
            "pullback identity failed in chart " + std::to_string(cid));
    BiPoly J = ch.map_x.d_dx() * ch.map_y.d_dy() -
               ch.map_x.d_dy() * ch.map_y.d_dx();
    BiPoly jprod = BiPoly::constant(ch.jac_lead);
    for (const auto& [c, G] : ch.eqs) {
      const Component& comp = rd.comps[static_cast<size_t>(c)];
      if (comp.kind == CompKind::Exceptional)
        jprod = jprod * G.pow(static_cast<int>(comp.nu - 1));
    }
    require(J == jprod, ErrorCode::InternalInvariant,
            "Jacobian identity failed in chart " + std::to_string(cid));

    auto check_empty = [&](const std::vector<BiPoly>& sys,
                           const std::string& what) {
      SystemScan sc =
          system_live_scan(sys, p, ch.ord1_min(), opt.cert_depth,
                           opt.breadth_cap);
      if (sc.died_out) return;
      if (sc.breadth_capped)
        fail(ErrorCode::NeedMoreDepth,
             what + " scan in chart " + std::to_string(cid) +
                 " exceeded the breadth cap");
      fail(ErrorCode::NonRationalCenterUnsupported,
           what + " in chart " + std::to_string(cid) +
               " persists p-adically but has no rational coordinates");
    };
    const auto& eqs = ch.eqs;
    for (const auto& [c, G] : eqs)
      check_empty({G, G.d_dx(), G.d_dy()},
                  "singular point of " +
                      rd.comps[static_cast<size_t>(c)].name);
    for (size_t i = 0; i < eqs.size(); ++i)
      for (size_t j = i + 1; j < eqs.size(); ++j)
        check_empty({eqs[i].second, eqs[j].second,
                     jacobian_det(eqs[i].second, eqs[j].second)},
                    "tangential intersection");
    for (size_t i = 0; i < eqs.size(); ++i)
      for (size_t j = i + 1; j < eqs.size(); ++j)
        for (size_t k = j + 1; k < eqs.size(); ++k)
          check_empty({eqs[i].second, eqs[j].second, eqs[k].second},
                      "triple point");
  }
}

struct TrackedPoint {
  int chart = -1;
  Rat x, y;
};

// Places the direction (a1 : a2) of the record's exceptional curve into the
// child chart that owns it: the x-chart point (0, a2/a1) when ord(a2/a1) >= 0,
// else the y-chart point (a1/a2, 0).
inline TrackedPoint place_direction(const BlowupRecord& rec, const Int& a1,
                                    const Int& a2, const Int& p) {
  long o1 = ord_int(a1, p), o2 = ord_int(a2, p);
  if (o2 >= o1) return {rec.chart_a, Rat(0), Rat(a2, a1)};
  return {rec.chart_b, Rat(a1, a2), Rat(0)};
}

// Follows each rational tangent direction of each record through the later
// blow-ups: counts how many of them are centered at the tracked point (rho)
// and identifies the unique other final component through it (neighbor).
inline void track_directions(ResolutionData& rd) {
  const Int& p = rd.p;
  for (auto& rec : rd.records) {
    for (auto& dir : rec.dirs) {
      TrackedPoint t = place_direction(rec, dir.a1, dir.a2, p);
      long rho = 0;
      for (size_t r2 = static_cast<size_t>(rec.index); r2 < rd.records.size();
           ++r2) {
        const BlowupRecord& nx = rd.records[r2];
        if (nx.chart != t.chart) continue;
        if (nx.cx == t.x && nx.cy == t.y) {
          ++rho;
          const Chart& ch = rd.charts[static_cast<size_t>(nx.chart)];
          const BiPoly* G = ch.eq_of(rec.comp);
          require(G != nullptr, ErrorCode::InternalInvariant,
                  "tracked curve missing from its chart");
          LocalGerm g = germ_at(*G, nx.cx, nx.cy);
          require(g.mult == 1, ErrorCode::InternalInvariant,
                  "tracked curve not smooth at a later center");
          auto [a1, a2] = direction_of_linear(g.lf);
          t = place_direction(nx, a1, a2, p);
        } else {
          Rat dx = t.x - nx.cx, dy = t.y - nx.cy;
          if (ord_rat(dy, p) >= ord_rat(dx, p))
            t = {nx.chart_a, dx, dy / dx};
          else
            t = {nx.chart_b, dx / dy, dy};
        }
      }
      const Chart& fc = rd.charts[static_cast<size_t>(t.chart)];
      require(fc.leaf, ErrorCode::InternalInvariant,
              "tracking ended in a non-leaf chart");
      const BiPoly* own = fc.eq_of(rec.comp);
      require(own != nullptr && own->eval(t.x, t.y).is_zero(),
              ErrorCode::InternalInvariant,
              "tracked point left its exceptional curve");
      int nb = -1;
      for (const auto& [c, G] : fc.eqs) {
        if (c == rec.comp) continue;
        if (G.eval(t.x, t.y).is_zero()) {
          require(nb == -1, ErrorCode::InternalInvariant,
                  "tracked point is not a normal crossing");
          nb = c;
        }
      }
      require(nb != -1, ErrorCode::InternalInvariant,
              "tracked point meets no other component");
      dir.neighbor = nb;
      dir.rho = rho;
    }
  }
}

enum class PointSearch { Found, Empty, Unknown };

// Does the equation G vanish somewhere on the chart domain over Q_p?
// Death of the residue-class scan certifies emptiness; otherwise rational
// zeros and one-variable Hensel witnesses on specializations certify
// existence.  A shallow pass runs first: curves with visible points are
// confirmed before the deep emptiness scan is attempted.
inline PointSearch chart_points_of(const BiPoly& G, const Chart& ch,
                                   const Int& p, const ResolveOptions& opt) {
  auto witness = [&](const std::vector<std::pair<Int, Int>>& reps) {
    size_t tries = std::min(reps.size(), opt.witness_tries);
    for (size_t i = 0; i < tries; ++i) {
      Rat a(reps[i].first), b(reps[i].second);
      if (G.eval(a, b).is_zero()) return true;
      UniPoly hy = G.eval_x(a);
      if (hy.deg() >= 1 &&
          find_hensel_root_witness(strip_content(hy), p, opt.root_depth)
              .has_value())
        return true;
      UniPoly hx = G.eval_y(b);
      if (hx.deg() >= 1) {
        if (ch.first_in_pZp) hx = hx.compose_linear(Rat(0), Rat(p));
        if (hx.deg() >= 1 &&
            find_hensel_root_witness(strip_content(hx), p, opt.root_depth)
                .has_value())
          return true;
      }
    }
    return false;
  };
  SystemScan shallow = system_live_scan({G}, p, ch.ord1_min(),
                                        std::min<long>(3, opt.cert_depth),
                                        opt.breadth_cap);
  if (shallow.died_out) return PointSearch::Empty;
  if (witness(shallow.alive)) return PointSearch::Found;
  SystemScan deep = system_live_scan({G}, p, ch.ord1_min(), opt.cert_depth,
                                     opt.breadth_cap);
  if (deep.died_out) return PointSearch::Empty;
  if (witness(deep.alive)) return PointSearch::Found;
  return PointSearch::Unknown;
}

// Decides which strict components have K-points on the resolved surface over
// the integration domain (exceptional curves always do).
inline void decide_has_points(ResolutionData& rd, const ResolveOptions& opt) {
  std::vector<int> leaves = rd.leaf_charts();
  for (auto& comp : rd.comps) {
    if (comp.kind == CompKind::Exceptional) {
      comp.has_points = true;
      continue;
    }
    bool found = false, unknown = false;
    for (int cid : leaves) {
      const Chart& ch = rd.charts[static_cast<size_t>(cid)];
      const BiPoly* G = ch.eq_of(comp.id);
      if (G == nullptr) continue;
      PointSearch ps = chart_points_of(*G, ch, rd.p, opt);
      if (ps == PointSearch::Found) {
        found = true;
        break;
      }
      if (ps == PointSearch::Unknown) unknown = true;
    }
    if (found) {
      comp.has_points = true;
    } else if (unknown) {
      fail(ErrorCode::NeedMoreDepth,
           "cannot decide whether " + comp.name + " = 0 meets the domain");
    } else {
      comp.has_points = false;
    }
  }
}

}  // namespace detail_resolve

// Resolves f over Z_p x Z_p.  Throws NonRationalCenterUnsupported /
// NonRationalDirectionUnsupported when the resolution would need an
// irrational center or meets an irrational tangent direction over Q_p,
// MaxBlowupsExceeded when the blow-up cap is hit, and NeedMoreDepth when a
// p-adic certificate is inconclusive at the configured depth caps.
inline ResolutionData resolve(const BiPoly& f, const Int& p,
                              const ResolveOptions& opt = {}) {
  using namespace detail_resolve;
  require(is_prime_small(p), ErrorCode::DomainError, "p must be prime");
  require(!f.is_zero(), ErrorCode::DomainError,
          "the zero polynomial has no resolution data");

  ResolutionData rd;
  rd.p = p;
  rd.f = f;

  Chart base;
  base.id = 0;
  base.parent = -1;
  base.sub = 0;
  base.first_in_pZp = false;
  base.leaf = true;
  base.jac_lead = Rat(1);
  base.map_x = BiPoly::var_x();
  base.map_y = BiPoly::var_y();

  if (f.is_constant()) {
    rd.f_lead = f.coeff(0, 0);
    base.lead = rd.f_lead;
    rd.charts.push_back(std::move(base));
    return rd;
  }

  BivFactorization fb = factor_biv(f);
  rd.f_lead = fb.lead;
  base.lead = fb.lead;
  for (const auto& [g, e] : fb.factors) {
    Component c;
    c.id = static_cast<int>(rd.comps.size());
    c.kind = CompKind::Strict;
    c.N = e;
    c.nu = 1;
    c.born_by = 0;
    c.input_eq = g;
    c.has_points = true;
    c.name = g.str();
    base.eqs.emplace_back(c.id, g);
    rd.comps.push_back(std::move(c));
  }
  rd.charts.push_back(std::move(base));

  while (true) {
    std::optional<std::pair<int, std::pair<Rat, Rat>>> first;
    for (int cid : rd.leaf_charts()) {
      auto bp = bad_points(rd.charts[static_cast<size_t>(cid)], p);
      if (!bp.empty()) {
        first = {cid, bp.front()};
        break;
      }
    }
    if (!first.has_value()) break;
    require(static_cast<long>(rd.records.size()) < opt.max_blowups,
            ErrorCode::MaxBlowupsExceeded,
            "resolution did not terminate within " +
                std::to_string(opt.max_blowups) + " blow-ups");
    blow_up(rd, first->first, first->second.first, first->second.second, opt);
  }

  certify_normal_crossing(rd, opt);
  track_directions(rd);
  decide_has_points(rd, opt);
  return rd;
}

}  // namespace igusa
