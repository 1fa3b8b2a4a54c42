#pragma once

// Pipeline driver and deterministic report rendering.  A JobSpec selects
// the input polynomial, the prime, an optional box domain, and option
// knobs; analyze_job runs parse -> resolve -> zeta -> dual graph ->
// classification -> oracle and collects every artifact.  Renderers emit
// byte-stable plain text, JSON, and a DOT drawing of the dual graph.

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "igusa/dual_graph.hpp"
#include "igusa/errors.hpp"
#include "igusa/oracle.hpp"
#include "igusa/parse.hpp"
#include "igusa/poletheory.hpp"
#include "igusa/resolve.hpp"
#include "igusa/zeta2d.hpp"

namespace igusa {

// ---------------------------------------------------------------------------
// Job specification and exit-code policy
// ---------------------------------------------------------------------------

struct JobSpec {
  std::string f_text;
  Int p{3};
  std::optional<Box2> domain;  // absent: all of Z_p^2
  long oracle_mmax = 5;        // 0 disables the counting oracle
  ResolveOptions ropt{};
  ZetaOptions zopt{};
  ClassifyOptions copt{};
};

// Documented process exit codes:
//   0 success, 2 parse error, 3 unsupported input class,
//   4 precision/size cap reached, 5 internal invariant failure.
inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
      return 2;
    case ErrorCode::MismatchedPrime:
    case ErrorCode::ReducibleFactor:
    case ErrorCode::EmptyTree:
    case ErrorCode::NonRationalCenterUnsupported:
    case ErrorCode::NonRationalDirectionUnsupported:
    case ErrorCode::MultipleSingularPoints:
    case ErrorCode::HypothesisViolated:
    case ErrorCode::AlphaZero:
    case ErrorCode::DomainError:
      return 3;
    case ErrorCode::NeedMoreDepth:
    case ErrorCode::MaxBlowupsExceeded:
      return 4;
    case ErrorCode::PoleAtEvaluation:
    case ErrorCode::InternalInvariant:
      return 5;
  }
  return 5;
}

// ---------------------------------------------------------------------------
// Pipeline driver
// ---------------------------------------------------------------------------

struct AnalysisResult {
  JobSpec job;
  BiPoly f;        // parsed input
  BiPoly g;        // after the domain substitution (equals f on Z_p^2)
  Rat scale{1};    // box measure: Z on the domain = scale * (zeta of g)
  ResolutionData rd;
  // Placeholder q = 2 until analyze_job assigns the real results.
  ZetaResult zr{ZetaRational(Int(2)), {}};  // zeta of g over Z_p^2
  ZetaRational zeta_domain{Int(2)};         // scale * zr.zeta
  DualGraph graph;
  bool have_mp = false;
  MinimalPartCheck mp;
  std::vector<CandidatePole> cands;
  PoleReport poles;
  bool oracle_ran = false;
  PoincareData oracle;
  bool oracle_ok = false;
};

inline BiPoly apply_domain(const BiPoly& f, const Box2& X, const Int& p) {
  require(ord_rat(X.cx, p) >= 0 && ord_rat(X.cy, p) >= 0 && X.depth >= 0,
          ErrorCode::DomainError, "box must sit inside Z_p^2");
  Rat step(int_pow(p, static_cast<unsigned long>(X.depth)));
  return f.subst(BiPoly::constant(X.cx) + BiPoly::var_x() * step,
                 BiPoly::constant(X.cy) + BiPoly::var_y() * step);
}

// Full pipeline.  The classification and the oracle identity both run
// against the zeta function of the substituted polynomial g over Z_p^2;
// the reported Z on the domain differs from it by the box measure only.
inline AnalysisResult analyze_job(const JobSpec& job) {
  AnalysisResult r;
  r.job = job;
  require(is_prime_small(job.p), ErrorCode::DomainError, "p must be prime");
  r.f = parse_polynomial(job.f_text);
  if (job.domain) {
    r.g = apply_domain(r.f, *job.domain, job.p);
    r.scale = job.domain->measure(job.p);
  } else {
    r.g = r.f;
    r.scale = Rat(1);
  }
  r.rd = resolve(r.g, job.p, job.ropt);
  r.zr = two_var_zeta(r.rd, job.zopt);
  r.zeta_domain = r.zr.zeta * r.scale;
  r.graph = build_dual_graph(r.rd, job.ropt);
  if (!r.graph.vertices.empty()) {
    r.mp = minimal_part_and_order_check(r.graph);
    r.have_mp = true;
  }
  r.cands = candidate_poles(r.rd, r.graph);
  ClassifyOptions copt = job.copt;
  copt.ropt = job.ropt;
  copt.zopt = job.zopt;
  r.poles = classify_poles(r.rd, r.graph, r.zr.zeta, copt);
  if (job.oracle_mmax >= 1) {
    r.oracle = poincare_counts(r.g, job.p, job.oracle_mmax);
    r.oracle_ok = verify_poincare_identity(r.zr.zeta, r.oracle);
    r.oracle_ran = true;
  }
  return r;
}

// Per-record residue survey at each record's own candidate.
struct RecordResidue {
  int index = 0;
  Rat s0{0};
  std::vector<Rat> alphas;
  bool balance = false;
  bool bounds = false;
  bool alpha_zero = false;  // a vanishing exponent blocks the sign analysis
  ResidueSign sign = ResidueSign::Zero;
  int exact_sign = 0;
  std::string value;  // exact residue contribution (times log q)
};

inline std::vector<RecordResidue> residue_survey(const ResolutionData& rd,
                                                 long depth_cap = 64) {
  std::vector<RecordResidue> out;
  for (const BlowupRecord& rec : rd.records) {
    RecordResidue rr;
    rr.index = rec.index;
    rr.s0 = rec.s0();
    rr.alphas = record_alphas(rec, rr.s0);
    rr.balance = alpha_balance_holds(rec, rr.s0);
    rr.bounds = alpha_bounds_hold(rec, rr.s0);
    bool zero = false;
    for (const Rat& a : rr.alphas)
      if (a.is_zero()) zero = true;
    rr.alpha_zero = zero;
    if (!zero) {
      rr.sign = residue_sign_decide(rec, rr.s0);
      ResidueValue v = residue_contribution(rec, rr.s0, rd.p, depth_cap);
      rr.exact_sign = v.sign();
      rr.value = v.value.str();
    }
    out.push_back(std::move(rr));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Renderers
// ---------------------------------------------------------------------------

namespace detail_report {

inline std::string kind_name(CompKind k) {
  return k == CompKind::Strict ? "strict" : "exceptional";
}

inline std::string domain_str(const JobSpec& job) {
  if (!job.domain) return "Z_p^2";
  return "(" + job.domain->cx.str() + ", " + job.domain->cy.str() + ") + (p^" +
         std::to_string(job.domain->depth) + " Z_p)^2";
}

inline std::string dir_str(const TangentDir& d) {
  return "(" + d.a1.get_str() + ":" + d.a2.get_str() + ", M=" +
         std::to_string(d.M) + ", mu=" + std::to_string(d.mu) + ")";
}

inline std::string rat_list(const std::vector<Rat>& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += v[i].str();
  }
  return s;
}

inline std::string ok_str(bool b) { return b ? "ok" : "FAILED"; }

inline std::vector<DualEdge> sorted_edges(const DualGraph& g) {
  std::vector<DualEdge> es = g.edges;
  std::sort(es.begin(), es.end(), [](const DualEdge& a, const DualEdge& b) {
    return std::pair(a.a, a.b) < std::pair(b.a, b.b);
  });
  return es;
}

inline void append_resolution(std::string& o, const ResolutionData& rd) {
  o += "resolution\n";
  o += "  components (" + std::to_string(rd.comps.size()) + ")\n";
  for (const Component& c : rd.comps) {
    o += "    [" + std::to_string(c.id) + "] " + kind_name(c.kind) + " " +
         c.name + "  N=" + std::to_string(c.N) + " nu=" +
         std::to_string(c.nu) + " ratio=" + c.ratio().str() + " points=" +
         (c.has_points ? "yes" : "no") + "\n";
  }
  o += "  blow-up records (" + std::to_string(rd.records.size()) + ")\n";
  for (const BlowupRecord& rec : rd.records) {
    o += "    record " + std::to_string(rec.index) + ": chart " +
         std::to_string(rec.chart) + " center (" + rec.cx.str() + ", " +
         rec.cy.str() + ") -> E_" + std::to_string(rec.index) + "  N=" +
         std::to_string(rec.N) + " nu=" + std::to_string(rec.nu) + "\n";
    o += "      directions:";
    if (rec.dirs.empty()) o += " none";
    for (const TangentDir& d : rec.dirs) o += " " + dir_str(d);
    o += "\n";
    o += "      direction-free forms:";
    if (rec.unit_forms.empty()) o += " none";
    for (const UnitForm& uf : rec.unit_forms)
      o += " (" + uf.h.str() + ", deg=" + std::to_string(uf.deg) + ", M=" +
           std::to_string(uf.M) + ")";
    o += "\n";
    o += "      exponent balance: " + ok_str(alpha_balance_holds(rec, rec.s0())) +
         "   exponent bounds: " + ok_str(alpha_bounds_hold(rec, rec.s0())) + "\n";
  }
}

inline void append_graph(std::string& o, const ResolutionData& rd,
                         const DualGraph& g) {
  o += "dual graph\n";
  o += "  vertices " + std::to_string(g.vertices.size()) + ", edges " +
       std::to_string(g.edges.size()) + "\n";
  for (const DualEdge& e : sorted_edges(g)) {
    o += "  " + rd.comps[static_cast<size_t>(e.a)].name + " -- " +
         rd.comps[static_cast<size_t>(e.b)].name + " (rho=" +
         std::to_string(e.rho) + ")\n";
  }
}

}  // namespace detail_report

// Dual graph in DOT form; vertices are labeled with kind, N and nu.
inline std::string render_dot(const DualGraph& g) {
  std::string out = "graph dual {\n";
  out += "  node [shape=box];\n";
  for (const DualVertex& v : g.vertices) {
    out += "  c" + std::to_string(v.comp) + " [label=\"" + v.name + "\\n" +
           detail_report::kind_name(v.kind) + " N=" + std::to_string(v.N) +
           " nu=" + std::to_string(v.nu) + "\"];\n";
  }
  for (const DualEdge& e : detail_report::sorted_edges(g)) {
    out += "  c" + std::to_string(e.a) + " -- c" + std::to_string(e.b) +
           " [label=\"rho=" + std::to_string(e.rho) + "\"];\n";
  }
  out += "}\n";
  return out;
}

inline std::string render_text(const AnalysisResult& r) {
  using detail_report::ok_str;
  std::string o;
  o += "input\n";
  o += "  f      = " + r.job.f_text + "\n";
  o += "  parsed = " + r.f.str() + "\n";
  o += "  p      = " + r.job.p.get_str() + "\n";
  o += "  domain = " + detail_report::domain_str(r.job) + "\n";
  if (r.job.domain)
    o += "  substituted g = " + r.g.str() + "\n";
  o += "\n";

  detail_report::append_resolution(o, r.rd);
  o += "\n";

  detail_report::append_graph(o, r.rd, r.graph);
  o += "\n";

  o += "ordered-tree certificate\n";
  if (!r.have_mp) {
    o += "  empty graph: no components with points\n";
  } else {
    o += "  minimal ratio " + r.mp.min_ratio.str() + " attained by {";
    for (size_t i = 0; i < r.mp.minimal_comps.size(); ++i)
      o += (i ? ", " : " ") +
           r.rd.comps[static_cast<size_t>(r.mp.minimal_comps[i])].name;
    o += " }\n";
    long okc = 0;
    for (bool b : r.mp.piece_minimal_connected) okc += b ? 1 : 0;
    o += "  connected pieces: " + std::to_string(r.mp.pieces.size()) +
         ", minimal part connected in " + std::to_string(okc) + "\n";
    long cmp_ok = 0;
    for (const RatioComparison& c : r.mp.comparisons) cmp_ok += c.ok ? 1 : 0;
    o += "  edge ratio comparisons: " + std::to_string(cmp_ok) + "/" +
         std::to_string(r.mp.comparisons.size()) +
         " strictly increasing away from the minimal part\n";
    o += "  certificate: " + ok_str(r.mp.ok) + "\n";
  }
  o += "\n";

  o += "zeta function  (t = q^-s, q = " + r.job.p.get_str() + ")\n";
  o += "  Z = " + r.zeta_domain.str() + "\n";
  auto [rn, rdenom] = r.zeta_domain.reduced();
  o += "  reduced = (" + rn.str("t") + ") / (" + rdenom.str("t") + ")\n";
  o += "\n";

  o += "candidate poles\n";
  if (r.cands.empty()) o += "  none\n";
  for (const CandidatePole& c : r.cands) {
    o += "  s0 = " + c.s0.str() + "  expected order " +
         std::to_string(c.expected_order) + "  components {";
    for (size_t i = 0; i < c.comps.size(); ++i)
      o += (i ? ", " : " ") + r.rd.comps[static_cast<size_t>(c.comps[i])].name;
    o += " }\n";
  }
  o += "\n";

  o += "classification\n";
  if (r.poles.has_singular_point)
    o += "  singular point (" + r.poles.singular_x.str() + ", " +
         r.poles.singular_y.str() + ")\n";
  else
    o += "  no singular point in the domain\n";
  if (r.poles.findings.empty()) o += "  no candidates\n";
  for (const PoleFinding& fd : r.poles.findings) {
    o += "  s0 = " + fd.s0.str() + "  " + pole_verdict_name(fd.verdict) +
         "  (exact order " + std::to_string(fd.order) + ")\n";
    o += "    witness: " + fd.witness + "\n";
    if (fd.residue_sign != 0)
      o += "    residue sign: " +
           std::string(fd.residue_sign > 0 ? "positive" : "negative") + "\n";
    if (fd.shrink_k >= 0)
      o += "    certified on box exponent " + std::to_string(fd.shrink_k) + "\n";
  }
  o += "\n";

  o += "oracle\n";
  if (!r.oracle_ran) {
    o += "  disabled\n";
  } else {
    o += "  mmax = " + std::to_string(r.oracle.mmax()) + "\n";
    std::string ns, ds;
    for (size_t i = 0; i < r.oracle.counts.size(); ++i) {
      if (i) {
        ns += " ";
        ds += " ";
      }
      ns += r.oracle.counts[i].get_str();
      ds += r.oracle.densities[i].str();
    }
    o += "  counts    = " + ns + "\n";
    o += "  densities = " + ds + "\n";
    o += "  power-series identity: " + ok_str(r.oracle_ok) + "\n";
  }
  return o;
}

inline nlohmann::ordered_json to_json(const AnalysisResult& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["input"] = {{"f", r.job.f_text},
                {"parsed", r.f.str()},
                {"p", r.job.p.get_str()},
                {"domain", detail_report::domain_str(r.job)}};
  json comps = json::array();
  for (const Component& c : r.rd.comps)
    comps.push_back({{"id", c.id},
                     {"kind", detail_report::kind_name(c.kind)},
                     {"name", c.name},
                     {"N", c.N},
                     {"nu", c.nu},
                     {"ratio", c.ratio().str()},
                     {"points", c.has_points}});
  json recs = json::array();
  for (const BlowupRecord& rec : r.rd.records) {
    json dirs = json::array();
    for (const TangentDir& d : rec.dirs)
      dirs.push_back({{"a1", d.a1.get_str()},
                      {"a2", d.a2.get_str()},
                      {"M", d.M},
                      {"mu", d.mu}});
    json forms = json::array();
    for (const UnitForm& uf : rec.unit_forms)
      forms.push_back(
          {{"h", uf.h.str()}, {"deg", uf.deg}, {"M", uf.M}});
    recs.push_back({{"index", rec.index},
                    {"chart", rec.chart},
                    {"center", {rec.cx.str(), rec.cy.str()}},
                    {"N", rec.N},
                    {"nu", rec.nu},
                    {"directions", dirs},
                    {"direction_free_forms", forms},
                    {"exponent_balance", alpha_balance_holds(rec, rec.s0())},
                    {"exponent_bounds", alpha_bounds_hold(rec, rec.s0())}});
  }
  j["resolution"] = {{"components", comps}, {"records", recs}};
  json edges = json::array();
  for (const DualEdge& e : detail_report::sorted_edges(r.graph))
    edges.push_back({{"a", e.a}, {"b", e.b}, {"rho", e.rho}});
  j["dual_graph"] = {{"vertices", r.graph.vertices.size()}, {"edges", edges}};
  if (r.have_mp) {
    j["ordered_tree"] = {{"min_ratio", r.mp.min_ratio.str()},
                         {"minimal_comps", r.mp.minimal_comps},
                         {"ok", r.mp.ok}};
  } else {
    j["ordered_tree"] = {{"empty", true}};
  }
  auto [rn, rden] = r.zeta_domain.reduced();
  j["zeta"] = {{"factored", r.zeta_domain.str()},
               {"reduced_num", rn.str("t")},
               {"reduced_den", rden.str("t")}};
  json cands = json::array();
  for (const CandidatePole& c : r.cands)
    cands.push_back({{"s0", c.s0.str()},
                     {"expected_order", c.expected_order},
                     {"comps", c.comps}});
  j["candidates"] = cands;
  json finds = json::array();
  for (const PoleFinding& fd : r.poles.findings) {
    json f = {{"s0", fd.s0.str()},
              {"verdict", pole_verdict_name(fd.verdict)},
              {"order", fd.order},
              {"witness", fd.witness}};
    if (fd.residue_sign != 0) f["residue_sign"] = fd.residue_sign;
    if (fd.shrink_k >= 0) f["shrink_k"] = fd.shrink_k;
    finds.push_back(f);
  }
  json cls = {{"findings", finds}};
  if (r.poles.has_singular_point)
    cls["singular_point"] = {r.poles.singular_x.str(),
                             r.poles.singular_y.str()};
  j["classification"] = cls;
  if (r.oracle_ran) {
    json counts = json::array(), dens = json::array();
    for (const Int& n : r.oracle.counts) counts.push_back(n.get_str());
    for (const Rat& d : r.oracle.densities) dens.push_back(d.str());
    j["oracle"] = {{"mmax", r.oracle.mmax()},
                   {"counts", counts},
                   {"densities", dens},
                   {"identity", r.oracle_ok}};
  }
  return j;
}

inline std::string render_json(const AnalysisResult& r) {
  return to_json(r).dump(2) + "\n";
}

// Resolution- and graph-only text, for runs that stop before classification.
inline std::string render_resolve_text(const ResolutionData& rd,
                                       const DualGraph& g) {
  std::string o;
  detail_report::append_resolution(o, rd);
  o += "\n";
  detail_report::append_graph(o, rd, g);
  return o;
}

namespace detail_report {

inline Rat parse_rat_token(const std::string& tok) {
  size_t slash = tok.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(tok));
    Int num(tok.substr(0, slash));
    Int den(tok.substr(slash + 1));
    require(den != 0, ErrorCode::ParseError, "zero denominator in '" + tok + "'");
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    fail(ErrorCode::ParseError, "bad rational '" + tok + "'");
  }
}

}  // namespace detail_report

// Parses a box description "cx,cy,depth" with rational center coordinates.
inline Box2 parse_box(const std::string& text) {
  size_t c1 = text.find(',');
  size_t c2 = c1 == std::string::npos ? std::string::npos
                                      : text.find(',', c1 + 1);
  require(c2 != std::string::npos && text.find(',', c2 + 1) == std::string::npos,
          ErrorCode::ParseError, "domain must be 'cx,cy,depth'");
  Box2 X;
  X.cx = detail_report::parse_rat_token(text.substr(0, c1));
  X.cy = detail_report::parse_rat_token(text.substr(c1 + 1, c2 - c1 - 1));
  std::string dtok = text.substr(c2 + 1);
  Rat d = detail_report::parse_rat_token(dtok);
  require(d.den() == 1 && d >= Rat(0), ErrorCode::ParseError,
          "depth must be a non-negative integer, got '" + dtok + "'");
  X.depth = static_cast<long>(d.num().get_si());
  return X;
}

inline std::string render_residue_text(const ResolutionData& rd,
                                       const std::vector<RecordResidue>& sv) {
  std::string o = "residue survey (" + std::to_string(sv.size()) +
                  " record(s), p = " + rd.p.get_str() + ")\n";
  for (const RecordResidue& rr : sv) {
    o += "  record " + std::to_string(rr.index) + " at s0 = " + rr.s0.str() +
         "\n";
    o += "    exponents: " + detail_report::rat_list(rr.alphas) + "\n";
    o += "    balance: " + detail_report::ok_str(rr.balance) +
         "   bounds: " + detail_report::ok_str(rr.bounds) + "\n";
    if (rr.alpha_zero) {
      o += "    residue: blocked (vanishing exponent)\n";
    } else {
      o += "    sign rule: " + std::string(residue_sign_name(rr.sign)) +
           "   exact sign: " + std::to_string(rr.exact_sign) + "\n";
      o += "    value (times log q): " + rr.value + "\n";
    }
  }
  return o;
}

}  // namespace igusa
