// Command-line front end.
//
//   igusa analyze --f "y^2 - x^3" --p 5        full pipeline + report
//   igusa zeta    --f "x*y" --p 3              zeta function only
//   igusa oracle  --f "x*y" --p 3 --oracle-mmax 6
//   igusa residue --f "y^2 - x^3" --p 5        per-record residue survey
//   igusa resolve --f "x*y" --p 3 --dot g.dot  blow-up tree and dual graph
//
// Exit codes: 0 success, 2 parse error, 3 unsupported input class,
// 4 precision/size cap reached, 5 internal invariant failure.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "igusa/report.hpp"

namespace {

struct CommonOpts {
  std::string f_text;
  long p = 3;
  std::string domain;
  long oracle_mmax = 5;
  bool json = false;
  std::string dot_path;
  long max_blowups = 64;
  long depth_cap = 40;
};

void add_common(CLI::App* sub, CommonOpts& o, bool with_oracle, bool with_dot) {
  sub->add_option("--f", o.f_text, "polynomial in x and y over Q")->required();
  sub->add_option("--p", o.p, "prime p")->required();
  sub->add_option("--domain", o.domain,
                  "box 'cx,cy,depth': (cx, cy) + (p^depth Z_p)^2");
  sub->add_flag("--json", o.json, "emit JSON instead of text");
  sub->add_option("--max-blowups", o.max_blowups, "blow-up budget");
  sub->add_option("--depth-cap", o.depth_cap,
                  "recursion budget for exact integration");
  if (with_oracle)
    sub->add_option("--oracle-mmax", o.oracle_mmax,
                    "congruence-count depth (0 disables the oracle)");
  if (with_dot)
    sub->add_option("--dot", o.dot_path, "write the dual graph in DOT form");
}

igusa::JobSpec job_from(const CommonOpts& o) {
  igusa::JobSpec job;
  job.f_text = o.f_text;
  job.p = igusa::Int(o.p);
  if (!o.domain.empty()) job.domain = igusa::parse_box(o.domain);
  job.oracle_mmax = o.oracle_mmax;
  job.ropt.max_blowups = o.max_blowups;
  job.zopt.depth_cap = o.depth_cap;
  return job;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  igusa::require(static_cast<bool>(out), igusa::ErrorCode::DomainError,
                 "cannot open " + path);
  out << text;
}

// Shared head for the subcommands that bypass the full pipeline: parse,
// apply the domain substitution, resolve.
struct Prepared {
  igusa::JobSpec job;
  igusa::BiPoly g;
  igusa::Rat scale{1};
  igusa::ResolutionData rd;
};

Prepared prepare(const CommonOpts& o) {
  Prepared pr;
  pr.job = job_from(o);
  igusa::require(igusa::is_prime_small(pr.job.p), igusa::ErrorCode::DomainError,
                 "p must be prime");
  igusa::BiPoly f = igusa::parse_polynomial(pr.job.f_text);
  if (pr.job.domain) {
    pr.g = igusa::apply_domain(f, *pr.job.domain, pr.job.p);
    pr.scale = pr.job.domain->measure(pr.job.p);
  } else {
    pr.g = f;
  }
  pr.rd = igusa::resolve(pr.g, pr.job.p, pr.job.ropt);
  return pr;
}

int run_analyze(const CommonOpts& o) {
  igusa::AnalysisResult res = igusa::analyze_job(job_from(o));
  if (!o.dot_path.empty()) write_file(o.dot_path, igusa::render_dot(res.graph));
  std::cout << (o.json ? igusa::render_json(res) : igusa::render_text(res));
  return 0;
}

int run_zeta(const CommonOpts& o) {
  Prepared pr = prepare(o);
  igusa::ZetaResult zr = igusa::two_var_zeta(pr.rd, pr.job.zopt);
  igusa::ZetaRational Z = zr.zeta * pr.scale;
  auto [rn, rden] = Z.reduced();
  if (o.json) {
    nlohmann::ordered_json j;
    j["p"] = pr.job.p.get_str();
    j["zeta"] = {{"factored", Z.str()},
                 {"reduced_num", rn.str("t")},
                 {"reduced_den", rden.str("t")}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "Z = " << Z.str() << "\n";
    std::cout << "reduced = (" << rn.str("t") << ") / (" << rden.str("t")
              << ")\n";
  }
  return 0;
}

int run_oracle(const CommonOpts& o) {
  Prepared pr = prepare(o);
  igusa::ZetaResult zr = igusa::two_var_zeta(pr.rd, pr.job.zopt);
  igusa::PoincareData pd =
      igusa::poincare_counts(pr.g, pr.job.p, pr.job.oracle_mmax);
  bool ok = igusa::verify_poincare_identity(zr.zeta, pd);
  if (o.json) {
    nlohmann::ordered_json counts = nlohmann::ordered_json::array();
    nlohmann::ordered_json dens = nlohmann::ordered_json::array();
    for (const igusa::Int& n : pd.counts) counts.push_back(n.get_str());
    for (const igusa::Rat& d : pd.densities) dens.push_back(d.str());
    nlohmann::ordered_json j;
    j["p"] = pr.job.p.get_str();
    j["mmax"] = pd.mmax();
    j["counts"] = counts;
    j["densities"] = dens;
    j["identity"] = ok;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "mmax = " << pd.mmax() << "\n";
    std::cout << "counts    =";
    for (const igusa::Int& n : pd.counts) std::cout << " " << n.get_str();
    std::cout << "\ndensities =";
    for (const igusa::Rat& d : pd.densities) std::cout << " " << d.str();
    std::cout << "\npower-series identity: " << (ok ? "ok" : "FAILED") << "\n";
  }
  return ok ? 0 : 5;
}

int run_residue(const CommonOpts& o) {
  Prepared pr = prepare(o);
  std::vector<igusa::RecordResidue> sv = igusa::residue_survey(pr.rd);
  if (o.json) {
    nlohmann::ordered_json recs = nlohmann::ordered_json::array();
    for (const igusa::RecordResidue& rr : sv) {
      nlohmann::ordered_json alphas = nlohmann::ordered_json::array();
      for (const igusa::Rat& a : rr.alphas) alphas.push_back(a.str());
      nlohmann::ordered_json j = {{"index", rr.index},
                                  {"s0", rr.s0.str()},
                                  {"exponents", alphas},
                                  {"balance", rr.balance},
                                  {"bounds", rr.bounds}};
      if (rr.alpha_zero) {
        j["blocked"] = true;
      } else {
        j["sign_rule"] = igusa::residue_sign_name(rr.sign);
        j["exact_sign"] = rr.exact_sign;
        j["value_times_log_q"] = rr.value;
      }
      recs.push_back(j);
    }
    nlohmann::ordered_json j;
    j["p"] = pr.job.p.get_str();
    j["records"] = recs;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << igusa::render_residue_text(pr.rd, sv);
  }
  return 0;
}

int run_resolve(const CommonOpts& o) {
  Prepared pr = prepare(o);
  igusa::DualGraph g = igusa::build_dual_graph(pr.rd, pr.job.ropt);
  if (!o.dot_path.empty()) write_file(o.dot_path, igusa::render_dot(g));
  if (o.json) {
    nlohmann::ordered_json comps = nlohmann::ordered_json::array();
    for (const igusa::Component& c : pr.rd.comps)
      comps.push_back({{"id", c.id},
                       {"kind", c.kind == igusa::CompKind::Strict
                                    ? "strict"
                                    : "exceptional"},
                       {"name", c.name},
                       {"N", c.N},
                       {"nu", c.nu},
                       {"ratio", c.ratio().str()},
                       {"points", c.has_points}});
    nlohmann::ordered_json edges = nlohmann::ordered_json::array();
    for (const igusa::DualEdge& e : g.edges)
      edges.push_back({{"a", e.a}, {"b", e.b}, {"rho", e.rho}});
    nlohmann::ordered_json j;
    j["p"] = pr.job.p.get_str();
    j["components"] = comps;
    j["edges"] = edges;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << igusa::render_resolve_text(pr.rd, g);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Igusa zeta functions of plane curves over Q_p"};
  app.require_subcommand(1);
  CommonOpts o;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "resolve, zeta, pole classification, counting oracle");
  add_common(analyze, o, true, true);
  CLI::App* zeta = app.add_subcommand("zeta", "zeta function only");
  add_common(zeta, o, false, false);
  CLI::App* oracle =
      app.add_subcommand("oracle", "congruence counts against the zeta series");
  add_common(oracle, o, true, false);
  CLI::App* residue =
      app.add_subcommand("residue", "per-record residue survey");
  add_common(residue, o, false, false);
  CLI::App* resolve =
      app.add_subcommand("resolve", "blow-up tree and dual graph");
  add_common(resolve, o, false, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(o);
    if (zeta->parsed()) return run_zeta(o);
    if (oracle->parsed()) return run_oracle(o);
    if (residue->parsed()) return run_residue(o);
    if (resolve->parsed()) return run_resolve(o);
    return 2;
  } catch (const igusa::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return igusa::exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
