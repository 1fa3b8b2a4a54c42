#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "igusa/poletheory.hpp"
#include "igusa/zeta2d.hpp"

using namespace igusa;

namespace {

BiPoly X() { return BiPoly::var_x(); }
BiPoly Y() { return BiPoly::var_y(); }

auto has_code(ErrorCode c) {
  return Catch::Matchers::Predicate<Error>(
      [c](const Error& e) { return e.code() == c; });
}

struct DirSpec {
  long a1, a2, M, mu;
};

struct FormSpec {
  BiPoly h;
  int deg;
  long M;
};

// Builds a synthetic creation record with N and nu derived from the
// direction and form data, so the balance identity holds by construction.
BlowupRecord mk_record(const std::vector<DirSpec>& ds,
                       const std::vector<FormSpec>& forms = {}) {
  BlowupRecord r;
  r.index = 1;
  long N = 0, nu = 2;
  for (const DirSpec& d : ds) {
    TangentDir td;
    td.a1 = Int(d.a1);
    td.a2 = Int(d.a2);
    td.M = d.M;
    td.mu = d.mu;
    r.dirs.push_back(td);
    N += d.M;
    nu += d.mu - 1;
  }
  for (const FormSpec& f : forms) {
    UnitForm uf;
    uf.h = f.h;
    uf.deg = f.deg;
    uf.M = f.M;
    r.unit_forms.push_back(uf);
    N += static_cast<long>(f.deg) * f.M;
  }
  r.N = N;
  r.nu = nu;
  return r;
}

// (q-1)/q * sum_i 1/(q^{alpha_i} - 1) + (q-2)/q, exactly.
AlgebraicReal shell_sum_form(const std::vector<Rat>& alphas, const Int& q) {
  AlgebraicReal one = AlgebraicReal::from_rat(q, Rat(1));
  AlgebraicReal acc = AlgebraicReal::from_rat(q, Rat(0));
  for (const Rat& a : alphas)
    acc = acc + (AlgebraicReal::rational_power_of_p(q, a) - one).inverse();
  Int qm1 = q - 1;
  Int qm2 = q - 2;
  return AlgebraicReal::from_rat(q, Rat(qm1, q)) * acc +
         AlgebraicReal::from_rat(q, Rat(qm2, q));
}

const PoleFinding& finding_at(const PoleReport& rep, const Rat& s0) {
  for (const PoleFinding& f : rep.findings)
    if (f.s0 == s0) return f;
  FAIL("no finding at s0 = " + s0.str());
  return rep.findings.front();  // unreachable
}

}  // namespace

TEST_CASE("symbolic unit-shell identity holds exactly", "[poletheory]") {
  CHECK(sally_taibleson_identity());
}

TEST_CASE("closed product form for three directions", "[poletheory]") {
  std::array<Rat, 3> alpha{Rat(1, 3), Rat(1, 2), Rat(1, 6)};
  Int q(5);
  AlgebraicReal prod = three_dir_contribution(alpha, q);
  CHECK(prod.sign() > 0);
  // The product equals the three-term shell sum: the identity instantiated
  // in Q(5^(1/6)).
  AlgebraicReal sum =
      shell_sum_form({alpha.begin(), alpha.end()}, q);
  CHECK(prod == sum);

  // Exponent sum must be 1.
  CHECK_THROWS_MATCHES(
      three_dir_contribution({Rat(1, 2), Rat(1, 2), Rat(1, 2)}, q), Error,
      has_code(ErrorCode::HypothesisViolated));
  // Vanishing exponent is rejected.
  CHECK_THROWS_MATCHES(
      three_dir_contribution({Rat(0), Rat(1, 2), Rat(1, 2)}, q), Error,
      has_code(ErrorCode::AlphaZero));
}

TEST_CASE("cusp records: exponents, balance, bounds", "[poletheory]") {
  BiPoly f = Y() * Y() - X() * X() * X();
  ResolutionData rd = resolve(f, Int(5));
  REQUIRE(rd.records.size() == 3);

  const BlowupRecord& r3 = rd.records[2];
  REQUIRE(r3.s0() == Rat(-5, 6));
  std::vector<Rat> al = record_alphas(r3, r3.s0());
  std::sort(al.begin(), al.end());
  REQUIRE(al.size() == 3);
  CHECK(al[0] == Rat(1, 6));
  CHECK(al[1] == Rat(1, 3));
  CHECK(al[2] == Rat(1, 2));

  for (const BlowupRecord& rec : rd.records) {
    CHECK(alpha_balance_holds(rec, rec.s0()));
    CHECK(alpha_bounds_hold(rec, rec.s0()));
  }

  // Perturbing one multiplicity breaks the balance.
  BlowupRecord bad = r3;
  bad.dirs[0].mu += 1;
  CHECK_FALSE(alpha_balance_holds(bad, r3.s0()));
}

TEST_CASE("balance and bounds across resolutions", "[poletheory]") {
  std::vector<std::pair<BiPoly, long>> fixtures = {
      {Y() * Y() - X() * X() * X(), 3},
      {X() * (Y() * Y() - X() * X() * X()), 3},
      {Y() * Y() - X() * X() * X() * X() * X(), 3},
      {X() * X() + Y() * Y(), 3},
      {Y() * Y() - X() * X() * X(), 7}};
  for (const auto& [f, pp] : fixtures) {
    ResolutionData rd = resolve(f, Int(pp));
    for (const BlowupRecord& rec : rd.records) {
      INFO("p = " << pp << ", record " << rec.index);
      CHECK(alpha_balance_holds(rec, rec.s0()));
      CHECK(alpha_bounds_hold(rec, rec.s0()));
    }
  }
}

TEST_CASE("residue sign rule on canonical configurations", "[poletheory]") {
  // Three directions, every exponent positive.
  BlowupRecord pos = mk_record({{0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}});
  REQUIRE(pos.s0() == Rat(-2, 3));
  CHECK(residue_sign_decide(pos, pos.s0()) == ResidueSign::Positive);

  // At most two directions and no direction-free form: always zero.
  BlowupRecord zero = mk_record({{0, 1, 3, 1}, {1, 0, 1, 1}});
  CHECK(residue_sign_decide(zero, zero.s0()) == ResidueSign::Zero);

  // One heavy direction with a negative exponent.
  BlowupRecord neg = mk_record({{0, 1, 5, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}});
  REQUIRE(neg.s0() == Rat(-2, 7));
  std::vector<Rat> al = record_alphas(neg, neg.s0());
  CHECK(al[0] == Rat(-3, 7));
  CHECK(residue_sign_decide(neg, neg.s0()) == ResidueSign::Negative);
}

TEST_CASE("residue contribution vanishes for at most two directions",
          "[poletheory]") {
  Int p(5);
  // The cusp's first record: a single direction of multiplicity 2.
  BiPoly f = Y() * Y() - X() * X() * X();
  ResolutionData rd = resolve(f, p);
  const BlowupRecord& r1 = rd.records[0];
  REQUIRE(r1.s0() == Rat(-1));
  REQUIRE(r1.dirs.size() == 1);
  CHECK(residue_contribution(r1, r1.s0(), p).value.is_zero());

  // A generic two-direction record: the two chart integrals cancel.
  BlowupRecord two = mk_record({{0, 1, 3, 2}, {1, 0, 2, 1}});
  CHECK(residue_contribution(two, two.s0(), p).value.is_zero());
  BlowupRecord two_b = mk_record({{1, 2, 4, 1}, {2, 1, 1, 2}});
  CHECK(residue_contribution(two_b, two_b.s0(), Int(3)).value.is_zero());
}

TEST_CASE("residue contribution at the cusp minimal curve", "[poletheory]") {
  Int p(5);
  BiPoly f = Y() * Y() - X() * X() * X();
  ResolutionData rd = resolve(f, p);
  const BlowupRecord& r3 = rd.records[2];
  Rat s0 = r3.s0();
  ResidueValue rv = residue_contribution(r3, s0, p);
  CHECK(rv.sign() > 0);

  // Cross-check the generic two-chart integration against the closed form
  // (q-1)/(q N) |d|^{s0} |e| [(q-1)/q sum 1/(q^{alpha}-1) + (q-2)/q].
  AlgebraicReal pref = AlgebraicReal::rational_power_of_p(
      p, (-s0) * Rat(Int(ord_rat(r3.f_unit, p))));
  Int num = p - 1;
  Int den = p * Int(r3.N);
  AlgebraicReal scale =
      AlgebraicReal::from_rat(p, abs_p(r3.jac_unit, p) * Rat(num, den));
  AlgebraicReal expected =
      pref * scale * shell_sum_form(record_alphas(r3, s0), p);
  CHECK(rv.value == expected);

  // And the shell sum equals the product form.
  std::vector<Rat> al = record_alphas(r3, s0);
  std::array<Rat, 3> ar{al[0], al[1], al[2]};
  CHECK(shell_sum_form(al, p) == three_dir_contribution(ar, p));
}

TEST_CASE("negative residue for a heavy direction", "[poletheory]") {
  Int p(5);
  BlowupRecord neg = mk_record({{0, 1, 5, 1}, {1, 0, 1, 1}, {1, 1, 1, 1}});
  CHECK(residue_sign_decide(neg, neg.s0()) == ResidueSign::Negative);
  CHECK(residue_contribution(neg, neg.s0(), p).sign() < 0);

  // Two directions plus a direction-free form, one negative exponent.
  BiPoly h = X() * X() + Y() * Y() * Rat(2);  // no direction over Q_5
  BlowupRecord negf =
      mk_record({{0, 1, 5, 1}, {1, 0, 1, 1}}, {{h, 2, 1}});
  REQUIRE(negf.s0() == Rat(-1, 4));
  std::vector<Rat> al = record_alphas(negf, negf.s0());
  CHECK(al[0] == Rat(-1, 4));
  CHECK(residue_sign_decide(negf, negf.s0()) == ResidueSign::Negative);
  CHECK(residue_contribution(negf, negf.s0(), p).sign() < 0);
}

TEST_CASE("vanishing exponent is rejected", "[poletheory]") {
  // Two directions of equal weight: alpha = 0 for both at s0 = -1/2.
  BlowupRecord r = mk_record({{0, 1, 2, 1}, {1, 0, 2, 1}});
  REQUIRE(r.s0() == Rat(-1, 2));
  CHECK_THROWS_MATCHES(residue_sign_decide(r, r.s0()), Error,
                       has_code(ErrorCode::AlphaZero));
  CHECK_THROWS_MATCHES(residue_contribution(r, r.s0(), Int(3)), Error,
                       has_code(ErrorCode::AlphaZero));
}

TEST_CASE("sign rule agrees with the exact residue on generated records",
          "[poletheory]") {
  const std::vector<std::array<long, 2>> dpool{
      {0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}};
  // (M, mu) patterns applied cyclically to the chosen directions.
  const std::vector<std::vector<std::array<long, 2>>> variants{
      {{1, 1}},
      {{2, 1}, {1, 1}},
      {{3, 1}, {1, 2}},
      {{7, 1}, {1, 1}},
      {{1, 2}}};
  for (long pp : {2L, 3L, 5L}) {
    Int p(pp);
    // Quadratic and cubic forms with no direction over Q_p.
    BiPoly h2, h3;
    if (pp == 2) {
      h2 = X() * X() + X() * Y() + Y() * Y();
      h3 = X() * X() * X() + X() * Y() * Y() + Y() * Y() * Y();
    } else if (pp == 3) {
      h2 = X() * X() + Y() * Y();
      h3 = X() * X() * X() - X() * Y() * Y() + Y() * Y() * Y();
    } else {
      h2 = X() * X() + Y() * Y() * Rat(2);
      h3 = X() * X() * X() + X() * Y() * Y() + Y() * Y() * Y();
    }
    const std::vector<std::vector<FormSpec>> form_opts{
        {}, {{h2, 2, 1}}, {{h3, 3, 1}}, {{h2, 2, 2}}};
    std::map<ResidueSign, long> count;
    for (unsigned mask = 1; mask < (1u << dpool.size()); ++mask) {
      std::vector<std::array<long, 2>> dirs;
      for (size_t i = 0; i < dpool.size(); ++i)
        if (mask & (1u << i)) dirs.push_back(dpool[i]);
      for (const auto& var : variants) {
        std::vector<DirSpec> ds;
        for (size_t i = 0; i < dirs.size(); ++i) {
          const auto& mv = var[i % var.size()];
          ds.push_back({dirs[i][0], dirs[i][1], mv[0], mv[1]});
        }
        for (const auto& forms : form_opts) {
          BlowupRecord rec = mk_record(ds, forms);
          Rat s0 = rec.s0();
          bool zero_alpha = false;
          for (const Rat& a : record_alphas(rec, s0))
            if (a.is_zero()) zero_alpha = true;
          if (zero_alpha) continue;
          REQUIRE(alpha_balance_holds(rec, s0));
          if (!alpha_bounds_hold(rec, s0)) continue;
          ResidueSign d = residue_sign_decide(rec, s0);
          int vs = residue_contribution(rec, s0, p).sign();
          INFO("p = " << pp << ", mask = " << mask << ", dirs = "
                      << dirs.size() << ", forms = " << forms.size());
          switch (d) {
            case ResidueSign::Zero: CHECK(vs == 0); break;
            case ResidueSign::Positive: CHECK(vs > 0); break;
            case ResidueSign::Negative: CHECK(vs < 0); break;
          }
          ++count[d];
        }
      }
    }
    INFO("p = " << pp);
    CHECK(count[ResidueSign::Zero] >= 20);
    CHECK(count[ResidueSign::Positive] >= 20);
    CHECK(count[ResidueSign::Negative] >= 20);
  }
}

TEST_CASE("non-real branch of the closed form is nonzero", "[poletheory]") {
  Int p(5);
  BiPoly f = Y() * Y() - X() * X() * X();
  ResolutionData rd = resolve(f, p);
  const BlowupRecord& r3 = rd.records[2];
  for (long k : {1L, 2L, 3L, -1L}) {
    std::complex<double> v = three_dir_contribution_complex(r3, p, k);
    INFO("k = " << k);
    CHECK(std::abs(v) > 1e-9);
  }
  CHECK_THROWS_MATCHES(three_dir_contribution_complex(r3, p, 0), Error,
                       has_code(ErrorCode::DomainError));
  // Records without the three-direction shape are rejected.
  CHECK_THROWS_MATCHES(three_dir_contribution_complex(rd.records[0], p, 1),
                       Error, has_code(ErrorCode::HypothesisViolated));
}

TEST_CASE("double-pole coefficient at a rational crossing", "[poletheory]") {
  // Two coordinate axes: eps = eta = 1, coefficient (q-1)^2/q^2.
  BiPoly f = X() * Y();
  ResolutionData rd = resolve(f, Int(3));
  auto cd = find_rational_crossing(rd, 0, 1);
  REQUIRE(cd.has_value());
  CHECK(cd->x == Rat(0));
  CHECK(cd->y == Rat(0));
  AlgebraicReal c = order2_coefficient(rd, *cd, Rat(-1));
  CHECK(c == AlgebraicReal::from_rat(Int(3), Rat(4, 9)));

  // Crossing pair of lines x^2 - y^2 at p = 2.
  BiPoly g = X() * X() - Y() * Y();
  ResolutionData rd2 = resolve(g, Int(2));
  auto cd2 = find_rational_crossing(rd2, 0, 1);
  REQUIRE(cd2.has_value());
  CHECK(order2_coefficient(rd2, *cd2, Rat(-1)).sign() > 0);
}

TEST_CASE("classification: two crossing axes", "[poletheory]") {
  BiPoly f = X() * Y();
  Int p(3);
  ResolutionData rd = resolve(f, p);
  ZetaResult zr = two_var_zeta(rd);
  DualGraph g = build_dual_graph(rd);
  PoleReport rep = classify_poles(rd, g, zr.zeta);
  CHECK(rep.has_singular_point);
  CHECK(rep.singular_x == Rat(0));
  CHECK(rep.singular_y == Rat(0));
  REQUIRE(rep.findings.size() == 1);
  const PoleFinding& fd = rep.findings[0];
  CHECK(fd.s0 == Rat(-1));
  CHECK(fd.expected_order == 2);
  CHECK(fd.order == 2);
  CHECK(fd.verdict == PoleVerdict::PoleOrder2);
  CHECK(((fd.witness_pair_a == 0 && fd.witness_pair_b == 1) ||
         (fd.witness_pair_a == 1 && fd.witness_pair_b == 0)));
}

TEST_CASE("classification: cusp", "[poletheory]") {
  BiPoly f = Y() * Y() - X() * X() * X();
  Int p(5);
  ResolutionData rd = resolve(f, p);
  ZetaResult zr = two_var_zeta(rd);
  DualGraph g = build_dual_graph(rd);
  PoleReport rep = classify_poles(rd, g, zr.zeta);
  CHECK(rep.has_singular_point);
  CHECK(rep.min_ratio == Rat(5, 6));
  REQUIRE(rep.findings.size() == 2);

  // Closest to the origin first.
  const PoleFinding& f1 = rep.findings[0];
  CHECK(f1.s0 == Rat(-5, 6));
  CHECK(f1.verdict == PoleVerdict::PoleOrder1);
  CHECK(f1.order == 1);
  CHECK(f1.witness_record == 3);
  CHECK(f1.residue_sign == 1);

  const PoleFinding& f2 = rep.findings[1];
  CHECK(f2.s0 == Rat(-1));
  CHECK(f2.verdict == PoleVerdict::PoleOrder1);
  CHECK(f2.order == 1);
  CHECK(f2.witness_strict >= 0);
  CHECK(rd.comps[static_cast<size_t>(f2.witness_strict)].kind ==
        CompKind::Strict);
  CHECK(f2.shrink_k == 0);
}

TEST_CASE("classification: line times cusp", "[poletheory]") {
  BiPoly f = X() * (Y() * Y() - X() * X() * X());
  Int p(5);
  ResolutionData rd = resolve(f, p);
  ZetaResult zr = two_var_zeta(rd);
  DualGraph g = build_dual_graph(rd);
  PoleReport rep = classify_poles(rd, g, zr.zeta);
  REQUIRE(rep.findings.size() == 4);
  CHECK(rep.min_ratio == Rat(5, 8));

  const PoleFinding& a = finding_at(rep, Rat(-5, 8));
  CHECK(a.verdict == PoleVerdict::PoleOrder1);
  CHECK(a.order == 1);
  CHECK(a.residue_sign == 1);

  const PoleFinding& b = finding_at(rep, Rat(-2, 3));
  CHECK(b.verdict == PoleVerdict::NotAPole);
  CHECK(b.order == 0);

  const PoleFinding& c = finding_at(rep, Rat(-3, 4));
  CHECK(c.verdict == PoleVerdict::NotAPole);
  CHECK(c.order == 0);

  const PoleFinding& d = finding_at(rep, Rat(-1));
  CHECK(d.verdict == PoleVerdict::PoleOrder1);
  CHECK(d.order == 1);
  CHECK(d.witness_strict >= 0);
  CHECK(d.shrink_k == 0);
}

TEST_CASE("classification: anisotropic conic", "[poletheory]") {
  BiPoly f = X() * X() + Y() * Y();
  Int p(3);
  ResolutionData rd = resolve(f, p);
  ZetaResult zr = two_var_zeta(rd);
  DualGraph g = build_dual_graph(rd);
  PoleReport rep = classify_poles(rd, g, zr.zeta);
  REQUIRE(rep.findings.size() == 1);
  const PoleFinding& fd = rep.findings[0];
  CHECK(fd.s0 == Rat(-1));
  CHECK(fd.verdict == PoleVerdict::PoleOrder1);
  CHECK(fd.order == 1);
  // The witness record carries the direction-free quadratic form.
  REQUIRE(fd.witness_record >= 1);
  const BlowupRecord& rec =
      rd.records[static_cast<size_t>(fd.witness_record - 1)];
  CHECK(rec.dirs.empty());
  CHECK(rec.unit_forms.size() == 1);
  CHECK(fd.residue_sign == 1);
}

TEST_CASE("classification: smooth curve without rational points",
          "[poletheory]") {
  BiPoly f = X() * X() + Y() * Y() + BiPoly::constant(Rat(1));
  Int p(2);
  ResolutionData rd = resolve(f, p);
  ZetaResult zr = two_var_zeta(rd);
  DualGraph g = build_dual_graph(rd);
  PoleReport rep = classify_poles(rd, g, zr.zeta);
  CHECK_FALSE(rep.has_singular_point);
  CHECK(rep.findings.empty());
}

TEST_CASE("classification: smooth line", "[poletheory]") {
  BiPoly f = X();
  Int p(3);
  ResolutionData rd = resolve(f, p);
  ZetaResult zr = two_var_zeta(rd);
  DualGraph g = build_dual_graph(rd);
  PoleReport rep = classify_poles(rd, g, zr.zeta);
  CHECK_FALSE(rep.has_singular_point);
  REQUIRE(rep.findings.size() == 1);
  const PoleFinding& fd = rep.findings[0];
  CHECK(fd.s0 == Rat(-1));
  CHECK(fd.verdict == PoleVerdict::PoleOrder1);
  CHECK(fd.shrink_k == 0);
}

TEST_CASE("classification rejects two singular points", "[poletheory]") {
  BiPoly f = X() * Y() * (X() - BiPoly::constant(Rat(1)));
  Int p(3);
  ResolutionData rd = resolve(f, p);
  ZetaResult zr = two_var_zeta(rd);
  DualGraph g = build_dual_graph(rd);
  CHECK_THROWS_MATCHES(classify_poles(rd, g, zr.zeta), Error,
                       has_code(ErrorCode::MultipleSingularPoints));
}

TEST_CASE("classification rejects an irrational singular locus",
          "[poletheory]") {
  BiPoly f = (X() * X() - BiPoly::constant(Rat(2))) * Y();
  Int p(7);
  ResolutionData rd = resolve(f, p);
  ZetaResult zr = two_var_zeta(rd);
  DualGraph g = build_dual_graph(rd);
  CHECK_THROWS_MATCHES(classify_poles(rd, g, zr.zeta), Error,
                       has_code(ErrorCode::HypothesisViolated));
}
