// Exact two-variable integration over Z_p^2: closed forms, measure
// conservation, pole sets read off the reduced rational function, the
// congruence-count bridge, domain scaling, and error paths.

#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "igusa/dual_graph.hpp"
#include "igusa/resolve.hpp"
#include "igusa/zeta2d.hpp"

using namespace igusa;

namespace {

const BiPoly X = BiPoly::var_x();
const BiPoly Y = BiPoly::var_y();

BiPoly C(long v) { return BiPoly::constant(Rat(v)); }

// Number of solutions of f = 0 over Z/p^m by direct enumeration.
Int solution_count(const BiPoly& f, long p, int m) {
  Int pm = int_pow(Int(p), static_cast<unsigned long>(m));
  Int cnt(0);
  for (Int x(0); x < pm; ++x)
    for (Int y(0); y < pm; ++y) {
      Rat v = f.eval(Rat(x), Rat(y));
      if (v.den() != 1) continue;  // non-integral value cannot vanish mod p^m
      Int r = v.num() % pm;
      if (r < 0) r += pm;
      if (r == 0) ++cnt;
    }
  return cnt;
}

// Coefficients c_m of (1 - t Z)/(1 - t): c_m = N_m q^{-2m} is the density of
// solutions mod p^m (prefix sums of the series of 1 - t Z).
std::vector<Rat> density_series(const ZetaRational& Z, const Int& q, long M) {
  ZetaRational top = ZetaRational::scalar(q, Rat(1)) -
                     ZetaRational::monomial(q, Rat(1), 1) * Z;
  std::vector<Rat> a = top.series_coeffs(M);
  Rat run(0);
  for (auto& c : a) {
    run += c;
    c = run;
  }
  return a;
}

void check_counts(const ZetaRational& Z, const BiPoly& f, long p, int mmax) {
  auto cs = density_series(Z, Int(p), mmax);
  for (int m = 1; m <= mmax; ++m) {
    Int nm = solution_count(f, p, m);
    Rat expected(nm, int_pow(Int(p), static_cast<unsigned long>(2 * m)));
    INFO("m = " << m << ", N_m = " << nm.get_str());
    CHECK(cs[static_cast<size_t>(m)] == expected);
  }
}

void check_mass_one(const ZetaRational& Z, const Int& p) {
  CHECK(Z.evaluate_mc(Rat(0)) == AlgebraicReal::from_rat(p, Rat(1)));
}

// The reduced denominator must divide the square of the product of the
// candidate factors 1 - q^{-nu} t^N over components with points.
void check_pole_inclusion(const ZetaRational& Z, const ResolutionData& rd) {
  UniPoly prod = UniPoly::constant(Rat(1));
  for (const Component& c : rd.comps) {
    if (!c.has_points) continue;
    prod = prod *
           ZetaRational::den_factor_poly(rd.p, c.nu, c.N).pow(2);
  }
  UniPoly den = Z.reduced().second;
  auto [q, r] = UniPoly::divmod(prod, den);
  (void)q;
  CHECK(r.is_zero());
}

}  // namespace

TEST_CASE("constant inputs integrate to scalars", "[zeta2d]") {
  Int p(5);
  CHECK(two_var_zeta(resolve(C(1), p)).zeta == ZetaRational::scalar(p, Rat(1)));
  CHECK(two_var_zeta(resolve(C(3), p)).zeta == ZetaRational::scalar(p, Rat(1)));
  CHECK(two_var_zeta(resolve(C(5), p)).zeta ==
        ZetaRational::monomial(p, Rat(1), 1));
  CHECK(two_var_zeta(resolve(C(25), p)).zeta ==
        ZetaRational::monomial(p, Rat(1), 2));
}

TEST_CASE("coordinate axis has the one-variable closed form", "[zeta2d]") {
  for (long pl : {2L, 5L}) {
    Int p(pl);
    auto zr = two_var_zeta(resolve(X, p));
    CHECK(zr.zeta == ZetaRational::shell(p, 1, 0, 0));
    check_mass_one(zr.zeta, p);
    CHECK(zr.zeta.pole_order_at(Rat(-1)) == 1);
  }
}

TEST_CASE("two axes multiply by Fubini", "[zeta2d]") {
  for (long pl : {2L, 5L}) {
    Int p(pl);
    ZetaRational sh = ZetaRational::shell(p, 1, 0, 0);
    auto zr = two_var_zeta(resolve(X * Y, p));
    CHECK(zr.zeta == sh * sh);
    CHECK(zr.zeta.pole_order_at(Rat(-1)) == 2);

    auto rd = resolve(X * Y, p);
    auto cands = candidate_poles(rd, build_dual_graph(rd));
    REQUIRE(cands.size() == 1);
    CHECK(cands[0].s0 == Rat(-1));
    CHECK(cands[0].comps == std::vector<int>{0, 1});
    CHECK(cands[0].expected_order == 2);
    CHECK(cands[0].k == 0);
  }
}

TEST_CASE("crossing lines: frozen value with a double pole", "[zeta2d]") {
  Int p(2);
  auto rd = resolve(X * X - Y * Y, p);
  auto zr = two_var_zeta(rd);

  // 1/2 + (t^2/8) / (1 - t/2)^2
  ZetaRational expected = ZetaRational::monomial(p, Rat(1, 8), 2);
  expected.mul_den_factor(1, 1, 2);
  expected += ZetaRational::scalar(p, Rat(1, 2));
  CHECK(zr.zeta == expected);
  CHECK(zr.zeta.pole_order_at(Rat(-1)) == 2);
  check_mass_one(zr.zeta, p);

  auto cands = candidate_poles(rd, build_dual_graph(rd));
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].s0 == Rat(-1));
  CHECK(cands[0].expected_order == 2);
  check_pole_inclusion(zr.zeta, rd);
}

TEST_CASE("cusp: pole set, candidates, and congruence counts", "[zeta2d]") {
  Int p(5);
  BiPoly f = Y * Y - X * X * X;
  auto rd = resolve(f, p);
  auto zr = two_var_zeta(rd);

  check_mass_one(zr.zeta, p);
  CHECK(zr.zeta.pole_order_at(Rat(-1)) == 1);
  CHECK(zr.zeta.pole_order_at(Rat(-5, 6)) == 1);
  CHECK(zr.zeta.pole_order_at(Rat(-1, 2)) == 0);
  check_counts(zr.zeta, f, 5, 3);
  check_pole_inclusion(zr.zeta, rd);

  auto cands = candidate_poles(rd, build_dual_graph(rd));
  REQUIRE(cands.size() == 2);
  CHECK(cands[0].s0 == Rat(-5, 6));
  CHECK(cands[0].comps == std::vector<int>{3});
  CHECK(cands[0].expected_order == 1);
  CHECK(cands[1].s0 == Rat(-1));
  CHECK(cands[1].comps == std::vector<int>{0, 1, 2});
  CHECK(cands[1].expected_order == 1);
}

TEST_CASE("axis times cusp: candidates with zero residue are regular",
          "[zeta2d]") {
  BiPoly f = X * (Y * Y - X * X * X);
  {
    Int p(5);
    auto rd = resolve(f, p);
    auto zr = two_var_zeta(rd);
    check_mass_one(zr.zeta, p);
    // Candidates -2/3 and -3/4 come from curves crossed by at most two
    // others and no direction-free form; their residues vanish and the
    // reduced function is regular there.
    CHECK(zr.zeta.pole_order_at(Rat(-1)) == 1);
    CHECK(zr.zeta.pole_order_at(Rat(-5, 8)) == 1);
    CHECK(zr.zeta.pole_order_at(Rat(-2, 3)) == 0);
    CHECK(zr.zeta.pole_order_at(Rat(-3, 4)) == 0);
    check_pole_inclusion(zr.zeta, rd);

    auto cands = candidate_poles(rd, build_dual_graph(rd));
    REQUIRE(cands.size() == 4);
    CHECK(cands[0].s0 == Rat(-5, 8));
    CHECK(cands[0].comps == std::vector<int>{4});
    CHECK(cands[1].s0 == Rat(-2, 3));
    CHECK(cands[1].comps == std::vector<int>{2});
    CHECK(cands[2].s0 == Rat(-3, 4));
    CHECK(cands[2].comps == std::vector<int>{3});
    CHECK(cands[3].s0 == Rat(-1));
    CHECK(cands[3].comps == std::vector<int>{0, 1});
    for (const auto& cp : cands) CHECK(cp.expected_order == 1);
  }
  {
    Int p(3);
    auto zr = two_var_zeta(resolve(f, p));
    check_mass_one(zr.zeta, p);
    check_counts(zr.zeta, f, 3, 3);
  }
}

TEST_CASE("quintic cusp: two regular candidates between the poles",
          "[zeta2d]") {
  Int p(3);
  BiPoly f = Y * Y - BiPoly::monomial(5, 0, Rat(1));
  auto rd = resolve(f, p);
  auto zr = two_var_zeta(rd);
  check_mass_one(zr.zeta, p);
  CHECK(zr.zeta.pole_order_at(Rat(-1)) == 1);
  CHECK(zr.zeta.pole_order_at(Rat(-7, 10)) == 1);
  CHECK(zr.zeta.pole_order_at(Rat(-3, 4)) == 0);
  CHECK(zr.zeta.pole_order_at(Rat(-4, 5)) == 0);
  check_counts(zr.zeta, f, 3, 4);
  check_pole_inclusion(zr.zeta, rd);
}

TEST_CASE("pointless conic: frozen value from the blown-up chart sum",
          "[zeta2d]") {
  Int p(3);
  BiPoly f = X * X + Y * Y;
  auto rd = resolve(f, p);
  auto zr = two_var_zeta(rd);

  // (8/9) / (1 - t^2/9): only the new curve carries points, ratio 1.
  ZetaRational expected = ZetaRational::scalar(p, Rat(8, 9));
  expected.mul_den_factor(2, 2, 1);
  CHECK(zr.zeta == expected);
  check_mass_one(zr.zeta, p);
  check_counts(zr.zeta, f, 3, 3);
  check_pole_inclusion(zr.zeta, rd);

  auto cands = candidate_poles(rd, build_dual_graph(rd));
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].s0 == Rat(-1));
  CHECK(cands[0].comps == std::vector<int>{1});
  CHECK(cands[0].expected_order == 1);
}

TEST_CASE("no p-adic zeros: the function is a polynomial", "[zeta2d]") {
  Int p(2);
  BiPoly f = X * X + Y * Y + C(1);
  auto zr = two_var_zeta(resolve(f, p));
  ZetaRational expected = ZetaRational::scalar(p, Rat(1, 2)) +
                          ZetaRational::monomial(p, Rat(1, 2), 1);
  CHECK(zr.zeta == expected);
  CHECK(zr.zeta.reduced().second.deg() == 0);
  check_mass_one(zr.zeta, p);
  check_counts(zr.zeta, f, 2, 3);
}

TEST_CASE("sum of cubes: the direction-free form keeps its pole", "[zeta2d]") {
  BiPoly f = X * X * X + Y * Y * Y;
  for (long pl : {2L, 5L}) {
    Int p(pl);
    auto rd = resolve(f, p);
    auto zr = two_var_zeta(rd);
    check_mass_one(zr.zeta, p);
    CHECK(zr.zeta.pole_order_at(Rat(-1)) == 1);
    CHECK(zr.zeta.pole_order_at(Rat(-2, 3)) == 1);
    check_pole_inclusion(zr.zeta, rd);
  }
  check_counts(two_var_zeta(resolve(f, Int(2))).zeta, f, 2, 3);
}

TEST_CASE("irrational transverse crossing doubles the pole", "[zeta2d]") {
  Int p(7);
  BiPoly f = (X * X - C(2)) * Y;
  auto rd = resolve(f, p);
  auto zr = two_var_zeta(rd);
  check_mass_one(zr.zeta, p);
  CHECK(zr.zeta.pole_order_at(Rat(-1)) == 2);
  check_pole_inclusion(zr.zeta, rd);

  auto cands = candidate_poles(rd, build_dual_graph(rd));
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].s0 == Rat(-1));
  CHECK(cands[0].comps == std::vector<int>{0, 1});
  CHECK(cands[0].expected_order == 2);
}

TEST_CASE("scaling by constants shifts by powers of t", "[zeta2d]") {
  Int p(5);
  BiPoly f = Y * Y - X * X * X;
  ZetaRational base = two_var_zeta(resolve(f, p)).zeta;
  CHECK(two_var_zeta(resolve(f * Rat(5), p)).zeta ==
        ZetaRational::monomial(p, Rat(1), 1) * base);
  CHECK(two_var_zeta(resolve(f * Rat(25), p)).zeta ==
        ZetaRational::monomial(p, Rat(1), 2) * base);
  CHECK(two_var_zeta(resolve(f * Rat(1, 3), p)).zeta == base);
}

TEST_CASE("box domains rescale through the affine substitution", "[zeta2d]") {
  Int p(5);
  CHECK(zeta_on_box(X, Box2{Rat(0), Rat(0), 0}, p).zeta ==
        ZetaRational::shell(p, 1, 0, 0));
  CHECK(zeta_on_box(X, Box2{Rat(0), Rat(0), 1}, p).zeta ==
        Rat(1, 5) * ZetaRational::shell(p, 1, 0, 1));
  // On a box bounded away from the zero locus the integrand is constant.
  CHECK(zeta_on_box(X, Box2{Rat(1), Rat(0), 1}, p).zeta ==
        ZetaRational::scalar(p, Rat(1, 25)));
  CHECK_THROWS_MATCHES(
      zeta_on_box(X, Box2{Rat(1, 5), Rat(0), 1}, p), Error,
      Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.code() == ErrorCode::DomainError;
      }));
}

TEST_CASE("non-integral content is rejected", "[zeta2d]") {
  Int p(5);
  CHECK_THROWS_MATCHES(
      two_var_zeta(resolve(X * Rat(1, 5), p)), Error,
      Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.code() == ErrorCode::DomainError;
      }));
}

TEST_CASE("subdivision budget is enforced", "[zeta2d]") {
  Int p(2);
  CHECK_THROWS_MATCHES(
      two_var_zeta(resolve(Y * Y - X * X * X, p), ZetaOptions{0}), Error,
      Catch::Matchers::Predicate<Error>([](const Error& e) {
        return e.code() == ErrorCode::NeedMoreDepth;
      }));
}

TEST_CASE("rational non-integer center integrates cleanly", "[zeta2d]") {
  Int p(5);
  BiPoly f = C(27) * Y * Y - (C(3) * X - C(1)).pow(3);
  auto zr = two_var_zeta(resolve(f, p));
  check_mass_one(zr.zeta, p);
  CHECK(zr.zeta.pole_order_at(Rat(-1)) == 1);
  CHECK(zr.zeta.pole_order_at(Rat(-5, 6)) == 1);
}

TEST_CASE("translated singularity gives the same pole set", "[zeta2d]") {
  Int p(5);
  BiPoly f = Y * Y - (X - C(1)).pow(3);
  auto zr = two_var_zeta(resolve(f, p));
  check_mass_one(zr.zeta, p);
  CHECK(zr.zeta.pole_order_at(Rat(-1)) == 1);
  CHECK(zr.zeta.pole_order_at(Rat(-5, 6)) == 1);
}

TEST_CASE("pieces partition the square and rebuild the function", "[zeta2d]") {
  Int p(5);
  BiPoly f = Y * Y - X * X * X;
  auto a = two_var_zeta(resolve(f, p));
  auto b = two_var_zeta(resolve(f, p));

  CHECK(a.pieces.size() == b.pieces.size());
  CHECK(a.zeta.str() == b.zeta.str());

  ZetaRational sum = ZetaRational::zero(p);
  for (const IntegrationPiece& pc : a.pieces) {
    REQUIRE(!pc.chain.empty());
    CHECK(pc.chain.front().rfind("chart ", 0) == 0);
    CHECK(pc.f_ord >= 0);
    CHECK(pc.jac_ord >= 0);
    CHECK(pc.box1.depth >= 0);
    CHECK(pc.box2.depth >= 0);
    sum += local_case_integral(p, pc);
  }
  CHECK(sum == a.zeta);
  // Partition exactness: piece volumes (s = 0) sum to the measure of Z_p^2.
  check_mass_one(sum, p);
}
