#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "igusa/dual_graph.hpp"
#include "igusa/resolve.hpp"

using namespace igusa;

namespace {

const BiPoly X = BiPoly::var_x();
const BiPoly Y = BiPoly::var_y();
BiPoly C(long v) { return BiPoly::constant(Rat(v)); }

std::vector<std::pair<long, long>> record_shape(const ResolutionData& rd) {
  std::vector<std::pair<long, long>> v;
  for (const auto& r : rd.records) v.emplace_back(r.N, r.nu);
  return v;
}

int strict_id(const ResolutionData& rd, const BiPoly& eq) {
  BiPoly want = eq.primitive();
  for (const auto& c : rd.comps)
    if (c.kind == CompKind::Strict && c.input_eq == want) return c.id;
  return -1;
}

std::set<std::tuple<int, int, long>> edge_set(const DualGraph& g) {
  std::set<std::tuple<int, int, long>> s;
  for (const auto& e : g.edges) s.insert({e.a, e.b, e.rho});
  return s;
}

std::set<int> vertex_comps(const DualGraph& g) {
  std::set<int> s;
  for (const auto& v : g.vertices) s.insert(v.comp);
  return s;
}

// Every record must balance exactly: the exponents alpha_i = mu_i + s0 M_i of
// the rational directions and the form degrees satisfy
//   sum_S (alpha_i - 1) + sum_{S'} s0 d_i M_i = -2   at s0 = -nu/N,
// and each alpha_i equals nu_j + s0 N_j for the neighbor j the direction
// tracks to in the final configuration.
void check_record_identities(const ResolutionData& rd) {
  for (const auto& rec : rd.records) {
    CAPTURE(rec.index);
    const Rat s0 = rec.s0();
    Rat balance(0);
    for (const auto& d : rec.dirs)
      balance = balance + Rat(d.mu) + s0 * Rat(d.M) - Rat(1);
    for (const auto& u : rec.unit_forms)
      balance = balance + s0 * Rat(static_cast<long>(u.deg)) * Rat(u.M);
    CHECK(balance == Rat(-2));
    for (const auto& d : rec.dirs) {
      REQUIRE(d.neighbor >= 0);
      const Component& nb = rd.comps[static_cast<size_t>(d.neighbor)];
      CHECK(Rat(d.mu) + s0 * Rat(d.M) == Rat(nb.nu) + s0 * Rat(nb.N));
    }
  }
}

// Chart bookkeeping that must hold for any resolution: child links, the
// sub-chart codes, and the domain flags (the y-chart of a blow-up always
// integrates its first coordinate over pZ_p; the x-chart inherits).
void check_chart_structure(const ResolutionData& rd) {
  CHECK_FALSE(rd.charts.empty());
  CHECK(rd.charts[0].sub == 0);
  CHECK_FALSE(rd.charts[0].first_in_pZp);
  for (const auto& rec : rd.records) {
    const Chart& parent = rd.charts[static_cast<size_t>(rec.chart)];
    const Chart& a = rd.charts[static_cast<size_t>(rec.chart_a)];
    const Chart& b = rd.charts[static_cast<size_t>(rec.chart_b)];
    CHECK_FALSE(parent.leaf);
    CHECK(a.parent == rec.chart);
    CHECK(b.parent == rec.chart);
    CHECK(a.sub == 1);
    CHECK(b.sub == 2);
    CHECK(a.first_in_pZp == parent.first_in_pZp);
    CHECK(b.first_in_pZp);
  }
  for (int cid : rd.leaf_charts())
    CHECK(rd.charts[static_cast<size_t>(cid)].leaf);
}

std::string signature(const ResolutionData& rd, const DualGraph& g) {
  std::string s;
  for (const auto& r : rd.records) {
    s += "R" + std::to_string(r.index) + " c" + std::to_string(r.chart) +
         " @" + r.cx.str() + "," + r.cy.str() + " N" + std::to_string(r.N) +
         " nu" + std::to_string(r.nu) + " d" + r.f_unit.str() + " e" +
         r.jac_unit.str() + " |";
    for (const auto& d : r.dirs)
      s += " (" + d.a1.get_str() + ":" + d.a2.get_str() + ")M" +
           std::to_string(d.M) + "u" + std::to_string(d.mu) + "n" +
           std::to_string(d.neighbor) + "r" + std::to_string(d.rho);
    for (const auto& u : r.unit_forms)
      s += " [" + u.h.str() + "]^" + std::to_string(u.M);
    s += "\n";
  }
  for (const auto& ch : rd.charts) {
    s += "C" + std::to_string(ch.id) + (ch.leaf ? "*" : " ");
    for (const auto& [c, G] : ch.eqs)
      s += " " + std::to_string(c) + ":" + G.str();
    s += "\n";
  }
  for (const auto& e : g.edges)
    s += "E " + std::to_string(e.a) + "-" + std::to_string(e.b) + " rho" +
         std::to_string(e.rho) + "\n";
  return s;
}

}  // namespace

TEST_CASE("cuspidal cubic: full resolution trace") {
  const BiPoly f = Y * Y - X.pow(3);
  ResolutionData rd = resolve(f, Int(5));

  REQUIRE(rd.comps.size() == 4);
  CHECK(rd.strict_count() == 1);
  const int sc = strict_id(rd, f);
  REQUIRE(sc == 0);
  CHECK(rd.comps[1].name == "E_1");
  CHECK(rd.comps[3].name == "E_3");

  CHECK(record_shape(rd) ==
        std::vector<std::pair<long, long>>{{2, 2}, {3, 3}, {6, 5}});
  REQUIRE(rd.charts.size() == 7);
  CHECK(rd.leaf_charts() == std::vector<int>{2, 3, 5, 6});
  CHECK(rd.charts[2].first_in_pZp);
  CHECK_FALSE(rd.charts[3].first_in_pZp);
  CHECK(rd.charts[5].first_in_pZp);
  CHECK(rd.charts[6].first_in_pZp);
  check_chart_structure(rd);

  // Record 1: the singular origin, all tangency along the x-axis.
  const BlowupRecord& r1 = rd.records[0];
  CHECK(r1.chart == 0);
  CHECK(r1.cx == Rat(0));
  CHECK(r1.cy == Rat(0));
  REQUIRE(r1.dirs.size() == 1);
  CHECK(r1.dirs[0].a1 == 1);
  CHECK(r1.dirs[0].a2 == 0);
  CHECK(r1.dirs[0].M == 2);
  CHECK(r1.dirs[0].mu == 1);
  CHECK(r1.unit_forms.empty());
  CHECK(r1.f_unit == Rat(1));
  CHECK(r1.jac_unit == Rat(1));
  CHECK(r1.dirs[0].neighbor == 3);
  CHECK(r1.dirs[0].rho == 2);

  // Record 2: E_1 tangent to the strict transform.
  const BlowupRecord& r2 = rd.records[1];
  CHECK(r2.chart == 1);
  CHECK(r2.cx == Rat(0));
  CHECK(r2.cy == Rat(0));
  REQUIRE(r2.dirs.size() == 1);
  CHECK(r2.dirs[0].a1 == 0);
  CHECK(r2.dirs[0].a2 == 1);
  CHECK(r2.dirs[0].M == 3);
  CHECK(r2.dirs[0].mu == 2);
  CHECK(r2.dirs[0].neighbor == 3);
  CHECK(r2.dirs[0].rho == 1);

  // Record 3: the triple point; three transverse directions.
  const BlowupRecord& r3 = rd.records[2];
  CHECK(r3.chart == 4);
  CHECK(r3.s0() == Rat(-5, 6));
  REQUIRE(r3.dirs.size() == 3);
  CHECK(r3.dirs[0].a1 == 0);
  CHECK(r3.dirs[0].a2 == 1);
  CHECK(r3.dirs[0].M == 2);
  CHECK(r3.dirs[0].mu == 2);
  CHECK(r3.dirs[0].neighbor == 1);
  CHECK(r3.dirs[1].a1 == 1);
  CHECK(r3.dirs[1].a2 == 0);
  CHECK(r3.dirs[1].M == 3);
  CHECK(r3.dirs[1].mu == 3);
  CHECK(r3.dirs[1].neighbor == 2);
  CHECK(r3.dirs[2].a1 == 1);
  CHECK(r3.dirs[2].a2 == 1);
  CHECK(r3.dirs[2].M == 1);
  CHECK(r3.dirs[2].mu == 1);
  CHECK(r3.dirs[2].neighbor == 0);
  for (const auto& d : r3.dirs) CHECK(d.rho == 0);

  check_record_identities(rd);

  for (const auto& c : rd.comps) CHECK(c.has_points);
  DualGraph g = build_dual_graph(rd);
  CHECK(vertex_comps(g) == std::set<int>{0, 1, 2, 3});
  CHECK(edge_set(g) ==
        std::set<std::tuple<int, int, long>>{{1, 3, 2}, {2, 3, 1}, {0, 3, 0}});

  MinimalPartCheck mp = minimal_part_and_order_check(g);
  CHECK(mp.ok);
  CHECK(mp.min_ratio == Rat(5, 6));
  CHECK(mp.minimal_comps == std::vector<int>{3});
  REQUIRE(mp.pieces.size() == 1);
  CHECK(mp.pieces[0].size() == 4);
  CHECK(mp.comparisons.size() == g.edges.size());
  require_ratio_order(g);
}

TEST_CASE("cuspidal cubic: trace is independent of the prime") {
  const BiPoly f = Y * Y - X.pow(3);
  ResolutionData base = resolve(f, Int(5));
  DualGraph gbase = build_dual_graph(base);
  for (long pv : {2L, 3L, 7L}) {
    ResolutionData rd = resolve(f, Int(pv));
    DualGraph g = build_dual_graph(rd);
    CHECK(record_shape(rd) == record_shape(base));
    CHECK(edge_set(g) == edge_set(gbase));
    check_record_identities(rd);
    CHECK(minimal_part_and_order_check(g).ok);
  }
}

TEST_CASE("degree-five cusp: chain of four blow-ups") {
  const BiPoly f = Y * Y - X.pow(5);
  ResolutionData rd = resolve(f, Int(3));

  REQUIRE(rd.comps.size() == 5);
  CHECK(record_shape(rd) ==
        std::vector<std::pair<long, long>>{{2, 2}, {4, 3}, {5, 4}, {10, 7}});
  CHECK(rd.leaf_charts() == std::vector<int>{2, 4, 5, 7, 8});
  check_chart_structure(rd);

  // Record 2 keeps two directions apart; record 3 merges the tangent pair.
  const BlowupRecord& r2 = rd.records[1];
  REQUIRE(r2.dirs.size() == 2);
  CHECK(r2.dirs[0].a1 == 0);
  CHECK(r2.dirs[0].a2 == 1);
  CHECK(r2.dirs[0].M == 2);
  CHECK(r2.dirs[0].mu == 2);
  CHECK(r2.dirs[1].a1 == 1);
  CHECK(r2.dirs[1].a2 == 0);
  CHECK(r2.dirs[1].M == 2);
  CHECK(r2.dirs[1].mu == 1);
  const BlowupRecord& r3 = rd.records[2];
  REQUIRE(r3.dirs.size() == 1);
  CHECK(r3.dirs[0].M == 5);
  CHECK(r3.dirs[0].mu == 3);
  // alpha = mu + s0 M = 3 - (4/5) 5 = -1: the extreme allowed exponent.
  CHECK(Rat(r3.dirs[0].mu) + r3.s0() * Rat(r3.dirs[0].M) == Rat(-1));

  check_record_identities(rd);

  DualGraph g = build_dual_graph(rd);
  CHECK(vertex_comps(g) == std::set<int>{0, 1, 2, 3, 4});
  CHECK(edge_set(g) == std::set<std::tuple<int, int, long>>{
                           {1, 2, 1}, {2, 4, 2}, {3, 4, 1}, {0, 4, 0}});
  MinimalPartCheck mp = minimal_part_and_order_check(g);
  CHECK(mp.ok);
  CHECK(mp.min_ratio == Rat(7, 10));
  CHECK(mp.minimal_comps == std::vector<int>{4});
}

TEST_CASE("line through a cusp: mixed configuration") {
  const BiPoly f = X * (Y * Y - X.pow(3));
  ResolutionData rd = resolve(f, Int(5));

  REQUIRE(rd.comps.size() == 5);
  CHECK(rd.strict_count() == 2);
  const int line = strict_id(rd, X);
  const int cusp = strict_id(rd, Y * Y - X.pow(3));
  REQUIRE(line == 0);
  REQUIRE(cusp == 1);
  CHECK(record_shape(rd) ==
        std::vector<std::pair<long, long>>{{3, 2}, {4, 3}, {8, 5}});
  check_chart_structure(rd);

  // Record 1 separates the two tangent lines of x * (y^2 - x^3).
  const BlowupRecord& r1 = rd.records[0];
  REQUIRE(r1.dirs.size() == 2);
  CHECK(r1.dirs[0].a1 == 0);
  CHECK(r1.dirs[0].a2 == 1);
  CHECK(r1.dirs[0].M == 1);
  CHECK(r1.dirs[0].mu == 1);
  CHECK(r1.dirs[1].a1 == 1);
  CHECK(r1.dirs[1].a2 == 0);
  CHECK(r1.dirs[1].M == 2);
  CHECK(r1.dirs[1].mu == 1);
  // Record 2 sees E_1 and the cusp branch with one shared direction.
  const BlowupRecord& r2 = rd.records[1];
  REQUIRE(r2.dirs.size() == 1);
  CHECK(r2.dirs[0].M == 4);
  CHECK(r2.dirs[0].mu == 2);
  // Record 3: triple point with exponents 1/8, 1/2, 3/8.
  const BlowupRecord& r3 = rd.records[2];
  CHECK(r3.s0() == Rat(-5, 8));
  REQUIRE(r3.dirs.size() == 3);
  CHECK(Rat(r3.dirs[0].mu) + r3.s0() * Rat(r3.dirs[0].M) == Rat(1, 8));
  CHECK(Rat(r3.dirs[1].mu) + r3.s0() * Rat(r3.dirs[1].M) == Rat(1, 2));
  CHECK(Rat(r3.dirs[2].mu) + r3.s0() * Rat(r3.dirs[2].M) == Rat(3, 8));

  check_record_identities(rd);

  DualGraph g = build_dual_graph(rd);
  CHECK(edge_set(g) == std::set<std::tuple<int, int, long>>{
                           {0, 2, 0}, {2, 4, 2}, {3, 4, 1}, {1, 4, 0}});
  MinimalPartCheck mp = minimal_part_and_order_check(g);
  CHECK(mp.ok);
  CHECK(mp.min_ratio == Rat(5, 8));
  CHECK(mp.minimal_comps == std::vector<int>{4});
}

TEST_CASE("isolated quadratic point: direction-free blow-up") {
  const BiPoly f = X * X + Y * Y;
  for (long pv : {2L, 3L, 7L}) {
    CAPTURE(pv);
    ResolutionData rd = resolve(f, Int(pv));
    CHECK(record_shape(rd) == std::vector<std::pair<long, long>>{{2, 2}});
    const BlowupRecord& r1 = rd.records[0];
    CHECK(r1.dirs.empty());
    REQUIRE(r1.unit_forms.size() == 1);
    CHECK(r1.unit_forms[0].deg == 2);
    CHECK(r1.unit_forms[0].M == 1);
    CHECK(r1.unit_forms[0].h == f.primitive());

    // x^2 + y^2 = 0 only at the blown-up origin: the strict transform has
    // no points over Z_p for these primes.
    CHECK_FALSE(rd.comps[0].has_points);
    CHECK(rd.comps[1].has_points);

    DualGraph g = build_dual_graph(rd);
    CHECK(vertex_comps(g) == std::set<int>{1});
    CHECK(g.edges.empty());
    MinimalPartCheck mp = minimal_part_and_order_check(g);
    CHECK(mp.ok);
    CHECK(mp.minimal_comps == std::vector<int>{1});
    check_record_identities(rd);
  }
  // At p = 5 the tangent cone splits p-adically (x^2 + y^2 = (x+2i...)
  // has roots since -1 is a square), so the direction set is not rational.
  CHECK_THROWS_MATCHES(resolve(f, Int(5)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() ==
                                ErrorCode::NonRationalDirectionUnsupported;
                       }));
}

TEST_CASE("sum of two cubes: direction set and unit form together") {
  const BiPoly f = X.pow(3) + Y.pow(3);
  for (long pv : {2L, 5L}) {
    CAPTURE(pv);
    ResolutionData rd = resolve(f, Int(pv));
    REQUIRE(rd.comps.size() == 3);
    CHECK(rd.strict_count() == 2);
    const int line = strict_id(rd, X + Y);
    const int quad = strict_id(rd, X * X - X * Y + Y * Y);
    REQUIRE(line >= 0);
    REQUIRE(quad >= 0);
    CHECK(record_shape(rd) == std::vector<std::pair<long, long>>{{3, 2}});

    const BlowupRecord& r1 = rd.records[0];
    REQUIRE(r1.dirs.size() == 1);
    CHECK(r1.dirs[0].a1 == 1);
    CHECK(r1.dirs[0].a2 == -1);
    CHECK(r1.dirs[0].M == 1);
    CHECK(r1.dirs[0].mu == 1);
    CHECK(r1.dirs[0].neighbor == line);
    REQUIRE(r1.unit_forms.size() == 1);
    CHECK(r1.unit_forms[0].deg == 2);
    CHECK(r1.unit_forms[0].M == 1);
    check_record_identities(rd);

    // The quadratic factor only vanishes at the origin, which is blown up.
    CHECK(rd.comps[static_cast<size_t>(line)].has_points);
    CHECK_FALSE(rd.comps[static_cast<size_t>(quad)].has_points);

    DualGraph g = build_dual_graph(rd);
    CHECK(vertex_comps(g) == std::set<int>{line, 2});
    CHECK(edge_set(g) == std::set<std::tuple<int, int, long>>{{line, 2, 0}});
    CHECK(minimal_part_and_order_check(g).ok);
  }
  // -3 is a square mod 7: the quadratic form gains a 7-adic root.
  CHECK_THROWS_MATCHES(resolve(f, Int(7)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() ==
                                ErrorCode::NonRationalDirectionUnsupported;
                       }));
}

TEST_CASE("normal crossings that need no blow-up") {
  SECTION("two transverse lines") {
    ResolutionData rd = resolve(X * Y, Int(2));
    CHECK(rd.records.empty());
    CHECK(rd.comps.size() == 2);
    DualGraph g = build_dual_graph(rd);
    REQUIRE(g.vertices.size() == 2);
    CHECK(edge_set(g) == std::set<std::tuple<int, int, long>>{{0, 1, 0}});
    MinimalPartCheck mp = minimal_part_and_order_check(g);
    CHECK(mp.ok);
    CHECK(mp.minimal_comps == std::vector<int>{0, 1});
    REQUIRE(mp.pieces.size() == 1);
    CHECK(mp.piece_minimal_connected[0]);
  }
  SECTION("difference of squares: unit Jacobian determinant scale") {
    // The crossing is transverse over Q (determinant 2) even at p = 2,
    // where the two tangent directions collide mod p.
    ResolutionData rd = resolve(X * X - Y * Y, Int(2));
    CHECK(rd.records.empty());
    DualGraph g = build_dual_graph(rd);
    CHECK(g.vertices.size() == 2);
    CHECK(g.edges.size() == 1);
    CHECK(minimal_part_and_order_check(g).ok);
  }
  SECTION("a single smooth line") {
    ResolutionData rd = resolve(X, Int(3));
    CHECK(rd.records.empty());
    DualGraph g = build_dual_graph(rd);
    CHECK(g.vertices.size() == 1);
    CHECK(g.edges.empty());
    CHECK(minimal_part_and_order_check(g).ok);
  }
  SECTION("two parallel lines: disconnected pieces") {
    ResolutionData rd = resolve(X * (X - C(1)), Int(3));
    CHECK(rd.records.empty());
    DualGraph g = build_dual_graph(rd);
    CHECK(g.vertices.size() == 2);
    CHECK(g.edges.empty());
    MinimalPartCheck mp = minimal_part_and_order_check(g);
    CHECK(mp.ok);
    REQUIRE(mp.pieces.size() == 2);
    // The global minimal part spans both pieces; each piece passes on its own.
    CHECK(mp.minimal_comps.size() == 2);
    CHECK(mp.piece_minimal_connected[0]);
    CHECK(mp.piece_minimal_connected[1]);
  }
}

TEST_CASE("intersections are decided p-adically, not over Q") {
  const BiPoly f = (X * X - C(2)) * Y;
  // sqrt(2) exists in Z_7: the crossing is real for the integral even
  // though it has no rational coordinates.
  {
    ResolutionData rd = resolve(f, Int(7));
    CHECK(rd.records.empty());
    const int axis = strict_id(rd, Y);
    const int conic = strict_id(rd, X * X - C(2));
    REQUIRE(axis >= 0);
    REQUIRE(conic >= 0);
    CHECK(rd.comps[static_cast<size_t>(conic)].has_points);
    DualGraph g = build_dual_graph(rd);
    CHECK(g.vertices.size() == 2);
    CHECK(edge_set(g) == std::set<std::tuple<int, int, long>>{
                             {std::min(axis, conic), std::max(axis, conic), 0}});
    CHECK(minimal_part_and_order_check(g).ok);
  }
  // sqrt(2) does not exist in Z_3 or Z_2: x^2 - 2 = 0 has no points at all,
  // so its vertex disappears and no edge is reported.
  for (long pv : {3L, 2L}) {
    CAPTURE(pv);
    ResolutionData rd = resolve(f, Int(pv));
    CHECK(rd.records.empty());
    const int axis = strict_id(rd, Y);
    const int conic = strict_id(rd, X * X - C(2));
    CHECK_FALSE(rd.comps[static_cast<size_t>(conic)].has_points);
    DualGraph g = build_dual_graph(rd);
    CHECK(vertex_comps(g) == std::set<int>{axis});
    CHECK(g.edges.empty());
    CHECK(minimal_part_and_order_check(g).ok);
  }
}

TEST_CASE("curves with no points give an empty configuration") {
  // x^2 + y^2 + 1 = 0 has no solution in Z_2 x Z_2 (sums of two squares
  // avoid 7 mod 8), so no vertex survives.
  ResolutionData rd = resolve(X * X + Y * Y + C(1), Int(2));
  CHECK(rd.records.empty());
  CHECK_FALSE(rd.comps[0].has_points);
  DualGraph g = build_dual_graph(rd);
  CHECK(g.vertices.empty());
  CHECK_THROWS_MATCHES(minimal_part_and_order_check(g), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::EmptyTree;
                       }));
  // The same conic has smooth points over Z_3 ((1,1) lifts by Hensel).
  ResolutionData rd3 = resolve(X * X + Y * Y + C(1), Int(3));
  CHECK(rd3.comps[0].has_points);
  CHECK(build_dual_graph(rd3).vertices.size() == 1);
}

TEST_CASE("rational non-integral centers are used when p-integral") {
  const BiPoly f = C(27) * Y * Y - (C(3) * X - C(1)).pow(3);
  // At p = 5 the center (1/3, 0) is 5-integral: the cusp trace repeats there.
  ResolutionData rd = resolve(f, Int(5));
  CHECK(record_shape(rd) ==
        std::vector<std::pair<long, long>>{{2, 2}, {3, 3}, {6, 5}});
  REQUIRE_FALSE(rd.records.empty());
  CHECK(rd.records[0].chart == 0);
  CHECK(rd.records[0].cx == Rat(1, 3));
  CHECK(rd.records[0].cy == Rat(0));
  check_record_identities(rd);
  check_chart_structure(rd);
  DualGraph g = build_dual_graph(rd);
  CHECK(edge_set(g) ==
        std::set<std::tuple<int, int, long>>{{1, 3, 2}, {2, 3, 1}, {0, 3, 0}});
  CHECK(minimal_part_and_order_check(g).ok);

  // At p = 3 the center is not 3-integral, but the curve also has no
  // 3-integral points (ord(x - 1/3) = -1 forces ord(y) < 0): nothing to do.
  ResolutionData rd3 = resolve(f, Int(3));
  CHECK(rd3.records.empty());
  CHECK_FALSE(rd3.comps[0].has_points);
  CHECK(build_dual_graph(rd3).vertices.empty());
}

TEST_CASE("irrational singular centers are rejected, not guessed") {
  const BiPoly f = Y * Y - (X * X - C(2)).pow(3);
  // Over Z_7 the curve is singular at (sqrt(2), 0) with sqrt(2) in Z_7 \ Q:
  // the singular-point scan persists and the input is refused.
  ResolveOptions opt;
  opt.cert_depth = 8;
  CHECK_THROWS_MATCHES(resolve(f, Int(7), opt), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() ==
                                ErrorCode::NonRationalCenterUnsupported;
                       }));
  // Over Z_3 the singular locus is empty (2 is not a square mod 3) and the
  // curve is already normal crossing; it keeps its points ((0,1) lifts).
  ResolutionData rd = resolve(f, Int(3));
  CHECK(rd.records.empty());
  CHECK(rd.comps[0].has_points);
  DualGraph g = build_dual_graph(rd);
  CHECK(g.vertices.size() == 1);
  CHECK(minimal_part_and_order_check(g).ok);
}

TEST_CASE("blow-up budget is enforced") {
  ResolveOptions opt;
  opt.max_blowups = 2;  // the cuspidal cubic needs three
  CHECK_THROWS_MATCHES(resolve(Y * Y - X.pow(3), Int(5), opt), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::MaxBlowupsExceeded;
                       }));
}

TEST_CASE("degenerate inputs") {
  CHECK_THROWS_MATCHES(resolve(X, Int(4)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::DomainError;
                       }));
  CHECK_THROWS_MATCHES(resolve(BiPoly(), Int(3)), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.code() == ErrorCode::DomainError;
                       }));
  ResolutionData rd = resolve(C(5), Int(3));
  CHECK(rd.comps.empty());
  CHECK(rd.records.empty());
  CHECK(rd.f_lead == Rat(5));
  CHECK(rd.charts.size() == 1);
}

TEST_CASE("resolution output is deterministic") {
  const BiPoly f = X * (Y * Y - X.pow(3));
  ResolutionData a = resolve(f, Int(3));
  ResolutionData b = resolve(f, Int(3));
  CHECK(signature(a, build_dual_graph(a)) == signature(b, build_dual_graph(b)));
}
