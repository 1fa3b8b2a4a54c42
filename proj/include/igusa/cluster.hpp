#pragma once

// Valuation clustering of one-variable polynomials over Z_p:
//  - approximate_root: for a monic irreducible h of degree d >= 2 with no
//    root in Z_p, the unique coset b + P^r on which |h| sits at its plateau
//    value, with |h(x)| = |x - b|^d outside it,
//  - cluster trees: one bullet per pairwise-congruence coset of the linear
//    roots and per plateau coset of each irreducible factor,
//  - reduce_leaf: merge everything attached to a deepest bullet into a
//    single linear factor (x - a0)^{M0}, dropping exactly that bullet.

#include <algorithm>
#include <string>
#include <vector>

#include "igusa/errors.hpp"
#include "igusa/padic.hpp"
#include "igusa/padic_roots.hpp"
#include "igusa/rational.hpp"
#include "igusa/unipoly.hpp"

namespace igusa {

struct RootApproximation {
  long r = 0;        // plateau coset depth
  Int b;             // representative of the coset, in [0, p^r)
  int d = 0;         // degree of the factor
  long plateau_e = 0;  // plateau value is q^{-plateau_e}
};

// Find the plateau coset of a monic irreducible h (degree >= 2).  Errors:
//  - ReducibleFactor if h is shown not irreducible over Q_p: a repeated
//    factor, a detected Z_p root (Hensel certificate), or a plateau shape
//    that contradicts the unique-coset displays;
//  - NeedMoreDepth if the scan hits the depth cap undecided.
inline RootApproximation approximate_root(const UniPoly& h, const Int& p,
                                          long depth_cap = 12) {
  int d = h.deg();
  require(d >= 2, ErrorCode::DomainError,
          "root approximation needs degree >= 2");
  require(h.leading() == Rat(1), ErrorCode::DomainError,
          "root approximation needs a monic polynomial");
  for (int i = 0; i <= d; ++i)
    require(ord_rat(h[i], p) >= 0 || h[i].is_zero(), ErrorCode::DomainError,
            "coefficients must be p-integral");
  if (UniPoly::gcd(h, h.derivative()).deg() > 0)
    fail(ErrorCode::ReducibleFactor, "repeated factor over Q_p");
  long ord_cap = depth_cap * d;
  if (auto w = find_hensel_root_witness(h, p, depth_cap)) {
    (void)w;
    fail(ErrorCode::ReducibleFactor,
         "certified root in Z_p; split the factor first");
  }
  LiveScan scan = live_scan(h, p, ord_cap);
  if (!scan.died_out)
    fail(ErrorCode::NeedMoreDepth,
         "valuation did not stabilize within the depth cap");
  long M = scan.depth;  // max_{x in Z_p} ord h(x)
  long r = (M + d - 1) / d;
  RootApproximation out;
  out.r = r;
  out.d = d;
  out.plateau_e = M;
  Int pr = int_pow(p, static_cast<unsigned long>(r));
  if (scan.alive.empty()) {
    // M = 0: plateau is all of Z_p.
    out.b = 0;
    return out;
  }
  Int b;
  mpz_fdiv_r(b.get_mpz_t(), scan.alive.front().get_mpz_t(), pr.get_mpz_t());
  out.b = b;
  // Certify the displays: the classes reaching the max valuation must be
  // exactly the plateau coset b + P^r.
  Int expect = int_pow(p, static_cast<unsigned long>(M - r));
  if (Int(static_cast<long>(scan.alive.size())) != expect)
    fail(ErrorCode::ReducibleFactor,
         "plateau is not a single full coset; factor splits over Q_p");
  for (const auto& c : scan.alive) {
    Int red;
    mpz_fdiv_r(red.get_mpz_t(), c.get_mpz_t(), pr.get_mpz_t());
    if (red != b)
      fail(ErrorCode::ReducibleFactor,
           "max-valuation classes spread over several cosets");
  }
  return out;
}

// ---- factor products: the integrand data |gamma|^s |delta| ----

struct LinearFactor {
  Rat a;     // root (the factor is x - a), must be p-integral
  long M;    // |x - a|^{M s + mu - 1}
  long mu;
};

struct IrreducibleFactor {
  UniPoly h;  // monic, irreducible, degree >= 2, no root in Z_p
  long M;     // |h|^{M s}
};

struct FactorProduct {
  std::vector<LinearFactor> linear;
  std::vector<IrreducibleFactor> irred;

  long total_M() const {
    long m = 0;
    for (const auto& f : linear) m += f.M;
    for (const auto& f : irred) m += static_cast<long>(f.h.deg()) * f.M;
    return m;
  }
  long total_mu() const {
    long mu = 1;
    for (const auto& f : linear) mu += f.mu - 1;
    return mu;
  }
};

// ---- cluster tree ----

struct ClusterBullet {
  Int center;  // representative in [0, p^r)
  long r = 0;
  std::vector<size_t> roots;   // indices into FactorProduct::linear
  std::vector<size_t> irreds;  // indices into FactorProduct::irred
  int parent = -1;
};

struct ClusterTree {
  std::vector<ClusterBullet> bullets;  // sorted by (depth, center)
  bool empty() const { return bullets.empty(); }
  size_t size() const { return bullets.size(); }
};

inline ClusterTree build_cluster_tree(const FactorProduct& fp, const Int& p,
                                      long depth_cap = 12) {
  for (const auto& f : fp.linear)
    require(ord_rat(f.a, p) >= 0 || f.a.is_zero(), ErrorCode::DomainError,
            "cluster roots must lie in Z_p");
  struct Coset {
    Int center;
    long r;
  };
  std::vector<Coset> cosets;
  auto reduce = [&](const Rat& a, long r) {
    return residue_mod_pk(a, p, r);
  };
  auto add_coset = [&](const Int& center, long r) {
    for (const auto& c : cosets)
      if (c.r == r && c.center == center) return;
    cosets.push_back({center, r});
  };
  // Bullets from pairwise congruences of the linear roots.
  for (size_t i = 0; i < fp.linear.size(); ++i)
    for (size_t j = i + 1; j < fp.linear.size(); ++j) {
      Rat diff = fp.linear[i].a - fp.linear[j].a;
      require(!diff.is_zero(), ErrorCode::DomainError,
              "linear roots must be distinct");
      long r = ord_rat(diff, p);
      add_coset(reduce(fp.linear[i].a, r), r);
    }
  // Bullets from the plateau cosets of the irreducible factors.
  std::vector<RootApproximation> approx(fp.irred.size());
  for (size_t j = 0; j < fp.irred.size(); ++j) {
    approx[j] = approximate_root(fp.irred[j].h, p, depth_cap);
    add_coset(approx[j].b, approx[j].r);
  }
  std::sort(cosets.begin(), cosets.end(), [](const Coset& a, const Coset& b) {
    if (a.r != b.r) return a.r < b.r;
    return a.center < b.center;
  });

  ClusterTree tree;
  for (const auto& c : cosets)
    tree.bullets.push_back(ClusterBullet{c.center, c.r, {}, {}, -1});
  auto contains = [&](const ClusterBullet& outer, const Int& center,
                      long r) {
    if (outer.r > r) return false;
    Int red;
    Int pr = int_pow(p, static_cast<unsigned long>(outer.r));
    mpz_fdiv_r(red.get_mpz_t(), center.get_mpz_t(), pr.get_mpz_t());
    return red == outer.center;
  };
  // Parent: the deepest strictly-containing bullet (sorted order makes the
  // last match the deepest).
  for (size_t i = 0; i < tree.bullets.size(); ++i)
    for (size_t j = 0; j < tree.bullets.size(); ++j) {
      if (i == j) continue;
      const auto& inner = tree.bullets[i];
      const auto& outer = tree.bullets[j];
      if (outer.r < inner.r && contains(outer, inner.center, inner.r)) {
        if (tree.bullets[i].parent < 0 ||
            tree.bullets[static_cast<size_t>(tree.bullets[i].parent)].r <
                outer.r)
          tree.bullets[i].parent = static_cast<int>(j);
      }
    }
  // Attach roots to the deepest containing bullet, factors to their coset.
  for (size_t k = 0; k < fp.linear.size(); ++k) {
    int best = -1;
    for (size_t i = 0; i < tree.bullets.size(); ++i) {
      const auto& bl = tree.bullets[i];
      if (residue_mod_pk(fp.linear[k].a, p, bl.r) == bl.center) {
        if (best < 0 || tree.bullets[static_cast<size_t>(best)].r < bl.r)
          best = static_cast<int>(i);
      }
    }
    if (best >= 0)
      tree.bullets[static_cast<size_t>(best)].roots.push_back(k);
  }
  for (size_t j = 0; j < fp.irred.size(); ++j) {
    for (size_t i = 0; i < tree.bullets.size(); ++i) {
      auto& bl = tree.bullets[i];
      if (bl.r == approx[j].r && bl.center == approx[j].b) {
        bl.irreds.push_back(j);
        break;
      }
    }
  }
  return tree;
}

struct LeafReduction {
  FactorProduct next;
  Int leaf_center;
  long leaf_r = 0;
  Rat a0;
  long M0 = 0;
  long mu0 = 1;
};

// Merge all factors attached to a deepest leaf bullet into (x - a0)^{M0}
// with multiplicity data mu0; the tree of the result is the previous tree
// minus that bullet.
inline LeafReduction reduce_leaf(const FactorProduct& fp, const Int& p,
                                 long depth_cap = 12) {
  ClusterTree tree = build_cluster_tree(fp, p, depth_cap);
  require(!tree.empty(), ErrorCode::EmptyTree,
          "no bullet to reduce: single cluster");
  // Leaves are bullets that are nobody's parent; pick deepest, then
  // smallest center.  (Sorted order: scan from the back.)
  std::vector<bool> has_child(tree.size(), false);
  for (const auto& b : tree.bullets)
    if (b.parent >= 0) has_child[static_cast<size_t>(b.parent)] = true;
  int pick = -1;
  for (size_t i = 0; i < tree.size(); ++i) {
    if (has_child[i]) continue;
    if (pick < 0) {
      pick = static_cast<int>(i);
      continue;
    }
    const auto& cur = tree.bullets[static_cast<size_t>(pick)];
    const auto& cand = tree.bullets[i];
    if (cand.r > cur.r || (cand.r == cur.r && cand.center < cur.center))
      pick = static_cast<int>(i);
  }
  const ClusterBullet& leaf = tree.bullets[static_cast<size_t>(pick)];

  LeafReduction out;
  out.leaf_center = leaf.center;
  out.leaf_r = leaf.r;
  out.a0 = Rat(leaf.center);
  for (size_t k : leaf.roots) {
    out.M0 += fp.linear[k].M;
    out.mu0 += fp.linear[k].mu - 1;
  }
  for (size_t j : leaf.irreds)
    out.M0 += static_cast<long>(fp.irred[j].h.deg()) * fp.irred[j].M;
  // Remaining factors plus the merged one.
  for (size_t k = 0; k < fp.linear.size(); ++k)
    if (std::find(leaf.roots.begin(), leaf.roots.end(), k) ==
        leaf.roots.end())
      out.next.linear.push_back(fp.linear[k]);
  for (size_t j = 0; j < fp.irred.size(); ++j)
    if (std::find(leaf.irreds.begin(), leaf.irreds.end(), j) ==
        leaf.irreds.end())
      out.next.irred.push_back(fp.irred[j]);
  out.next.linear.push_back(LinearFactor{out.a0, out.M0, out.mu0});
  return out;
}

}  // namespace igusa
