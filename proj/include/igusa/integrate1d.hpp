#pragma once

// Exact one-variable p-adic integrals of |gamma(x)|^s |delta(x)| over
// cosets of Z_p, where gamma and delta are described by a FactorProduct:
// the integrand is  prod_i |x - a_i|^{M_i s + mu_i - 1} prod_j |h_j|^{M_j s}.
//
// The integral is computed as an exact rational function of t = q^{-s} by
// coset subdivision: factors with constant absolute value on the current
// coset contribute scalars; an isolated linear factor contributes the
// closed-form shell sum; anything else recurses into the p children.
//
// merge_bound_check decides the strict inequality between the integral of
// a clustered product and the integral of its merged single-root model at
// a real evaluation point s0, after verifying the hypotheses that make the
// comparison meaningful.

#include <string>
#include <vector>

#include "igusa/algebraic_real.hpp"
#include "igusa/cluster.hpp"
#include "igusa/errors.hpp"
#include "igusa/padic.hpp"
#include "igusa/rational.hpp"
#include "igusa/zeta_rational.hpp"

namespace igusa {

// Integral of |x - a|^{M s + mu - 1} over a + P^r:
//   (q-1)/q * (q^{-mu} t^M)^r / (1 - q^{-mu} t^M).
inline ZetaRational linear_coset_integral(const Int& q, long M, long mu,
                                          long r) {
  require(M >= 1 && mu >= 1, ErrorCode::DomainError,
          "shell integral needs M >= 1 and mu >= 1");
  return ZetaRational::shell(q, M, mu - 1, r);
}

namespace detail_int1 {

struct CosetView {
  Rat center;
  long depth;
};

inline ZetaRational integrate_rec(const FactorProduct& fp, const Int& p,
                                  const CosetView& dom, long depth_cap) {
  require(dom.depth <= depth_cap, ErrorCode::NeedMoreDepth,
          "coset subdivision exceeded the depth cap");
  // Classify every factor on this coset.
  Rat scalar_q(1);   // product of constant parts independent of t
  long tpow = 0;     // accumulated power of t from constant factors
  std::vector<size_t> active_lin, active_irr;
  for (size_t i = 0; i < fp.linear.size(); ++i) {
    const auto& f = fp.linear[i];
    long v = ord_rat(dom.center - f.a, p);
    if (v < dom.depth) {
      // |x - a| = q^{-v} constant on the coset.
      require(v >= 0, ErrorCode::DomainError,
              "linear centers must be p-integral");
      scalar_q *= Rat(int_pow(p, static_cast<unsigned long>(v)), Int(1))
                      .pow(-(f.mu - 1));
      tpow += v * f.M;
    } else {
      active_lin.push_back(i);
    }
  }
  for (size_t j = 0; j < fp.irred.size(); ++j) {
    const auto& f = fp.irred[j];
    long v = poly_ord_at(f.h, dom.center, p);
    if (v < dom.depth) {
      // h(x) = h(center) mod P^depth, so ord is constant on the coset.
      require(v >= 0, ErrorCode::InternalInvariant,
              "irreducible factors must have p-integral values");
      tpow += v * f.M;
    } else {
      active_irr.push_back(j);
    }
  }
  ZetaRational consts =
      ZetaRational::monomial(p, scalar_q, static_cast<int>(tpow));
  if (active_lin.empty() && active_irr.empty()) {
    Rat measure(Int(1), int_pow(p, static_cast<unsigned long>(dom.depth)));
    return ZetaRational::scalar(p, measure) * consts;
  }
  if (active_lin.size() == 1 && active_irr.empty()) {
    const auto& f = fp.linear[active_lin[0]];
    return linear_coset_integral(p, f.M, f.mu, dom.depth) * consts;
  }
  // Subdivide into the p children.
  ZetaRational sum = ZetaRational::zero(p);
  Int step = int_pow(p, static_cast<unsigned long>(dom.depth));
  for (long i = 0; i < static_cast<long>(p.get_si()); ++i) {
    CosetView child{dom.center + Rat(Int(Int(i) * step)), dom.depth + 1};
    sum += integrate_rec(fp, p, child, depth_cap);
  }
  return sum;
}

}  // namespace detail_int1

// Exact integral of the factor-product integrand over the coset
// center + P^depth.  Requirements: linear centers in Z_p (drop unit-value
// factors before calling), irreducible factors monic with p-integral
// coefficients and no root in Z_p.
inline ZetaRational one_var_integral(const FactorProduct& fp,
                                     const Coset1& domain, const Int& p,
                                     long depth_cap = 64) {
  for (const auto& f : fp.linear) {
    require(f.M >= 1 && f.mu >= 1, ErrorCode::DomainError,
            "linear exponents need M >= 1, mu >= 1");
    require(f.a.is_zero() || ord_rat(f.a, p) >= 0, ErrorCode::DomainError,
            "linear centers must be p-integral");
  }
  for (const auto& f : fp.irred)
    require(f.M >= 1 && f.h.deg() >= 2, ErrorCode::DomainError,
            "irreducible factors need degree >= 2 and M >= 1");
  detail_int1::CosetView dom{domain.center, domain.depth};
  return detail_int1::integrate_rec(fp, p, dom, depth_cap);
}

inline ZetaRational one_var_integral(const FactorProduct& fp, const Int& p,
                                     long depth_cap = 64) {
  return one_var_integral(fp, Coset1{Rat(0), 0}, p, depth_cap);
}

enum class MergeBound { HoldsStrictly, Violated };

// Compare, at the real point s0, the integral of the clustered product with
// the integral of its merged model |x - a0|^{M s + mu - 1} over Z_p, where
// M and mu aggregate the whole product.  Hypotheses checked (violations
// raise HypothesisViolated naming the failed one):
//   - alpha = mu + s0 M > 0,
//   - alpha_i = mu_i + s0 M_i < 1 for every linear factor,
//   - at least two linear factors, or at least one irreducible factor.
inline MergeBound merge_bound_check(const FactorProduct& fp, const Rat& a0,
                                    const Rat& s0, const Int& p,
                                    long depth_cap = 64) {
  (void)a0;  // the merged model integral over Z_p is translation invariant
  long M = fp.total_M();
  long mu = fp.total_mu();
  Rat alpha = Rat(mu) + s0 * Rat(M);
  if (!(alpha > Rat(0)))
    fail(ErrorCode::HypothesisViolated, "need alpha = mu + s0 M > 0, got " +
                                            alpha.str());
  for (const auto& f : fp.linear) {
    Rat ai = Rat(f.mu) + s0 * Rat(f.M);
    if (!(ai < Rat(1)))
      fail(ErrorCode::HypothesisViolated,
           "need alpha_i = mu_i + s0 M_i < 1 for every linear factor, got " +
               ai.str());
  }
  if (fp.linear.size() < 2 && fp.irred.empty())
    fail(ErrorCode::HypothesisViolated,
         "need at least two linear factors or one irreducible factor");
  ZetaRational lhs = one_var_integral(fp, p, depth_cap);
  ZetaRational rhs = linear_coset_integral(p, M, mu, 0);
  AlgebraicReal lv = lhs.evaluate_mc(s0);
  AlgebraicReal rv = rhs.evaluate_mc(s0);
  return lv < rv ? MergeBound::HoldsStrictly : MergeBound::Violated;
}

}  // namespace igusa
