#pragma once

// Independent validation of a computed zeta function by brute-force
// congruence counting.  N_m is the exact number of solutions of
// f ≡ 0 mod p^m; the normalized count c_m = N_m q^{-2m} is the measure of
// {ord f >= m}, and the shell decomposition of the integral gives
//
//   sum_{m>=0} c_m t^m = (1 - t Z(t)) / (1 - t),
//
// so the first coefficients of the right-hand side must reproduce the
// counts exactly.  Any mismatch exposes a bug in resolution or integration.

#include <vector>

#include "igusa/bipoly.hpp"
#include "igusa/errors.hpp"
#include "igusa/padic.hpp"
#include "igusa/rational.hpp"
#include "igusa/zeta_rational.hpp"

namespace igusa {

// Exact solution counts N_0..N_mmax of f ≡ 0 mod p^m and their normalized
// densities c_m = N_m q^{-2m} = vol{(x, y) in Z_p^2 : ord f(x, y) >= m}.
struct PoincareData {
  Int p;
  std::vector<Int> counts;     // counts[m] = N_m, with N_0 = 1
  std::vector<Rat> densities;  // densities[m] = c_m in [0, 1], nonincreasing
  long mmax() const { return static_cast<long>(counts.size()) - 1; }
};

inline PoincareData poincare_counts(const BiPoly& f, const Int& p, long mmax) {
  require(mmax >= 1, ErrorCode::DomainError, "mmax must be >= 1");
  PoincareData pd;
  pd.p = p;
  for (long m = 0; m <= mmax; ++m) {
    Int n = count_congruence_solutions(f, m, p);
    Rat c(n, int_pow(p, static_cast<unsigned long>(2 * m)));
    pd.counts.push_back(n);
    pd.densities.push_back(c);
  }
  require(pd.counts[0] == 1, ErrorCode::InternalInvariant, "N_0 must be 1");
  for (long m = 0; m <= mmax; ++m) {
    const Rat& c = pd.densities[static_cast<size_t>(m)];
    require(c.sign() >= 0 && c <= Rat(1), ErrorCode::InternalInvariant,
            "density outside [0, 1]");
    require(m == 0 || c <= pd.densities[static_cast<size_t>(m - 1)],
            ErrorCode::InternalInvariant,
            "densities must be nonincreasing (nested level sets)");
  }
  return pd;
}

// True iff the first mmax+1 coefficients of (1 - t Z)/(1 - t) equal the
// measured densities c_m exactly.  Z must be the zeta function of f over
// all of Z_p^2 (not a sub-box) at the same prime.  Division by 1 - t is
// realized as prefix summation of the series of 1 - t Z.
inline bool verify_poincare_identity(const ZetaRational& Z,
                                     const PoincareData& pd) {
  long mmax = pd.mmax();
  ZetaRational top = ZetaRational::scalar(pd.p, Rat(1)) -
                     ZetaRational::monomial(pd.p, Rat(1), 1) * Z;
  std::vector<Rat> a = top.series_coeffs(mmax);
  Rat run(0);
  for (long m = 0; m <= mmax; ++m) {
    run += a[static_cast<size_t>(m)];
    if (run != pd.densities[static_cast<size_t>(m)]) return false;
  }
  return true;
}

}  // namespace igusa
