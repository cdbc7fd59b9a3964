#ifndef ZAFE_HASSE_SONDOW_HPP
#define ZAFE_HASSE_SONDOW_HPP

#include <vector>

#include "zafe/special.hpp"

namespace zafe {

/// Discrete coefficients of the globally convergent alternating-binomial
/// series for zeta, together with their running partial sums.
struct CoeffSeries {
    SParam s;
    std::vector<Complex> coefficients;  // index n = 0..n_max
    std::vector<Complex> partial_sums;  // same length, prefix sums
};

/// The denominator 1 - 2^{1-s} at working precision wp. Throws
/// DegenerateError when |1 - 2^{1-s}| < 2^{-precision/2}.
Complex eta_denominator(const SParam& s, long wp);

/// n-th series coefficient: the alternating binomial sum over (k+1)^{-s},
/// scaled by 1/(2^{n+1}(1 - 2^{1-s})).
///
/// Binomials are exact GMP integers maintained by the multiplicative
/// recurrence C(n,k+1) = C(n,k)(n-k)/(k+1); the alternating cancellation is
/// absorbed by n + 64 guard bits of working precision.
Complex coeff_discrete(unsigned n, const SParam& s);

/// Sum of coeff_discrete(n, s) for n = 0..floor(x).
Complex partial_sum(const Real& x, const SParam& s);
Complex partial_sum(double x, const SParam& s);

CoeffSeries make_coeff_series(const SParam& s, unsigned n_max);

/// Two-sum classical baseline: sum_{n<=x} n^{-s} + chi(s) sum_{k<=y} k^{s-1}.
/// y < 1 leaves the chi sum empty.
Complex classical_main_terms(const SParam& s, const Real& x, const Real& y);
Complex classical_main_terms(const SParam& s, double x, double y);

/// sum_{k=1}^{count} k^{-z} at precision of z.
Complex dirichlet_partial(const Complex& z, long count);

}  // namespace zafe

#endif
