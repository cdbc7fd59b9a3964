#ifndef ZAFE_SPECIAL_HPP
#define ZAFE_SPECIAL_HPP

#include "zafe/complex.hpp"
#include "zafe/real.hpp"

namespace zafe {

/// A point s = sigma + it together with the precision everything downstream
/// of it should carry.
struct SParam {
    Real sigma;
    Real t;
    long precision;

    SParam(double sigma_, double t_, long prec = kDefaultPrecision)
        : sigma(sigma_, clamp_precision(prec)),
          t(t_, clamp_precision(prec)),
          precision(clamp_precision(prec)) {}

    SParam(Real sigma_, Real t_)
        : sigma(std::move(sigma_)), t(std::move(t_)) {
        precision = std::min(sigma.precision(), this->t.precision());
    }

    /// s as a Complex, extended exactly to the working precision wp.
    Complex value(long wp) const { return {sigma.rounded(wp), t.rounded(wp)}; }
    Complex value() const { return value(precision); }

    SParam conjugated() const { return {sigma, -t}; }

    bool is_pole_of_zeta() const { return t.is_zero() && sigma.cmp(1.0) == 0; }
};

/// Principal-branch complex log-gamma via Stirling with exact Bernoulli
/// coefficients; argument shifting below the Stirling radius and reflection
/// for Re(z) < 1/2. exp(log_gamma(z)) == Gamma(z) to within a few ulps at
/// the argument's precision.
Complex log_gamma(const Complex& z);

/// log(sin z) and log(cos z), stable for large |Im z|. Imaginary parts are
/// reduced mod 2*pi*i for |Im z| > 1; exponentials of the results are exact.
Complex log_sin(const Complex& z);
Complex log_cos(const Complex& z);

/// The functional-equation factor chi(s) with zeta(s) = chi(s) zeta(1-s).
/// Always evaluated through logarithms and exponentiated once.
Complex chi(const SParam& s);

/// log chi(s); building block for chi and for magnitude-only consumers.
Complex chi_log(const SParam& s);

/// Independent reference oracle for zeta(s): alternating-series-free
/// Euler-Maclaurin with Bernoulli corrections through B_20, doubling the
/// cutoff until two successive evaluations agree within target_error.
Complex zeta_reference(const SParam& s, const Real& target_error);
Complex zeta_reference(const SParam& s, double target_error);

}  // namespace zafe

#endif
