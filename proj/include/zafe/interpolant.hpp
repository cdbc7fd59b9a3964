#ifndef ZAFE_INTERPOLANT_HPP
#define ZAFE_INTERPOLANT_HPP

#include "zafe/quadrature.hpp"
#include "zafe/special.hpp"

namespace zafe {

/// Continuous interpolant of the discrete series coefficients: the
/// normalized [0,inf) integral of e^{-w} (1-e^{-w})^u w^{s-1}. Agrees with
/// coeff_discrete at integer u. Requires sigma + u > 0 (the integral's
/// convergence strip, which extends the stated sufficient condition
/// sigma > 1 - u and covers all interpolation checks).
Complex a_tilde(const Real& u, const SParam& s, const QuadratureSpec& quad);
Complex a_tilde(double u, const SParam& s, const QuadratureSpec& quad);

/// du-derivative of a_tilde: same integral with the extra factor
/// log((1-e^{-w})/2).
Complex a_tilde_du(const Real& u, const SParam& s, const QuadratureSpec& quad);
Complex a_tilde_du(double u, const SParam& s, const QuadratureSpec& quad);

/// The raw saddle-family integral: a_tilde without its normalizing
/// prefactor, i.e. the [0,inf) integral of e^{-w} (1-e^{-w})^u w^{s-1}.
Complex interpolation_integral(const Real& u, const SParam& s, const QuadratureSpec& quad);

enum class I1Contour { real_axis, deformed };

/// Tail integral of a_tilde over [x, inf), evaluated through its closed
/// inner form (the 1/log((1-e^{-w})/2) integrand). real_axis integrates
/// directly and is the verification oracle at moderate t; deformed returns
/// the analytic pole contributions (see residue_term), whose remainder is
/// the exponentially small saddle part.
Complex I1_numeric(const Real& x, const SParam& s, const QuadratureSpec& quad,
                   I1Contour contour = I1Contour::real_axis);

/// Sawtooth-weighted tail integral of the u-derivative over
/// [x, x + u_window]. The window truncation is accepted only when
/// |a_tilde_du(x + u_window, s)| <= tolerance.
Complex I2_numeric(const Real& x, const SParam& s, const QuadratureSpec& quad,
                   const Real& u_window);
Complex I2_numeric(const Real& x, const SParam& s, const QuadratureSpec& quad,
                   double u_window);

/// Contribution of the k-th integrand pole (2k-1)*pi*i to I1, normalized by
/// the same prefactor as a_tilde's tail integral.
Complex residue_term(long k, const SParam& s);

/// chi(s)/(1 - 2^{s-1}) * sum_{k=1}^{count} (2k-1)^{s-1}: the pole-side main
/// term of the tail integral; increments equal residue_term up to an
/// exponentially small cosine correction.
Complex chi_main_terms(const SParam& s, long count);

/// |zeta(s) - sum_{n<=x} A~(n,s) - I1 - I2 - A~(x,s)/2| with the reference
/// oracle on the left side; an identity, so the residual measures the
/// combined evaluator error. x must not be an integer.
Real em_identity_residual(const Real& x, const SParam& s, const QuadratureSpec& quad);
Real em_identity_residual(double x, const SParam& s, const QuadratureSpec& quad);

}  // namespace zafe

#endif
