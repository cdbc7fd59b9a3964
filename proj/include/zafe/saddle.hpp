#ifndef ZAFE_SADDLE_HPP
#define ZAFE_SADDLE_HPP

#include <vector>

#include "zafe/complex.hpp"
#include "zafe/real.hpp"

namespace zafe {

/// One root w = x + yi of e^w - alpha*i*w - 1 = 0 with y > 0, in Cartesian
/// and polar form, plus the verified equation residual.
struct SaddlePoint {
    long index_k = 0;
    Complex w;
    Real r;
    Real theta;
    Real residual;

    SaddlePoint() : w(kDefaultPrecision), r(kDefaultPrecision),
                    theta(kDefaultPrecision), residual(kDefaultPrecision) {}
};

struct SaddleFamily {
    double alpha = 0.0;
    std::vector<SaddlePoint> points;  // k = 1..k_max, ascending Im(w)
    long selected_k = 0;
    Real omega;
    bool tie_flag = false;

    SaddleFamily() : omega(kDefaultPrecision) {}
};

/// Band index N with alpha in (2/((2N+1)pi), 2/((2N-1)pi)); 0 when
/// alpha > 2/pi. Exact odd boundaries are assigned to the upper band.
/// Also the number of integrand poles (2k-1)*pi*i the tail-integral contour
/// crosses, hence the chi-sum term count.
long band_index(double alpha);

/// True when alpha lies within `tol` of a degenerate value 2/((2N-1)pi),
/// where the dominant saddle collides with a pole and the decay rate
/// vanishes.
bool near_degenerate_alpha(double alpha, double tol);

/// Solve for the k-th saddle (k >= 1): damped Newton from the band seed,
/// step clamped to pi/2, with a bisection fallback along the
/// H1(x,y) = e^x cos y + alpha y - 1 = 0 curve. The returned residual is
/// |e^w - alpha i w - 1| <= tol and Im(w) stays within pi of the seed.
SaddlePoint solve_saddle(double alpha, long k, double tol, long prec = kDefaultPrecision);

SaddleFamily saddle_family(double alpha, long k_max, double tol, long prec = kDefaultPrecision);

/// Dominant-saddle index: min |Re w| among {N, N+1} in the alpha band, 1
/// for alpha > 2/pi. Ties (within tol) select N+1 and set family.tie_flag.
long select_k(double alpha, SaddleFamily& family, double tol);

/// Exponential decay rate: -alpha log|(1 - e^{-w_k})/2| + theta_k - pi/2
/// at the dominant saddle. Positive away from degenerate alpha.
Real omega(double alpha, double tol, long prec = kDefaultPrecision);

/// Leading-order magnitude of the raw interpolant integral at u = alpha*t:
/// sqrt(2 pi / (t |f''|)) |e^{-w} (1-e^{-w})^{alpha t} w^{sigma+it-1}| at the
/// dominant saddle, with f'' = -alpha e^{-w}/(1-e^{-w})^2 - i/w^2.
Real asymptotic_I_magnitude(double sigma, double t, double alpha, long prec = kDefaultPrecision);

/// f'(w) = alpha e^{-w}/(1-e^{-w}) + i/w and its derivative; exposed for
/// finite-difference validation.
Complex saddle_phase_d1(const Complex& w, double alpha);
Complex saddle_phase_d2(const Complex& w, double alpha);

}  // namespace zafe

#endif
