#ifndef ZAFE_QUADRATURE_HPP
#define ZAFE_QUADRATURE_HPP

#include <vector>

#include "zafe/real.hpp"

namespace zafe {

enum class QuadScheme { tanh_sinh, adaptive_composite };

/// Controls for the semi-infinite integrals. truncation_T <= 0 lets the
/// evaluator place the cutoff from the integrand envelope so the discarded
/// tail stays below tolerance/10. `nodes` caps the total node count across
/// refinement levels; refinement stops with an error once doubling the node
/// count can no longer be afforded.
struct QuadratureSpec {
    double truncation_T = 0.0;
    long nodes = 1L << 21;
    double tolerance = 1e-12;
    QuadScheme scheme = QuadScheme::tanh_sinh;
    bool scheme_forced = false;
};

/// psi(u) = u - floor(u) - 1/2, the periodized first Bernoulli polynomial.
struct SawtoothPsi {
    static Real eval(const Real& u) { return u - floor(u) - Real(0.5, u.precision()); }
};

inline Real psi_sawtooth(const Real& u) { return SawtoothPsi::eval(u); }

/// Gauss-Legendre rule on (0,1), nodes ascending. Cached per (order, prec).
struct GaussLegendreRule {
    std::vector<Real> x;
    std::vector<Real> w;
};
const GaussLegendreRule& gauss_legendre(int order, long prec);

/// One tanh-sinh abscissa/weight pair at tau >= 0 for the unit interval:
/// d = distance of the node pair from either endpoint, weight the mapped
/// trapezoid factor (step h not included).
struct TanhSinhPoint {
    Real d;
    Real weight;
};
TanhSinhPoint tanh_sinh_point(const Real& tau, long prec);

}  // namespace zafe

#endif
