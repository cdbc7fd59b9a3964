#include "zafe/saddle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace zafe {

namespace {

// e^w - alpha i w - 1
Complex equation_value(const Complex& w, const Real& alpha) {
    long wp = w.precision();
    return exp(w) - mul_i(w) * alpha - Real(1L, wp);
}

Complex equation_deriv(const Complex& w, const Real& alpha) {
    long wp = w.precision();
    Complex ai(Real(0L, wp), alpha);
    return exp(w) - ai;
}

double seed_y(double alpha, long k) {
    long N = band_index(alpha);
    if (N == 0) return (2.0 * static_cast<double>(k) - 1.0) * M_PI;
    long M = N / 2;
    if (N % 2 == 0) {
        if (k <= M - 1) return 2.0 * static_cast<double>(k) * M_PI;
        if (k == M) return (2.0 * static_cast<double>(M) - 0.25) * M_PI;
        if (k == M + 1) return (2.0 * static_cast<double>(M) + 1.25) * M_PI;
        return (2.0 * static_cast<double>(k) - 1.0) * M_PI;
    }
    if (k <= M) return 2.0 * static_cast<double>(k) * M_PI;
    if (k == M + 1) return (2.0 * static_cast<double>(M) + 1.5) * M_PI;
    return (2.0 * static_cast<double>(k) - 1.0) * M_PI;
}

// x with H1(x, y) = 0, i.e. e^x = (1 - alpha y)/cos y, when that is positive.
bool h1_x_of_y(double alpha, double y, double& x_out) {
    double c = std::cos(y);
    double num = 1.0 - alpha * y;
    if (std::abs(c) < 1e-300) return false;
    double ratio = num / c;
    if (ratio <= 0.0) return false;
    x_out = std::log(ratio);
    return std::abs(x_out) < 700.0;
}

double h2_along_h1(double alpha, double y, bool& ok) {
    double x;
    if (!h1_x_of_y(alpha, y, x)) {
        ok = false;
        return 0.0;
    }
    ok = true;
    return std::exp(x) * std::sin(y) - alpha * x;
}

// Newton at working precision from a (x0, y0) start. Returns true when the
// residual reaches full working accuracy.
bool newton_polish(Complex& w, const Real& alpha, long wp) {
    Real clamp_step = const_pi(wp).mul_2si(-1);
    Real tiny = pow2(-wp + 2 * kGuardBits, wp);
    Real res = abs(equation_value(w, alpha));
    for (int it = 0; it < 160; ++it) {
        if (res < tiny) return true;
        Complex f = equation_value(w, alpha);
        Complex df = equation_deriv(w, alpha);
        if (abs(df).is_zero()) return false;
        Complex delta = f / df;
        Real dn = abs(delta);
        if (dn > clamp_step) delta = delta * (clamp_step / dn);
        bool improved = false;
        for (int halve = 0; halve < 10; ++halve) {
            Complex trial = w - delta;
            Real tres = abs(equation_value(trial, alpha));
            if (tres < res) {
                w = trial;
                res = tres;
                improved = true;
                break;
            }
            delta = delta.mul_2si(-1);
        }
        if (!improved) return res < pow2(-wp / 2, wp);
    }
    return res < tiny;
}

}  // namespace

long band_index(double alpha) {
    if (alpha <= 0) throw DomainError("alpha must be positive");
    double m = 2.0 / (alpha * M_PI);
    if (m < 1.0) return 0;
    return static_cast<long>(std::floor((m + 1.0) / 2.0));
}

bool near_degenerate_alpha(double alpha, double tol) {
    if (alpha <= 0) throw DomainError("alpha must be positive");
    double m = 2.0 / (alpha * M_PI);
    long m0 = 2 * static_cast<long>(std::llround((m + 1.0) / 2.0)) - 1;
    if (m0 < 1) m0 = 1;
    for (long mm : {m0 - 2, m0, m0 + 2}) {
        if (mm < 1) continue;
        if (std::abs(alpha - 2.0 / (static_cast<double>(mm) * M_PI)) < tol) return true;
    }
    return false;
}

Complex saddle_phase_d1(const Complex& w, double alpha) {
    long wp = w.precision();
    Real a(alpha, wp);
    Complex em = exp(-w);
    Complex one(Real(1L, wp), Real(0L, wp));
    Complex i_unit(Real(0L, wp), Real(1L, wp));
    return (em * a) / (one - em) + i_unit / w;
}

Complex saddle_phase_d2(const Complex& w, double alpha) {
    long wp = w.precision();
    Real a(alpha, wp);
    Complex em = exp(-w);
    Complex one(Real(1L, wp), Real(0L, wp));
    Complex omem = one - em;
    Complex i_unit(Real(0L, wp), Real(1L, wp));
    return -((em * a) / (omem * omem)) - i_unit / (w * w);
}

SaddlePoint solve_saddle(double alpha, long k, double tol, long prec) {
    if (alpha <= 0) throw DomainError("alpha must be positive");
    if (k < 1) throw DomainError("saddle index k must be >= 1");
    if (tol <= 0) throw DomainError("tolerance must be positive");
    long wp = clamp_precision(prec) + 2 * kGuardBits;

    double y0 = seed_y(alpha, k);
    double x0 = 0.0;
    if (!h1_x_of_y(alpha, y0, x0)) {
        // perturb the seed off a cos zero
        for (double dy : {0.2, -0.2, 0.45, -0.45}) {
            if (h1_x_of_y(alpha, y0 + dy, x0)) break;
            x0 = 0.0;
        }
    }
    x0 = std::clamp(x0, -40.0, 40.0);

    Real a(alpha, wp);
    Complex w(Real(x0, wp), Real(y0, wp));
    bool ok = newton_polish(w, a, wp);
    double yres = w.im().to_double();
    bool in_band = std::abs(yres - y0) < M_PI;

    if (!ok || !in_band) {
        // Bisection along the H1 curve inside the seed band, then re-polish.
        double lo = std::max(1e-6, y0 - M_PI + 1e-9), hi = y0 + M_PI - 1e-9;
        const int n_scan = 800;
        double prev_y = 0, prev_g = 0;
        bool prev_ok = false, found = false;
        for (int i = 0; i <= n_scan && !found; ++i) {
            double y = lo + (hi - lo) * static_cast<double>(i) / n_scan;
            bool gok;
            double gv = h2_along_h1(alpha, y, gok);
            if (gok && prev_ok && ((gv < 0) != (prev_g < 0))) {
                double ya = prev_y, yb = y;
                for (int b = 0; b < 200; ++b) {
                    double ym = (ya + yb) / 2;
                    bool mok;
                    double gm = h2_along_h1(alpha, ym, mok);
                    if (!mok) break;
                    if ((gm < 0) == (prev_g < 0))
                        ya = ym;
                    else
                        yb = ym;
                }
                double ym = (ya + yb) / 2, xm = 0.0;
                if (h1_x_of_y(alpha, ym, xm)) {
                    w = Complex(Real(xm, wp), Real(ym, wp));
                    ok = newton_polish(w, a, wp);
                    found = ok;
                }
            }
            prev_y = y;
            prev_g = gv;
            prev_ok = gok;
        }
        if (!found)
            throw ConvergenceError("saddle solve failed for k = " + std::to_string(k));
        yres = w.im().to_double();
        if (std::abs(yres - y0) >= M_PI)
            throw BandError("saddle root left its seed band (k = " + std::to_string(k) + ")");
    }

    SaddlePoint pt;
    pt.index_k = k;
    pt.w = w.rounded(clamp_precision(prec));
    pt.r = abs(w).rounded(clamp_precision(prec));
    pt.theta = arg(w).rounded(clamp_precision(prec));
    pt.residual = abs(equation_value(w, a)).rounded(clamp_precision(prec));
    if (pt.residual.cmp(tol) > 0)
        throw ConvergenceError("saddle residual above tolerance for k = " + std::to_string(k));
    return pt;
}

SaddleFamily saddle_family(double alpha, long k_max, double tol, long prec) {
    if (k_max < 1) throw DomainError("k_max must be >= 1");
    SaddleFamily fam;
    fam.alpha = alpha;
    fam.omega = Real(0L, clamp_precision(prec));
    fam.points.reserve(k_max);
    for (long k = 1; k <= k_max; ++k) fam.points.push_back(solve_saddle(alpha, k, tol, prec));

    double prev_y = 0.0;
    double x_head = 0.0;
    for (size_t i = 0; i < fam.points.size(); ++i) {
        double y = fam.points[i].w.im().to_double();
        double x = fam.points[i].w.re().to_double();
        if (y <= prev_y)
            throw ConvergenceError("saddle family not strictly ordered in Im(w)");
        prev_y = y;
        if (i < 2) x_head = std::max(x_head, x);
        // O(log k) growth envelope
        if (x > x_head + 2.0 * std::log(static_cast<double>(i + 2)) + 3.0)
            throw ConvergenceError("saddle family violates the log-growth envelope");
    }
    return fam;
}

long select_k(double alpha, SaddleFamily& family, double tol) {
    long N = band_index(alpha);
    if (near_degenerate_alpha(alpha, 1e-9))
        throw BandError("alpha within 1e-9 of a band boundary 2/((2N-1)pi)");
    if (N == 0) {
        if (family.points.empty()) throw BandError("family must cover k = 1");
        family.selected_k = 1;
        return 1;
    }
    if (static_cast<long>(family.points.size()) < N + 1)
        throw BandError("family must cover k = N+1 for this alpha band");
    double xn = std::abs(family.points[N - 1].w.re().to_double());
    double xn1 = std::abs(family.points[N].w.re().to_double());
    if (std::abs(xn - xn1) <= tol) {
        family.tie_flag = true;
        family.selected_k = N + 1;
    } else {
        family.selected_k = (xn < xn1) ? N : N + 1;
    }
    return family.selected_k;
}

Real omega(double alpha, double tol, long prec) {
    long p = clamp_precision(prec);
    if (alpha <= 0) throw DomainError("alpha must be positive");
    if (near_degenerate_alpha(alpha, std::max(tol, 1e-9)))
        throw DegenerateError("omega vanishes at alpha = 2/((2N-1)pi)");
    long wp = p + 2 * kGuardBits;
    long N = band_index(alpha);
    long k_max = std::max<long>(N + 1, 1);
    SaddleFamily fam = saddle_family(alpha, k_max, std::min(tol, 1e-10), wp);
    long k = select_k(alpha, fam, std::min(tol, 1e-10));

    const Complex w = fam.points[k - 1].w.rounded(wp);
    Real a(alpha, wp);
    Complex em = exp(-w);
    Complex omem = Real(1L, wp) - em;
    Real om = -(a * log(abs(omem).mul_2si(-1))) + arg(w) - const_pi(wp).mul_2si(-1);
    if (om.sign() <= 0)
        throw ConvergenceError("omega came out non-positive; saddle selection suspect");
    return om.rounded(p);
}

Real asymptotic_I_magnitude(double sigma, double t, double alpha, long prec) {
    long p = clamp_precision(prec);
    if (t <= 0) throw DomainError("asymptotic magnitude needs t > 0");
    long wp = p + 2 * kGuardBits;
    long N = band_index(alpha);
    SaddleFamily fam = saddle_family(alpha, std::max<long>(N + 1, 1), 1e-12, wp);
    long k = select_k(alpha, fam, 1e-12);
    const Complex w = fam.points[k - 1].w.rounded(wp);

    Real tr(t, wp), ar(alpha, wp), sr(sigma, wp);
    Complex f2 = saddle_phase_d2(w, alpha);
    Complex em = exp(-w);
    Complex omem = Real(1L, wp) - em;

    Real ln_mag = (log(const_pi(wp).mul_2si(1)) - log(tr) - log(abs(f2))).mul_2si(-1);
    ln_mag -= w.re();
    ln_mag += ar * tr * log(abs(omem));
    ln_mag += (sr - Real(1L, wp)) * log(abs(w));
    ln_mag -= tr * arg(w);
    return exp(ln_mag).rounded(p);
}

}  // namespace zafe
