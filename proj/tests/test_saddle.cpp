#include <doctest.h>

#include <cmath>
#include <random>

#include "zafe/interpolant.hpp"
#include "zafe/saddle.hpp"

using namespace zafe;

TEST_SUITE_BEGIN("saddle");

TEST_CASE("leading saddle for alpha = 1/pi") {
    SaddlePoint w2 = solve_saddle(1.0 / M_PI, 2, 1e-12, 128);
    CHECK(std::abs(w2.w.re().to_double() - 0.68154) < 1e-4);
    CHECK(std::abs(w2.w.im().to_double() - 9.31481) < 1e-4);
    CHECK(w2.residual.to_double() <= 1e-12);
    // polar data reproduces w
    Complex back(w2.r * cos(w2.theta), w2.r * sin(w2.theta));
    CHECK(abs(back - w2.w).to_double() < 1e-35 * w2.r.to_double());
}

TEST_CASE("degenerate alpha puts the root exactly on the imaginary axis") {
    for (long n : {1L, 2L, 3L}) {
        double alpha = 2.0 / ((2.0 * n - 1.0) * M_PI);
        SaddlePoint pt = solve_saddle(alpha, n, 1e-12, 128);
        CHECK(std::abs(pt.w.re().to_double()) < 1e-10);
        CHECK(std::abs(pt.w.im().to_double() - (2 * n - 1) * M_PI) < 1e-10);
    }
}

TEST_CASE("family ordering, residuals and band structure") {
    SaddleFamily fam = saddle_family(1.0 / M_PI, 6, 1e-12, 128);
    REQUIRE(fam.points.size() == 6);
    double prev_y = 0;
    for (const auto& pt : fam.points) {
        CHECK(pt.residual.to_double() <= 1e-12);
        double y = pt.w.im().to_double();
        CHECK(y > prev_y);
        prev_y = y;
    }
    // upper-band roots sit near odd multiples of pi
    for (size_t k = 3; k <= 6; ++k) {
        double y = fam.points[k - 1].w.im().to_double();
        CHECK(std::abs(y - (2.0 * k - 1.0) * M_PI) < 0.5);
    }
}

TEST_CASE("deep band structure matches the seed classification") {
    double alpha = 2.0 / (9.4 * M_PI);  // band N = 5
    CHECK(band_index(alpha) == 5);
    SaddleFamily fam = saddle_family(alpha, 6, 1e-12, 128);
    for (long k = 1; k <= 2; ++k) {
        double y = fam.points[k - 1].w.im().to_double();
        CHECK(std::abs(y - 2.0 * k * M_PI) < 0.5);
    }
    for (long k = 4; k <= 6; ++k) {
        double y = fam.points[k - 1].w.im().to_double();
        CHECK(std::abs(y - (2.0 * k - 1.0) * M_PI) < 0.5);
    }
}

TEST_CASE("conjugate equation has conjugate roots") {
    long p = 128;
    SaddlePoint pt = solve_saddle(0.4, 2, 1e-12, p);
    Complex wc = pt.w.conj();
    // e^w + alpha i w - 1 at the conjugate
    Complex residual = exp(wc) + mul_i(wc) * Real(0.4, p) - Real(1L, p);
    CHECK(abs(residual).to_double() <= 1e-12);
}

TEST_CASE("dominant-saddle selection") {
    {
        SaddleFamily fam = saddle_family(1.0, 2, 1e-12, 128);
        CHECK(select_k(1.0, fam, 1e-12) == 1);
    }
    {
        SaddleFamily fam = saddle_family(1.0 / M_PI, 2, 1e-12, 128);
        CHECK(select_k(1.0 / M_PI, fam, 1e-12) == 2);
        CHECK(!fam.tie_flag);
    }
    {
        // synthetic |x| tie resolves to N+1 with the flag set
        double alpha = 0.25;
        SaddleFamily fam = saddle_family(alpha, 2, 1e-12, 128);
        fam.points[0].w = Complex(0.5, fam.points[0].w.im().to_double(), 128);
        fam.points[1].w = Complex(-0.5, fam.points[1].w.im().to_double(), 128);
        CHECK(select_k(alpha, fam, 1e-9) == 2);
        CHECK(fam.tie_flag);
    }
}

TEST_CASE("select_k refuses band boundaries") {
    double alpha = 2.0 / (3.0 * M_PI);
    SaddleFamily fam;
    fam.alpha = alpha;
    CHECK_THROWS_AS(select_k(alpha, fam, 1e-12), BandError);
}

TEST_CASE("decay rate at alpha = 1/pi matches 0.017728") {
    Real om = omega(1.0 / M_PI, 1e-9, 128);
    CHECK(std::abs(om.to_double() - 0.017728) < 1e-5);
}

TEST_CASE("decay rate vanishes toward degenerate alpha") {
    double boundary = 2.0 / (3.0 * M_PI);
    double prev = 1e9;
    for (double d : {3e-2, 1e-2, 3e-3, 1e-3}) {
        double om = omega(boundary + d, 1e-9, 128).to_double();
        CHECK(om > 0);
        CHECK(om < prev);
        prev = om;
    }
    CHECK(prev < 5e-3);
    CHECK_THROWS_AS(omega(boundary, 1e-9, 128), DegenerateError);
}

TEST_CASE("decay rate is continuous away from boundaries") {
    for (double alpha : {0.5, 1.0 / M_PI, 0.17}) {
        double a = omega(alpha, 1e-9, 128).to_double();
        double b = omega(alpha + 1e-6, 1e-9, 128).to_double();
        CHECK(std::abs(a - b) <= 1e-3);
    }
}

TEST_CASE("decay rate positive across a 200-point alpha grid") {
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        double alpha = 0.08 + (2.0 - 0.08) * i / 199.0;
        if (near_degenerate_alpha(alpha, 1e-3)) continue;
        CHECK(omega(alpha, 1e-9, 96).to_double() > 0);
        ++checked;
    }
    CHECK(checked > 150);
}

TEST_CASE("second derivative of the phase agrees with finite differences") {
    long p = 256;
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ux(-1.5, 1.5), uy(2.0, 20.0), ua(0.2, 2.0);
    for (int i = 0; i < 10; ++i) {
        Complex w(ux(rng), uy(rng), p);
        double alpha = ua(rng);
        Real h = pow2(-40, p);
        Complex fd = (saddle_phase_d1(w + Complex(h, Real(0L, p)), alpha) -
                      saddle_phase_d1(w - Complex(h, Real(0L, p)), alpha)) /
                     h.mul_2si(1);
        Complex an = saddle_phase_d2(w, alpha);
        CHECK(abs(fd - an).to_double() < 1e-20 * (1.0 + abs(an).to_double()));
    }
}

TEST_CASE("asymptotic magnitude tracks the direct integral") {
    long p = 128;
    QuadratureSpec quad;
    quad.tolerance = 1e-10;
    double alpha = 1.0 / M_PI, sigma = 0.05;
    double prev_ratio_gap = 1e9;
    double prev_ratio = 0;
    bool first = true;
    for (double t : {40.0, 80.0, 120.0}) {
        SParam s(sigma, t, p);
        Real u(alpha * t, p);
        Real direct = abs(interpolation_integral(u, s, quad));
        Real asymp = asymptotic_I_magnitude(sigma, t, alpha, p);
        double ratio = (direct / asymp).to_double();
        CHECK(ratio > 0.5);
        CHECK(ratio < 2.0);
        if (!first) {
            double gap = std::abs(ratio - 1.0);
            CHECK(gap <= prev_ratio_gap + 0.05);
            prev_ratio_gap = gap;
        } else {
            prev_ratio_gap = std::abs(ratio - 1.0);
        }
        prev_ratio = ratio;
        first = false;
    }
    (void)prev_ratio;
}

TEST_CASE("asymptotic magnitude slope recovers the decay rate") {
    long p = 128;
    double alpha = 1.0 / M_PI, sigma = 0.05;
    double om = omega(alpha, 1e-9, p).to_double();
    // slope of ln(asym * sqrt(t)) in t is alpha ln2 - pi/2 - omega + O(1/t)
    double t1 = 200, t2 = 600;
    double l1 = log(asymptotic_I_magnitude(sigma, t1, alpha, p)).to_double() +
                0.5 * std::log(t1);
    double l2 = log(asymptotic_I_magnitude(sigma, t2, alpha, p)).to_double() +
                0.5 * std::log(t2);
    double slope = (l2 - l1) / (t2 - t1);
    double om_recovered = -(slope - (alpha * M_LN2 - M_PI / 2));
    CHECK(std::abs(om_recovered - om) <= 0.10 * om);
}

TEST_SUITE_END();
