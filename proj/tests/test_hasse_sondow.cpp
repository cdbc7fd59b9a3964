#include <doctest.h>

#include <cmath>

#include "zafe/hasse_sondow.hpp"

using namespace zafe;

TEST_SUITE_BEGIN("hasse_sondow");

TEST_CASE("coefficient closed forms") {
    long p = 128;
    // n = 0: single term, 1/(2 (1 - 2^{1-s}))
    for (double sigma : {0.3, 2.0}) {
        SParam s(sigma, 7.0, p);
        Complex lhs = coeff_discrete(0, s);
        long wp = p + kGuardBits;
        Complex denom = eta_denominator(SParam(sigma, 7.0, wp), wp).mul_2si(1);
        Complex rhs = Complex(Real(1L, wp), Real(0L, wp)) / denom;
        CHECK(abs(lhs - rhs.rounded(p)).to_double() < 1e-36);
    }

    // n = 1, s = 2: (1/(4 (1 - 1/2))) (1 - 1/4) = 3/8
    SParam s2(2.0, 0.0, p);
    Complex c1 = coeff_discrete(1, s2);
    CHECK(abs(c1 - Complex(0.375, 0.0, p)).to_double() < 1e-36);
    CHECK(std::abs(c1.im().to_double()) < 1e-36);
}

TEST_CASE("series sums to zeta(2)") {
    long p = 128;
    SParam s(2.0, 0.0, p);
    CoeffSeries series = make_coeff_series(s, 80);
    Real pi2_6 = const_pi(p) * const_pi(p) / Real(6L, p);
    Complex target(pi2_6, Real(0L, p));
    CHECK(abs(series.partial_sums.back() - target).to_double() < 1e-20);
}

TEST_CASE("partial_sum floor semantics") {
    long p = 128;
    SParam s(1.3, 4.0, p);
    Complex c0 = coeff_discrete(0, s);
    CHECK(abs(partial_sum(0.0, s) - c0).to_double() < 1e-36);
    CHECK(abs(partial_sum(0.99, s) - c0).to_double() < 1e-36);
    CHECK(abs(partial_sum(1.0, s) - (c0 + coeff_discrete(1, s))).to_double() < 1e-35);
}

TEST_CASE("partial_sum matches a doubled-precision recomputation") {
    SParam s128(3.0, 0.0, 128);
    SParam s256(3.0, 0.0, 256);
    Complex a = partial_sum(50.0, s128);
    Complex b = partial_sum(50.0, s256);
    CHECK(abs(a - b.rounded(128)).to_double() < 1e-30);
}

TEST_CASE("prefix-sum consistency of the series struct") {
    long p = 128;
    SParam s(0.5, 9.0, p);
    CoeffSeries series = make_coeff_series(s, 30);
    REQUIRE(series.coefficients.size() == 31);
    for (size_t n = 1; n <= 30; ++n) {
        Complex diff = series.partial_sums[n] - series.partial_sums[n - 1] -
                       series.coefficients[n];
        CHECK(abs(diff).to_double() < 4 * std::pow(2.0, -static_cast<double>(p) + 2));
    }
}

TEST_CASE("cancellation audit: doubled precision agrees within 2^{-P+8}") {
    for (unsigned n : {50u, 120u, 200u}) {
        for (double t : {0.0, 60.0, 200.0}) {
            SParam lo(0.5, t, 128);
            SParam hi(0.5, t, 256);
            Complex a = coeff_discrete(n, lo);
            Complex b = coeff_discrete(n, hi);
            CHECK(abs(a - b.rounded(128)).to_double() <= std::pow(2.0, -120));
        }
    }
}

TEST_CASE("real s > 1 keeps partial sums real") {
    long p = 128;
    SParam s(1.7, 0.0, p);
    Complex v = partial_sum(64.0, s);
    CHECK(std::abs(v.im().to_double()) < 10 * std::pow(2.0, -127) * std::abs(v.re().to_double()));
}

TEST_CASE("series error eventually decreases toward zeta") {
    for (double sigma : {0.05, 0.5, 1.5}) {
        for (double t : {0.0, 10.0, 50.0}) {
            long p = 128;
            SParam s(sigma, t, p);
            unsigned n_max = 110;
            CoeffSeries series = make_coeff_series(s, n_max);
            Complex zeta = zeta_reference(s, 1e-30);
            long burn_in = -1;
            double prev = 1e300;
            for (unsigned n = 0; n <= n_max; ++n) {
                double err = abs(series.partial_sums[n] - zeta).to_double();
                if (err > prev * (1.0 + 1e-9) && err > 1e-30) burn_in = static_cast<long>(n);
                prev = err;
            }
            // all non-monotone steps happen before a modest burn-in
            CHECK(burn_in <= 85);
            double tail_err = abs(series.partial_sums[n_max] - zeta).to_double();
            double mid_err = abs(series.partial_sums[70] - zeta).to_double();
            CHECK(tail_err <= mid_err * 1.0001 + 1e-28);
        }
    }
}

TEST_CASE("degenerate denominator is rejected") {
    long p = 128;
    // s = 1 + (2 pi / ln 2) i makes 2^{1-s} = 1; build t to full precision
    Real t = const_pi(p).mul_2si(1) / const_ln2(p);
    SParam s(Real(1L, p), t);
    CHECK_THROWS_AS(coeff_discrete(3, s), DegenerateError);
    CHECK_THROWS_AS(partial_sum(5.0, s), DegenerateError);
}

TEST_CASE("classical main terms") {
    long p = 128;

    // pure Dirichlet tail bound: s = 2, x = 1000, y < 1
    SParam s2(2.0, 0.0, p);
    Real pi2_6 = const_pi(p) * const_pi(p) / Real(6L, p);
    Complex approx = classical_main_terms(s2, 1000.0, 0.5);
    CHECK(abs(approx - Complex(pi2_6, Real(0L, p))).to_double() < 1e-3);

    // y < 1 leaves only the Dirichlet part
    SParam s(0.7, 12.0, p);
    Complex no_chi = classical_main_terms(s, 25.0, 0.9);
    Complex direct = dirichlet_partial(s.value(p + kGuardBits), 25).rounded(p);
    CHECK(abs(no_chi - direct).to_double() < 1e-33);

    // two-sum form stays within the stated error envelope, constant <= 5
    double t = 30.0;
    double xy = std::sqrt(t / (2 * M_PI));
    SParam sc(0.5, t, p);
    Complex v = classical_main_terms(sc, xy, xy);
    Complex zeta = zeta_reference(sc, 1e-25);
    double bound = std::pow(xy, -0.5) + std::pow(xy, 0.0) * std::pow(xy, -0.5);
    CHECK(abs(v - zeta).to_double() <= 5.0 * bound);
}

TEST_SUITE_END();
