#include "zafe/special.hpp"

#include <algorithm>

#include "zafe/bernoulli.hpp"

namespace zafe {

namespace {

bool is_nonpositive_integer(const Complex& z) {
    return z.im().is_zero() && z.re().is_integer() && z.re().sign() <= 0;
}

// Stirling tail sum_{k>=1} B_{2k} / (2k(2k-1) z^{2k-1}) at |z| >= radius.
Complex stirling_series(const Complex& z, long wp) {
    Complex zinv = Complex(Real(1L, wp), Real(0L, wp)) / z;
    Complex zinv2 = zinv * zinv;
    Complex p = zinv;
    Complex acc(wp);
    Real cut = pow2(-wp - 8, wp);
    long kmax = static_cast<long>(0.36 * static_cast<double>(wp)) + 24;
    for (long k = 1; k <= kmax; ++k) {
        Real c = bernoulli_real(2 * static_cast<unsigned>(k), wp) /
                 Real(2 * k * (2 * k - 1), wp);
        Complex term = p * c;
        acc += term;
        if (norm1(term) < cut) return acc;
        p = p * zinv2;
    }
    throw ConvergenceError("Stirling series did not reach target accuracy");
}

Complex log_gamma_wp(const Complex& z, long wp);

// Reflection: log Gamma(z) = log pi - log sin(pi z) - log Gamma(1 - z).
Complex log_gamma_reflect(const Complex& z, long wp) {
    Real pi = const_pi(wp);
    Complex one_minus(Real(1L, wp) - z.re(), -z.im());
    return Complex(log(pi), Real(0L, wp)) - log_sin(z * pi) - log_gamma_wp(one_minus, wp);
}

Complex log_gamma_wp(const Complex& z, long wp) {
    if (z.re().cmp(0.5) < 0) return log_gamma_reflect(z, wp);

    double radius = std::max(10.0, 0.18 * static_cast<double>(wp) + 8.0);
    Complex zs = z;
    Complex shift(wp);
    while (abs(zs).cmp(radius) < 0) {
        shift += log(zs);
        zs = zs + Real(1L, wp);
    }

    Real half(0.5, wp);
    Complex lg = (zs - half) * log(zs) - zs;
    Real ln_sqrt_2pi = (log(const_pi(wp).mul_2si(1))) * half;
    lg = lg + Real(ln_sqrt_2pi);
    lg += stirling_series(zs, wp);
    return lg - shift;
}

}  // namespace

Complex log_gamma(const Complex& z) {
    if (is_nonpositive_integer(z))
        throw PoleError("log_gamma pole at non-positive integer");
    long p = z.precision();
    long wp = p + kGuardBits;
    return log_gamma_wp(z.rounded(wp), wp).rounded(p);
}

Complex log_sin(const Complex& z) {
    long wp = z.precision();
    Real one(1L, wp);
    if (abs(z.im()) <= one) {
        Complex s = sin(z);
        if (s.is_zero()) throw PoleError("log_sin at a zero of sin");
        return log(s);
    }
    Real ln2 = const_ln2(wp);
    Real half_pi = const_pi(wp).mul_2si(-1);
    if (z.im().sign() > 0) {
        // sin z = e^{-iz} (i/2)(1 - e^{2iz}),   |e^{2iz}| <= e^{-2}
        Complex t = log1p(-exp(mul_i(z).mul_2si(1)));
        return Complex(z.im() - ln2, -z.re() + half_pi) + t;
    }
    Complex t = log1p(-exp(div_i(z).mul_2si(1)));
    return Complex(-z.im() - ln2, z.re() - half_pi) + t;
}

Complex log_cos(const Complex& z) {
    long wp = z.precision();
    Real one(1L, wp);
    if (abs(z.im()) <= one) {
        Complex c = cos(z);
        if (c.is_zero()) throw PoleError("log_cos at a zero of cos");
        return log(c);
    }
    Real ln2 = const_ln2(wp);
    if (z.im().sign() > 0) {
        Complex t = log1p(exp(mul_i(z).mul_2si(1)));
        return Complex(z.im() - ln2, -z.re()) + t;
    }
    Complex t = log1p(exp(div_i(z).mul_2si(1)));
    return Complex(-z.im() - ln2, z.re()) + t;
}

Complex chi_log(const SParam& s) {
    long p = s.precision;
    long wp = p + kGuardBits;
    Complex z = s.value(wp);
    if (s.is_pole_of_zeta()) throw PoleError("chi pole at s = 1");

    Real pi = const_pi(wp);
    Real ln2 = const_ln2(wp);
    Real lnpi = log(pi);
    Complex half_pi_z = z * pi.mul_2si(-1);

    if (s.sigma.cmp(0.5) <= 0) {
        // 2^s pi^{s-1} sin(pi s / 2) Gamma(1 - s); Gamma argument stays in
        // the right half plane here.
        Complex one_minus(Real(1L, wp) - z.re(), -z.im());
        return z * ln2 + (z - Real(1L, wp)) * lnpi + log_sin(half_pi_z) +
               log_gamma_wp(one_minus, wp);
    }
    // 2^{s-1} pi^s / (cos(pi s / 2) Gamma(s)); regular at even integers.
    return (z - Real(1L, wp)) * ln2 + z * lnpi - log_cos(half_pi_z) -
           log_gamma_wp(z, wp);
}

Complex chi(const SParam& s) {
    long p = s.precision;
    long wp = p + kGuardBits;
    // chi vanishes at the trivial zeros reachable from the sin form.
    if (s.t.is_zero() && s.sigma.is_integer() && s.sigma.sign() <= 0) {
        long n = static_cast<long>(s.sigma.to_double());
        if (n % 2 == 0) return Complex(p);
    }
    Complex lc = chi_log(s);
    if (abs(lc.re()).cmp(1e9) > 0)
        throw PrecisionError("chi exponent exceeds representable range");
    return exp(lc.rounded(wp)).rounded(p);
}

namespace {

// One Euler-Maclaurin evaluation with cutoff N and corrections through B_20.
Complex zeta_em(const Complex& z, long n_cut, long wp) {
    Complex acc(wp);
    Complex minus_z = -z;
    Real lnn(wp);
    for (long n = 1; n < n_cut; ++n) {
        mpfr_log_ui(lnn.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
        acc += exp(minus_z * lnn);
    }
    mpfr_log_ui(lnn.raw(), static_cast<unsigned long>(n_cut), MPFR_RNDN);
    Complex n_pow_minus_z = exp(minus_z * lnn);  // N^{-s}
    Real rn(static_cast<long>(n_cut), wp);

    // N^{1-s}/(s-1) + N^{-s}/2
    acc += (n_pow_minus_z * rn) / (z - Real(1L, wp));
    acc += n_pow_minus_z.mul_2si(-1);

    // sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    Complex rising = z;                          // s
    Complex npow = n_pow_minus_z / rn;           // N^{-s-1}
    Real rn2 = rn * rn;
    for (unsigned k = 1; k <= 10; ++k) {
        Real coeff = bernoulli_real(2 * k, wp);
        Real fact(wp);
        mpfr_set_z(fact.raw(), factorial(2 * k).get_mpz_t(), MPFR_RNDN);
        acc += rising * npow * (coeff / fact);
        if (k < 10) {
            rising = rising * (z + Real(static_cast<long>(2 * k - 1), wp));
            rising = rising * (z + Real(static_cast<long>(2 * k), wp));
            npow = npow / rn2;
        }
    }
    return acc;
}

}  // namespace

Complex zeta_reference(const SParam& s, const Real& target_error) {
    long p = s.precision;
    if (s.is_pole_of_zeta()) throw PoleError("zeta pole at s = 1");
    if (target_error.sign() <= 0)
        throw DomainError("target_error must be positive");
    if (target_error < pow2(-(p - 16), p))
        throw PrecisionError("target_error unreachable at this precision");

    long wp = p + kGuardBits + 16;
    Complex z = s.value(wp);
    Real target = target_error.rounded(wp);

    double at = std::abs(s.t.to_double());
    long n = std::max<long>(10, static_cast<long>(at) + 1);
    Complex prev = zeta_em(z, n, wp);
    for (int iter = 0; iter < 22; ++iter) {
        n *= 2;
        Complex cur = zeta_em(z, n, wp);
        if (abs(cur - prev) <= target) return cur.rounded(p);
        prev = cur;
    }
    throw PrecisionError("zeta_reference did not converge to target_error");
}

Complex zeta_reference(const SParam& s, double target_error) {
    return zeta_reference(s, Real(target_error, s.precision));
}

}  // namespace zafe
