#include "zafe/hasse_sondow.hpp"

#include <gmpxx.h>

namespace zafe {

namespace {

// (k+1)^{-s} for k = 0..kmax via exp(-s log(k+1)).
std::vector<Complex> power_table(const Complex& minus_s, long kmax, long wp) {
    std::vector<Complex> pw;
    pw.reserve(static_cast<size_t>(kmax) + 1);
    Real lnk(wp);
    for (long k = 0; k <= kmax; ++k) {
        mpfr_log_ui(lnk.raw(), static_cast<unsigned long>(k + 1), MPFR_RNDN);
        pw.push_back(exp(minus_s * lnk));
    }
    return pw;
}

// Alternating binomial row sum_{k<=n} C(n,k)(-1)^k pw[k], accumulated into
// (row_re, row_im) at their precision. binom is scratch.
void binomial_row(long n, const std::vector<Complex>& pw, Real& row_re, Real& row_im,
                  mpz_class& binom, Real& bin_r) {
    mpfr_set_zero(row_re.raw(), 1);
    mpfr_set_zero(row_im.raw(), 1);
    binom = 1;
    for (long k = 0; k <= n; ++k) {
        mpfr_set_z(bin_r.raw(), binom.get_mpz_t(), MPFR_RNDN);
        if (k & 1) mpfr_neg(bin_r.raw(), bin_r.raw(), MPFR_RNDN);
        mpfr_fma(row_re.raw(), bin_r.raw(), pw[k].re().raw(), row_re.raw(), MPFR_RNDN);
        mpfr_fma(row_im.raw(), bin_r.raw(), pw[k].im().raw(), row_im.raw(), MPFR_RNDN);
        if (k < n) {
            binom *= static_cast<unsigned long>(n - k);
            mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(),
                            static_cast<unsigned long>(k + 1));
        }
    }
}

}  // namespace

Complex eta_denominator(const SParam& s, long wp) {
    Complex z = s.value(wp);
    Real ln2 = const_ln2(wp);
    Complex d = Real(1L, wp) - exp((Real(1L, wp) - z) * ln2);
    if (abs(d) < pow2(-s.precision / 2, wp))
        throw DegenerateError("1 - 2^{1-s} vanishes to working precision");
    return d;
}

Complex coeff_discrete(unsigned n, const SParam& s) {
    long p = s.precision;
    long wp = p + static_cast<long>(n) + 2 * kGuardBits;
    Complex z = s.value(wp);
    Complex d = eta_denominator(s, wp);

    std::vector<Complex> pw = power_table(-z, n, wp);
    Real row_re(wp), row_im(wp), bin_r(wp);
    mpz_class binom;
    binomial_row(static_cast<long>(n), pw, row_re, row_im, binom, bin_r);

    Complex row(std::move(row_re), std::move(row_im));
    return (row.mul_2si(-(static_cast<long>(n) + 1)) / d).rounded(p);
}

Complex partial_sum(const Real& x, const SParam& s) {
    if (x.sign() < 0) throw DomainError("partial_sum requires x >= 0");
    long cutoff = static_cast<long>(floor(x).to_double());
    long p = s.precision;
    long wp = p + cutoff + 2 * kGuardBits;
    Complex z = s.value(wp);
    Complex d = eta_denominator(s, wp);

    std::vector<Complex> pw = power_table(-z, cutoff, wp);
    Real acc_re(wp), acc_im(wp), row_re(wp), row_im(wp), bin_r(wp);
    mpz_class binom;
    for (long n = 0; n <= cutoff; ++n) {
        binomial_row(n, pw, row_re, row_im, binom, bin_r);
        mpfr_mul_2si(row_re.raw(), row_re.raw(), -(n + 1), MPFR_RNDN);
        mpfr_mul_2si(row_im.raw(), row_im.raw(), -(n + 1), MPFR_RNDN);
        mpfr_add(acc_re.raw(), acc_re.raw(), row_re.raw(), MPFR_RNDN);
        mpfr_add(acc_im.raw(), acc_im.raw(), row_im.raw(), MPFR_RNDN);
    }
    acc_re.check_finite("partial_sum");
    acc_im.check_finite("partial_sum");
    Complex acc(std::move(acc_re), std::move(acc_im));
    return (acc / d).rounded(p);
}

Complex partial_sum(double x, const SParam& s) {
    return partial_sum(Real(x, s.precision), s);
}

CoeffSeries make_coeff_series(const SParam& s, unsigned n_max) {
    long p = s.precision;
    long wp = p + static_cast<long>(n_max) + 2 * kGuardBits;
    Complex z = s.value(wp);
    Complex d = eta_denominator(s, wp);

    std::vector<Complex> pw = power_table(-z, n_max, wp);
    CoeffSeries out{s, {}, {}};
    out.coefficients.reserve(n_max + 1);
    out.partial_sums.reserve(n_max + 1);

    Real row_re(wp), row_im(wp), bin_r(wp);
    mpz_class binom;
    Complex acc(wp);
    for (long n = 0; n <= static_cast<long>(n_max); ++n) {
        binomial_row(n, pw, row_re, row_im, binom, bin_r);
        Complex coeff =
            Complex(row_re, row_im).mul_2si(-(n + 1)) / d;
        acc += coeff;
        out.coefficients.push_back(coeff.rounded(p));
        out.partial_sums.push_back(acc.rounded(p));
    }
    return out;
}

Complex dirichlet_partial(const Complex& z, long count) {
    long wp = z.precision();
    Complex acc(wp);
    Complex minus_z = -z;
    Real lnn(wp);
    for (long n = 1; n <= count; ++n) {
        mpfr_log_ui(lnn.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
        acc += exp(minus_z * lnn);
    }
    return acc;
}

Complex classical_main_terms(const SParam& s, const Real& x, const Real& y) {
    long p = s.precision;
    long wp = p + kGuardBits;
    if (s.is_pole_of_zeta()) throw PoleError("classical main terms at s = 1");
    Complex z = s.value(wp);

    long nx = x.sign() < 0 ? 0 : static_cast<long>(floor(x).to_double());
    long ny = y.sign() < 0 ? 0 : static_cast<long>(floor(y).to_double());

    Complex acc = dirichlet_partial(z, nx);
    if (ny >= 1) {
        // chi(s) * sum_{k<=y} k^{s-1}
        Complex zm1 = z - Real(1L, wp);
        Complex chi_sum(wp);
        Real lnk(wp);
        for (long k = 1; k <= ny; ++k) {
            mpfr_log_ui(lnk.raw(), static_cast<unsigned long>(k), MPFR_RNDN);
            chi_sum += exp(zm1 * lnk);
        }
        SParam sw(s.sigma.rounded(wp), s.t.rounded(wp));
        acc += chi(sw) * chi_sum;
    }
    return acc.rounded(p);
}

Complex classical_main_terms(const SParam& s, double x, double y) {
    return classical_main_terms(s, Real(x, s.precision), Real(y, s.precision));
}

}  // namespace zafe
