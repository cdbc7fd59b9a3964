#include "zafe/complex.hpp"

namespace zafe {

Complex operator*(const Complex& a, const Complex& b) {
    long p = std::min(a.precision(), b.precision());
    Real re(p), im(p), t(p);
    mpfr_mul(re.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
    mpfr_mul(t.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_sub(re.raw(), re.raw(), t.raw(), MPFR_RNDN);
    mpfr_mul(im.raw(), a.re_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_mul(t.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
    mpfr_add(im.raw(), im.raw(), t.raw(), MPFR_RNDN);
    re.check_finite("cmul");
    im.check_finite("cmul");
    return {std::move(re), std::move(im)};
}

Complex operator/(const Complex& a, const Complex& b) {
    long p = std::min(a.precision(), b.precision());
    Real den(p), t(p);
    mpfr_mul(den.raw(), b.re_.raw(), b.re_.raw(), MPFR_RNDN);
    mpfr_mul(t.raw(), b.im_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_add(den.raw(), den.raw(), t.raw(), MPFR_RNDN);
    if (den.is_zero()) throw DomainError("complex division by zero");
    Real re(p), im(p);
    mpfr_mul(re.raw(), a.re_.raw(), b.re_.raw(), MPFR_RNDN);
    mpfr_mul(t.raw(), a.im_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_add(re.raw(), re.raw(), t.raw(), MPFR_RNDN);
    mpfr_div(re.raw(), re.raw(), den.raw(), MPFR_RNDN);
    mpfr_mul(im.raw(), a.im_.raw(), b.re_.raw(), MPFR_RNDN);
    mpfr_mul(t.raw(), a.re_.raw(), b.im_.raw(), MPFR_RNDN);
    mpfr_sub(im.raw(), im.raw(), t.raw(), MPFR_RNDN);
    mpfr_div(im.raw(), im.raw(), den.raw(), MPFR_RNDN);
    re.check_finite("cdiv");
    im.check_finite("cdiv");
    return {std::move(re), std::move(im)};
}

Real abs(const Complex& z) { return hypot(z.re(), z.im()); }

Real arg(const Complex& z) { return atan2(z.im(), z.re()); }

Real norm1(const Complex& z) { return abs(z.re()) + abs(z.im()); }

Complex exp(const Complex& z) {
    long p = z.precision();
    Real e = exp(z.re());
    Real c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.im().raw(), MPFR_RNDN);
    return {e * c, e * s};
}

Complex log(const Complex& z) {
    if (z.is_zero()) throw DomainError("log of complex zero");
    return {log(abs(z)), arg(z)};
}

Complex log1p(const Complex& z) {
    long p = z.precision();
    return log(Complex(Real(1L, p) + z.re(), z.im()));
}

Complex sin(const Complex& z) {
    long p = z.precision();
    Real c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.re().raw(), MPFR_RNDN);
    return {s * cosh(z.im()), c * sinh(z.im())};
}

Complex cos(const Complex& z) {
    long p = z.precision();
    Real c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), z.re().raw(), MPFR_RNDN);
    return {c * cosh(z.im()), -(s * sinh(z.im()))};
}

Complex sqrt(const Complex& z) {
    if (z.is_zero()) return Complex(z.precision());
    long p = z.precision();
    Real r = abs(z);
    Real half(0.5, p);
    Real m = sqrt(r);
    Real a = arg(z) * half;
    Real c(p), s(p);
    mpfr_sin_cos(s.raw(), c.raw(), a.raw(), MPFR_RNDN);
    return {m * c, m * s};
}

Complex pow(const Complex& z, const Complex& w) {
    if (z.is_zero()) {
        if (w.re().sign() > 0) return Complex(std::min(z.precision(), w.precision()));
        throw DomainError("0 raised to a power with non-positive real part");
    }
    return exp(w * log(z));
}

Complex pow_si(long n, const Complex& w, long prec) {
    if (n <= 0) throw DomainError("pow_si requires a positive base");
    Real ln(prec);
    mpfr_log_ui(ln.raw(), static_cast<unsigned long>(n), MPFR_RNDN);
    return exp(w * ln);
}

Complex mul_i(const Complex& z) { return {-z.im(), z.re()}; }

Complex div_i(const Complex& z) { return {z.im(), -z.re()}; }

}  // namespace zafe
