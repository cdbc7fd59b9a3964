#include "zafe/real.hpp"

#include <algorithm>

namespace zafe {

std::string Real::to_string() const {
    if (!is_finite()) throw NonFiniteError("to_string of non-finite value");
    if (is_zero()) return "0";

    mpfr_exp_t e;
    char* s = mpfr_get_str(nullptr, &e, 10, 0, v_, MPFR_RNDN);
    std::string digits(s);
    mpfr_free_str(s);

    bool neg = !digits.empty() && digits[0] == '-';
    if (neg) digits.erase(0, 1);
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    std::string out = neg ? "-" : "";
    out += digits.substr(0, 1);
    if (digits.size() > 1) {
        out += '.';
        out += digits.substr(1);
    }
    long ee = static_cast<long>(e) - 1;
    if (ee != 0) {
        out += 'e';
        out += std::to_string(ee);
    }
    return out;
}

namespace {
template <typename F>
Real un(F f, const Real& x, const char* ctx) {
    Real r(x.precision());
    f(r.raw(), x.raw(), MPFR_RNDN);
    r.check_finite(ctx);
    return r;
}
}  // namespace

Real exp(const Real& x) { return un(mpfr_exp, x, "exp"); }
Real expm1(const Real& x) { return un(mpfr_expm1, x, "expm1"); }

Real log(const Real& x) {
    if (x.sign() <= 0) throw DomainError("log of non-positive value");
    return un(mpfr_log, x, "log");
}

Real log1p(const Real& x) {
    if (x.cmp(-1.0) <= 0) throw DomainError("log1p of value <= -1");
    return un(mpfr_log1p, x, "log1p");
}

Real sqrt(const Real& x) {
    if (x.sign() < 0) throw DomainError("sqrt of negative value");
    return un(mpfr_sqrt, x, "sqrt");
}

Real sin(const Real& x) { return un(mpfr_sin, x, "sin"); }
Real cos(const Real& x) { return un(mpfr_cos, x, "cos"); }
Real tan(const Real& x) { return un(mpfr_tan, x, "tan"); }
Real atan(const Real& x) { return un(mpfr_atan, x, "atan"); }
Real asinh(const Real& x) { return un(mpfr_asinh, x, "asinh"); }
Real sinh(const Real& x) { return un(mpfr_sinh, x, "sinh"); }
Real cosh(const Real& x) { return un(mpfr_cosh, x, "cosh"); }
Real tanh(const Real& x) { return un(mpfr_tanh, x, "tanh"); }
Real floor(const Real& x) {
    Real r(x.precision());
    mpfr_floor(r.raw(), x.raw());
    return r;
}
Real ceil(const Real& x) {
    Real r(x.precision());
    mpfr_ceil(r.raw(), x.raw());
    return r;
}
Real abs(const Real& x) {
    Real r(x.precision());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

Real atan2(const Real& y, const Real& x) {
    Real r(std::min(y.precision(), x.precision()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    r.check_finite("atan2");
    return r;
}

Real hypot(const Real& x, const Real& y) {
    Real r(std::min(y.precision(), x.precision()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    r.check_finite("hypot");
    return r;
}

Real pow(const Real& x, const Real& y) {
    Real r(std::min(y.precision(), x.precision()));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    r.check_finite("pow");
    return r;
}

Real min(const Real& a, const Real& b) { return a <= b ? a : b; }
Real max(const Real& a, const Real& b) { return a >= b ? a : b; }

Real const_pi(long prec) {
    Real r(prec);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real const_ln2(long prec) {
    Real r(prec);
    mpfr_const_log2(r.raw(), MPFR_RNDN);
    return r;
}

Real pow2(long e, long prec) {
    Real r(1L, prec);
    return r.mul_2si(e);
}

}  // namespace zafe
