#ifndef ZAFE_REAL_HPP
#define ZAFE_REAL_HPP

#include <mpfr.h>

#include <string>
#include <utility>

#include "zafe/errors.hpp"

namespace zafe {

inline constexpr long kMinPrecision = 53;
inline constexpr long kDefaultPrecision = 128;
inline constexpr long kGuardBits = 32;

inline long clamp_precision(long prec) {
    return prec < kMinPrecision ? kMinPrecision : prec;
}

/// Arbitrary-precision real number with an explicit precision in bits.
///
/// Value semantics throughout: copies preserve the source precision exactly,
/// and binary operations round to the minimum of the operands' precisions.
/// Any operation whose result is NaN or an infinity throws NonFiniteError
/// instead of letting the value escape.
class Real {
public:
    explicit Real(long prec = kDefaultPrecision) {
        mpfr_init2(v_, clamp_precision(prec));
        mpfr_set_zero(v_, 1);
    }
    Real(double v, long prec) {
        mpfr_init2(v_, clamp_precision(prec));
        mpfr_set_d(v_, v, MPFR_RNDN);
    }
    Real(long v, long prec) {
        mpfr_init2(v_, clamp_precision(prec));
        mpfr_set_si(v_, v, MPFR_RNDN);
    }
    Real(int v, long prec) : Real(static_cast<long>(v), prec) {}

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        v_[0] = o.v_[0];
        mpfr_init2(o.v_, kMinPrecision);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real from_string(const std::string& s, long prec) {
        Real r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw DomainError("unparsable numeric literal: " + s);
        return r;
    }

    long precision() const { return mpfr_get_prec(v_); }

    /// Copy rounded (or extended exactly) to the given precision.
    Real rounded(long prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// Decimal string with the minimal digit count that round-trips exactly
    /// at this value's precision.
    std::string to_string() const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    long exponent() const { return is_zero() ? 0 : mpfr_get_exp(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    void check_finite(const char* ctx) const {
        if (!is_finite()) throw NonFiniteError(std::string("non-finite result in ") + ctx);
    }

    Real operator-() const {
        Real r(precision());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b, "add"); }
    friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b, "sub"); }
    friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b, "mul"); }
    friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b, "div"); }

    Real& operator+=(const Real& o) { return inplace(mpfr_add, o, "add"); }
    Real& operator-=(const Real& o) { return inplace(mpfr_sub, o, "sub"); }
    Real& operator*=(const Real& o) { return inplace(mpfr_mul, o, "mul"); }
    Real& operator/=(const Real& o) { return inplace(mpfr_div, o, "div"); }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    int cmp(double d) const { return mpfr_cmp_d(v_, d); }
    int cmp(long n) const { return mpfr_cmp_si(v_, n); }

    /// Exact scaling by 2^k (precision preserved).
    Real mul_2si(long k) const {
        Real r(precision());
        mpfr_mul_2si(r.v_, v_, k, MPFR_RNDN);
        return r;
    }

private:
    template <typename F>
    static Real bin(F f, const Real& a, const Real& b, const char* ctx) {
        Real r(std::min(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        r.check_finite(ctx);
        return r;
    }
    template <typename F>
    Real& inplace(F f, const Real& o, const char* ctx) {
        long p = std::min(precision(), o.precision());
        if (p != precision()) {
            Real tmp = rounded(p);
            mpfr_swap(v_, tmp.v_);
        }
        f(v_, v_, o.v_, MPFR_RNDN);
        check_finite(ctx);
        return *this;
    }

    mpfr_t v_;
};

// Elementary functions. All round at the argument's precision and reject
// non-finite results.
Real exp(const Real& x);
Real expm1(const Real& x);
Real log(const Real& x);
Real log1p(const Real& x);
Real sqrt(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real tan(const Real& x);
Real atan(const Real& x);
Real asinh(const Real& x);
Real atan2(const Real& y, const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real pow(const Real& x, const Real& y);
Real floor(const Real& x);
Real ceil(const Real& x);
Real abs(const Real& x);
Real hypot(const Real& x, const Real& y);

Real min(const Real& a, const Real& b);
Real max(const Real& a, const Real& b);

Real const_pi(long prec);
Real const_ln2(long prec);

/// 2^e as a Real at the given precision (exact).
Real pow2(long e, long prec);

}  // namespace zafe

#endif
