#ifndef ZAFE_COMPLEX_HPP
#define ZAFE_COMPLEX_HPP

#include <algorithm>
#include <string>

#include "zafe/real.hpp"

namespace zafe {

/// Complex value over Real. Precision is the minimum of the parts'
/// precisions and propagates through arithmetic the same way Real does.
class Complex {
public:
    explicit Complex(long prec = kDefaultPrecision) : re_(prec), im_(prec) {}
    Complex(Real re, Real im) : re_(std::move(re)), im_(std::move(im)) {}
    Complex(double re, double im, long prec) : re_(re, prec), im_(im, prec) {}

    const Real& re() const { return re_; }
    const Real& im() const { return im_; }
    Real& re() { return re_; }
    Real& im() { return im_; }

    long precision() const { return std::min(re_.precision(), im_.precision()); }

    Complex rounded(long prec) const { return {re_.rounded(prec), im_.rounded(prec)}; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

    Complex conj() const { return {re_, -im_}; }

    Complex operator-() const { return {-re_, -im_}; }

    /// Exact component-wise scaling by 2^k.
    Complex mul_2si(long k) const { return {re_.mul_2si(k), im_.mul_2si(k)}; }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend Complex operator*(const Complex& a, const Complex& b);
    friend Complex operator/(const Complex& a, const Complex& b);

    friend Complex operator*(const Complex& a, const Real& b) {
        return {a.re_ * b, a.im_ * b};
    }
    friend Complex operator*(const Real& a, const Complex& b) { return b * a; }
    friend Complex operator/(const Complex& a, const Real& b) {
        return {a.re_ / b, a.im_ / b};
    }
    friend Complex operator+(const Complex& a, const Real& b) {
        return {a.re_ + b, a.im_};
    }
    friend Complex operator-(const Complex& a, const Real& b) {
        return {a.re_ - b, a.im_};
    }
    friend Complex operator-(const Real& a, const Complex& b) {
        return {a - b.re_, -b.im_};
    }

    Complex& operator+=(const Complex& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    Complex& operator-=(const Complex& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }

    friend bool operator==(const Complex& a, const Complex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    std::string to_string() const {
        return re_.to_string() + (im_.sign() < 0 ? "" : "+") + im_.to_string() + "i";
    }

private:
    Real re_, im_;
};

Real abs(const Complex& z);
Real arg(const Complex& z);

/// |re| + |im|; cheap magnitude bound for convergence checks.
Real norm1(const Complex& z);

Complex exp(const Complex& z);
Complex log(const Complex& z);  // principal branch
Complex log1p(const Complex& z);
Complex sin(const Complex& z);
Complex cos(const Complex& z);
Complex sqrt(const Complex& z);  // principal branch

/// Principal power z^w = exp(w log z).
Complex pow(const Complex& z, const Complex& w);

/// n^w for positive integer n, via exp(w log n).
Complex pow_si(long n, const Complex& w, long prec);

Complex mul_i(const Complex& z);   // i*z
Complex div_i(const Complex& z);   // z/i = -i*z

}  // namespace zafe

#endif
