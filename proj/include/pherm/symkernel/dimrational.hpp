#pragma once

#include "pherm/symkernel/intpoly.hpp"

#include <string>

namespace pherm::symkernel {

/// Ratio of two integer-coefficient polynomials in the dimension symbol n.
/// Invariants: denominator nonzero, gcd(num, den) == 1 (including integer
/// content), and the denominator's leading coefficient is positive.
class DimRational {
public:
    DimRational() : num_(0), den_(1) {}
    DimRational(long long c) : num_(c), den_(1) {}  // NOLINT: implicit by design
    DimRational(const Rational& q) : num_(q.num()), den_(q.den()) {}  // NOLINT
    DimRational(IntPoly num, IntPoly den);

    static DimRational var() { return DimRational(IntPoly::var(), IntPoly(1)); }  // the symbol n

    const IntPoly& num() const { return num_; }
    const IntPoly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == IntPoly(1) && den_ == IntPoly(1); }

    DimRational operator-() const;
    friend DimRational operator+(const DimRational& a, const DimRational& b);
    friend DimRational operator-(const DimRational& a, const DimRational& b);
    friend DimRational operator*(const DimRational& a, const DimRational& b);
    friend DimRational operator/(const DimRational& a, const DimRational& b);
    DimRational& operator+=(const DimRational& o) { return *this = *this + o; }
    DimRational& operator-=(const DimRational& o) { return *this = *this - o; }
    DimRational& operator*=(const DimRational& o) { return *this = *this * o; }
    DimRational& operator/=(const DimRational& o) { return *this = *this / o; }

    friend bool operator==(const DimRational& a, const DimRational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const DimRational& a, const DimRational& b) { return !(a == b); }
    friend bool operator<(const DimRational& a, const DimRational& b);

    DimRational pow(int e) const;

    /// Specialize n to an exact rational; throws std::domain_error when the
    /// denominator vanishes there.
    Rational eval(const Rational& n) const;

    /// True when this is a constant (degree-zero numerator and denominator).
    bool is_constant() const { return num_.degree() <= 0 && den_.degree() <= 0; }
    Rational constant_value() const;

    std::string str(const std::string& sym = "n") const;

private:
    void normalize();

    IntPoly num_;
    IntPoly den_;
};

/// Element of Q(n)[i]: re + i*im. Conjugation negates im.
class DimComplex {
public:
    DimComplex() = default;
    DimComplex(long long c) : re_(c) {}  // NOLINT: implicit by design
    DimComplex(const Rational& q) : re_(q) {}  // NOLINT
    DimComplex(DimRational re) : re_(std::move(re)) {}  // NOLINT
    DimComplex(DimRational re, DimRational im) : re_(std::move(re)), im_(std::move(im)) {}

    static DimComplex i() { return DimComplex(DimRational(0), DimRational(1)); }

    const DimRational& re() const { return re_; }
    const DimRational& im() const { return im_; }

    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_one() const { return re_.is_one() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    DimComplex conj() const { return DimComplex(re_, -im_); }

    DimComplex operator-() const { return DimComplex(-re_, -im_); }
    friend DimComplex operator+(const DimComplex& a, const DimComplex& b) {
        return DimComplex(a.re_ + b.re_, a.im_ + b.im_);
    }
    friend DimComplex operator-(const DimComplex& a, const DimComplex& b) {
        return DimComplex(a.re_ - b.re_, a.im_ - b.im_);
    }
    friend DimComplex operator*(const DimComplex& a, const DimComplex& b) {
        return DimComplex(a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_);
    }
    friend DimComplex operator/(const DimComplex& a, const DimComplex& b);
    DimComplex& operator+=(const DimComplex& o) { return *this = *this + o; }
    DimComplex& operator-=(const DimComplex& o) { return *this = *this - o; }
    DimComplex& operator*=(const DimComplex& o) { return *this = *this * o; }
    DimComplex& operator/=(const DimComplex& o) { return *this = *this / o; }

    friend bool operator==(const DimComplex& a, const DimComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const DimComplex& a, const DimComplex& b) { return !(a == b); }
    friend bool operator<(const DimComplex& a, const DimComplex& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    DimComplex pow(int e) const;

    std::string str(const std::string& sym = "n") const;

private:
    DimRational re_;
    DimRational im_;
};

}  // namespace pherm::symkernel
