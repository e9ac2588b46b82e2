#pragma once

#include "pherm/symkernel/rational.hpp"

#include <complex>
#include <string>
#include <utility>

namespace pherm::symkernel {

/// Exact Gaussian rational: re + im*i with rational components.
struct CRational {
    Rational re, im;

    CRational() = default;
    CRational(long long v) : re(v) {}  // NOLINT: implicit by design
    CRational(Rational r) : re(std::move(r)) {}  // NOLINT
    CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static CRational i() { return {Rational(0), Rational(1)}; }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    CRational conj() const { return {re, -im}; }

    CRational operator-() const { return {-re, -im}; }

    CRational& operator+=(const CRational& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    CRational& operator-=(const CRational& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    CRational& operator*=(const CRational& o) { return *this = *this * o; }

    friend CRational operator+(CRational a, const CRational& b) { return a += b; }
    friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
    friend CRational operator*(const CRational& a, const CRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    friend bool operator==(const CRational& a, const CRational& b) = default;

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    std::string str() const {
        if (im.is_zero()) return re.str();
        if (re.is_zero()) return im.str() + "*i";
        return re.str() + (im.sign() < 0 ? "" : "+") + im.str() + "*i";
    }
};

}  // namespace pherm::symkernel
