#include "pherm/symkernel/dimrational.hpp"

#include <stdexcept>

namespace pherm::symkernel {

DimRational::DimRational(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("DimRational: zero denominator");
    normalize();
}

void DimRational::normalize() {
    if (num_.is_zero()) {
        den_ = IntPoly(1);
        return;
    }
    IntPoly g = IntPoly::gcd(num_, den_);
    if (g != IntPoly(1)) {
        num_ = num_.div_exact(g);
        den_ = den_.div_exact(g);
    }
    if (den_.leading() < 0) {
        num_ = -num_;
        den_ = -den_;
    }
}

DimRational DimRational::operator-() const {
    DimRational r = *this;
    r.num_ = -r.num_;
    return r;
}

DimRational operator+(const DimRational& a, const DimRational& b) {
    return DimRational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

DimRational operator-(const DimRational& a, const DimRational& b) {
    return DimRational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

DimRational operator*(const DimRational& a, const DimRational& b) {
    return DimRational(a.num_ * b.num_, a.den_ * b.den_);
}

DimRational operator/(const DimRational& a, const DimRational& b) {
    if (b.is_zero()) throw std::domain_error("DimRational: division by zero");
    return DimRational(a.num_ * b.den_, a.den_ * b.num_);
}

bool operator<(const DimRational& a, const DimRational& b) {
    if (a.num_ != b.num_) return a.num_ < b.num_;
    return a.den_ < b.den_;
}

DimRational DimRational::pow(int e) const {
    if (e < 0) {
        if (is_zero()) throw std::domain_error("DimRational: 0^negative");
        return DimRational(den_, num_).pow(-e);
    }
    DimRational r(1), base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

Rational DimRational::eval(const Rational& n) const {
    Rational d = den_.eval(n);
    if (d.is_zero())
        throw std::domain_error("DimRational::eval: denominator " + den_.str() + " vanishes at n = " + n.str());
    return num_.eval(n) / d;
}

Rational DimRational::constant_value() const {
    if (!is_constant()) throw std::logic_error("DimRational::constant_value: not constant: " + str());
    return Rational(num_.coeff(0), den_.coeff(0));
}

std::string DimRational::str(const std::string& sym) const {
    if (den_ == IntPoly(1)) {
        if (num_.degree() <= 0) return num_.str(sym);
        return "(" + num_.str(sym) + ")";
    }
    std::string ns = num_.degree() <= 0 && num_.coeff(0) >= 0 ? num_.str(sym) : "(" + num_.str(sym) + ")";
    std::string ds = den_.degree() <= 0 ? den_.str(sym) : "(" + den_.str(sym) + ")";
    return ns + "/" + ds;
}

DimComplex operator/(const DimComplex& a, const DimComplex& b) {
    DimRational m = b.re_ * b.re_ + b.im_ * b.im_;
    if (m.is_zero()) throw std::domain_error("DimComplex: division by zero");
    return DimComplex((a.re_ * b.re_ + a.im_ * b.im_) / m, (a.im_ * b.re_ - a.re_ * b.im_) / m);
}

DimComplex DimComplex::pow(int e) const {
    if (e < 0) return (DimComplex(1) / *this).pow(-e);
    DimComplex r(1), base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

std::string DimComplex::str(const std::string& sym) const {
    if (im_.is_zero()) return re_.str(sym);
    std::string s;
    if (!re_.is_zero()) s += re_.str(sym) + " + ";
    if (im_.is_one())
        s += "i";
    else
        s += im_.str(sym) + "*i";
    return s;
}

}  // namespace pherm::symkernel
