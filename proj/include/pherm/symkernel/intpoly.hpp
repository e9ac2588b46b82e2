#pragma once

#include "pherm/symkernel/rational.hpp"

#include <string>
#include <vector>

namespace pherm::symkernel {

/// Univariate polynomial over BigInt in the dimension symbol n.
/// Coefficient i is the coefficient of n^i; trailing zeros are stripped,
/// the zero polynomial has an empty coefficient vector.
class IntPoly {
public:
    IntPoly() = default;
    IntPoly(long long c) {  // NOLINT: implicit by design
        if (c != 0) coeffs_.push_back(BigInt(c));
    }
    IntPoly(BigInt c) {  // NOLINT
        if (c != 0) coeffs_.push_back(std::move(c));
    }
    explicit IntPoly(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

    /// The monomial c * n^k.
    static IntPoly monomial(BigInt c, int k);
    /// The symbol n itself.
    static IntPoly var() { return monomial(1, 1); }

    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero
    const std::vector<BigInt>& coeffs() const { return coeffs_; }
    const BigInt& leading() const;
    BigInt coeff(int k) const {
        return k >= 0 && k < static_cast<int>(coeffs_.size()) ? coeffs_[k] : BigInt(0);
    }

    IntPoly operator-() const;
    friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
    IntPoly& operator+=(const IntPoly& o) { return *this = *this + o; }
    IntPoly& operator-=(const IntPoly& o) { return *this = *this - o; }
    IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }
    /// Total order (degree, then coefficients from the top); used for canonical maps.
    friend bool operator<(const IntPoly& a, const IntPoly& b);

    IntPoly pow(int e) const;

    /// gcd of the absolute values of all coefficients (0 for the zero polynomial).
    BigInt content() const;
    /// Polynomial divided by its content, sign fixed so the leading coefficient is positive.
    IntPoly primitive_part() const;

    /// Exact division; throws if the remainder is nonzero.
    IntPoly div_exact(const IntPoly& d) const;

    /// Greatest common divisor including integer content, leading coefficient positive.
    static IntPoly gcd(const IntPoly& a, const IntPoly& b);

    Rational eval(const Rational& n) const;
    double eval(double n) const;

    std::string str(const std::string& sym = "n") const;

private:
    void strip() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigInt> coeffs_;
};

}  // namespace pherm::symkernel
