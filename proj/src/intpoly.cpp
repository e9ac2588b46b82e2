#include "pherm/symkernel/intpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace pherm::symkernel {

IntPoly IntPoly::monomial(BigInt c, int k) {
    if (k < 0) throw std::invalid_argument("IntPoly::monomial: negative exponent");
    IntPoly p;
    if (c == 0) return p;
    p.coeffs_.assign(static_cast<size_t>(k) + 1, BigInt(0));
    p.coeffs_.back() = std::move(c);
    return p;
}

const BigInt& IntPoly::leading() const {
    if (coeffs_.empty()) throw std::logic_error("IntPoly::leading: zero polynomial");
    return coeffs_.back();
}

IntPoly IntPoly::operator-() const {
    IntPoly r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    r.coeffs_.resize(std::max(a.coeffs_.size(), b.coeffs_.size()), BigInt(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) r.coeffs_[i] += a.coeffs_[i];
    for (size_t i = 0; i < b.coeffs_.size(); ++i) r.coeffs_[i] += b.coeffs_[i];
    r.strip();
    return r;
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) { return a + (-b); }

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    IntPoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.coeffs_.assign(a.coeffs_.size() + b.coeffs_.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (size_t j = 0; j < b.coeffs_.size(); ++j) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    r.strip();
    return r;
}

bool operator<(const IntPoly& a, const IntPoly& b) {
    if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() < b.coeffs_.size();
    for (size_t i = a.coeffs_.size(); i-- > 0;) {
        if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] < b.coeffs_[i];
    }
    return false;
}

IntPoly IntPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("IntPoly::pow: negative exponent");
    IntPoly r(1), base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

BigInt IntPoly::content() const {
    using boost::multiprecision::gcd;
    BigInt g = 0;
    for (const auto& c : coeffs_) {
        g = gcd(g, c < 0 ? BigInt(-c) : c);
        if (g == 1) break;
    }
    return g;
}

IntPoly IntPoly::primitive_part() const {
    if (is_zero()) return IntPoly();
    BigInt c = content();
    if (leading() < 0) c = -c;
    IntPoly r = *this;
    for (auto& x : r.coeffs_) x /= c;
    return r;
}

IntPoly IntPoly::div_exact(const IntPoly& d) const {
    if (d.is_zero()) throw std::domain_error("IntPoly::div_exact: division by zero");
    IntPoly rem = *this;
    if (rem.is_zero()) return IntPoly();
    std::vector<BigInt> q(static_cast<size_t>(std::max(0, rem.degree() - d.degree() + 1)), BigInt(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        BigInt lc = rem.leading();
        if (lc % d.leading() != 0) throw std::domain_error("IntPoly::div_exact: not divisible");
        BigInt f = lc / d.leading();
        int shift = rem.degree() - d.degree();
        q[static_cast<size_t>(shift)] = f;
        rem -= IntPoly::monomial(f, shift) * d;
    }
    if (!rem.is_zero()) throw std::domain_error("IntPoly::div_exact: not divisible");
    return IntPoly(std::move(q));
}

// Primitive pseudo-remainder sequence.
IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
    using boost::multiprecision::gcd;
    if (a.is_zero()) return b.is_zero() ? IntPoly() : b.primitive_part() * IntPoly(b.content());
    if (b.is_zero()) return a.primitive_part() * IntPoly(a.content());
    BigInt cg = gcd(a.content(), b.content());
    IntPoly p = a.primitive_part(), q = b.primitive_part();
    if (p.degree() < q.degree()) std::swap(p, q);
    while (!q.is_zero()) {
        // Pseudo-remainder of p by q: multiply p by lc(q)^(deg p - deg q + 1) so the
        // division stays in integer coefficients.
        int dd = p.degree() - q.degree();
        IntPoly r = p * IntPoly(BigInt(q.leading())).pow(dd + 1);
        while (!r.is_zero() && r.degree() >= q.degree()) {
            BigInt f = r.leading() / q.leading();
            int shift = r.degree() - q.degree();
            r -= IntPoly::monomial(f, shift) * q;
        }
        p = q;
        q = r.primitive_part();
    }
    return p.primitive_part() * IntPoly(cg);
}

Rational IntPoly::eval(const Rational& n) const {
    Rational r(0);
    for (size_t i = coeffs_.size(); i-- > 0;) r = r * n + Rational(coeffs_[i]);
    return r;
}

double IntPoly::eval(double n) const {
    double r = 0;
    for (size_t i = coeffs_.size(); i-- > 0;) r = r * n + coeffs_[i].convert_to<double>();
    return r;
}

std::string IntPoly::str(const std::string& sym) const {
    if (is_zero()) return "0";
    std::string s;
    for (size_t i = coeffs_.size(); i-- > 0;) {
        const BigInt& c = coeffs_[i];
        if (c == 0) continue;
        BigInt ac = c < 0 ? BigInt(-c) : c;
        if (!s.empty())
            s += (c < 0) ? " - " : " + ";
        else if (c < 0)
            s += "-";
        bool unit = (ac == 1) && i > 0;
        if (!unit) s += ac.str();
        if (i > 0) {
            if (!unit) s += "*";
            s += sym;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace pherm::symkernel
