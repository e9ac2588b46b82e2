#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>

namespace pherm::exterior {

/// Sign of merging two disjoint ascending generator words (inversion parity).
inline int merge_sign(uint32_t a, uint32_t b) {
    int inv = 0;
    uint32_t bb = b;
    while (bb) {
        int i = std::countr_zero(bb);
        bb &= bb - 1;
        inv += std::popcount(a >> (i + 1));
    }
    return (inv & 1) ? -1 : 1;
}

/// Element of the exterior algebra on the 2n+1 anticommuting generators
///   g0 = theta, g1..gn = theta^alpha, g(n+1)..g(2n) = theta_alpha,
/// where theta_alpha denotes the Levi-lowered conjugate coframe. A form is a
/// sparse map from generator bitmask to coefficient; the mask space itself
/// caps the grade at 2n+1, and squares of generators vanish in the wedge.
///
/// Coeff must be a commutative ring type with 0/1 literals, +, -, *, ==.
template <typename Coeff>
class Form {
public:
    explicit Form(int n) : n_(n) {
        if (n < 1 || 2 * n + 1 > 31) throw std::invalid_argument("Form: bad dimension");
    }

    static Form scalar(int n, Coeff c) {
        Form f(n);
        f.add(0u, std::move(c));
        return f;
    }

    /// theta.
    static Form contact(int n) { return gen(n, 0); }
    /// theta^alpha, alpha in [1, n].
    static Form hol(int n, int alpha) { return gen(n, check_range(alpha, n)); }
    /// theta_alpha (lowered conjugate coframe), alpha in [1, n].
    static Form antihol(int n, int alpha) { return gen(n, n + check_range(alpha, n)); }

    int n() const { return n_; }
    int num_gens() const { return 2 * n_ + 1; }
    bool is_zero() const { return terms_.empty(); }

    /// True when all stored monomials share one grade.
    bool homogeneous() const {
        int g = -1;
        for (const auto& [m, c] : terms_) {
            int gm = std::popcount(m);
            if (g < 0) g = gm;
            if (gm != g) return false;
        }
        return true;
    }

    /// Common grade of a homogeneous form; -1 for the zero form.
    int grade() const {
        int g = -1;
        for (const auto& [m, c] : terms_) {
            int gm = std::popcount(m);
            if (g < 0)
                g = gm;
            else if (gm != g)
                throw std::logic_error("Form::grade: inhomogeneous form");
        }
        return g;
    }

    const std::map<uint32_t, Coeff>& terms() const { return terms_; }

    Coeff coeff(uint32_t mask) const {
        auto it = terms_.find(mask);
        return it == terms_.end() ? Coeff(0) : it->second;
    }

    /// Coefficient of the full top-grade monomial g0 g1 ... g(2n).
    Coeff top_coeff() const { return coeff((1u << num_gens()) - 1); }

    void add(uint32_t mask, Coeff c) {
        if (c == Coeff(0)) return;
        auto it = terms_.find(mask);
        if (it == terms_.end()) {
            terms_.emplace(mask, std::move(c));
        } else {
            it->second = it->second + c;
            if (it->second == Coeff(0)) terms_.erase(it);
        }
    }

    Form operator-() const {
        Form r(n_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, Coeff(0) - c);
        return r;
    }

    friend Form operator+(const Form& a, const Form& b) {
        check_same(a, b);
        Form r = a;
        for (const auto& [m, c] : b.terms_) r.add(m, c);
        return r;
    }
    friend Form operator-(const Form& a, const Form& b) { return a + (-b); }

    /// Wedge product.
    friend Form operator*(const Form& a, const Form& b) {
        check_same(a, b);
        Form r(a.n_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                if (ma & mb) continue;
                int s = merge_sign(ma, mb);
                Coeff c = ca * cb;
                r.add(ma | mb, s > 0 ? c : Coeff(0) - c);
            }
        }
        return r;
    }

    Form& operator+=(const Form& o) { return *this = *this + o; }
    Form& operator-=(const Form& o) { return *this = *this - o; }
    Form& operator*=(const Form& o) { return *this = *this * o; }

    friend Form operator*(const Coeff& c, const Form& f) {
        Form r(f.n_);
        for (const auto& [m, x] : f.terms_) r.add(m, c * x);
        return r;
    }

    friend bool operator==(const Form& a, const Form& b) {
        check_same(a, b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const Form& a, const Form& b) { return !(a == b); }

    Form pow(int k) const {
        if (k < 0) throw std::invalid_argument("Form::pow: negative exponent");
        Form r = scalar(n_, Coeff(1));
        for (int t = 0; t < k; ++t) r *= *this;
        return r;
    }

private:
    static Form gen(int n, int g) {
        Form f(n);
        f.terms_.emplace(1u << g, Coeff(1));
        return f;
    }
    static int check_range(int alpha, int n) {
        if (alpha < 1 || alpha > n) throw std::invalid_argument("Form: generator index out of range");
        return alpha;
    }
    static void check_same(const Form& a, const Form& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("Form: dimension mismatch");
    }

    int n_;
    std::map<uint32_t, Coeff> terms_;
};

}  // namespace pherm::exterior
