#pragma once

#include "pherm/exterior/form.hpp"

#include <vector>

namespace pherm::exterior {

/// n x n matrix of forms, e.g. a curvature- or connection-like object
/// Q_alpha{}^beta with form entries. Row index = lower slot, column = upper.
/// Entries are expected to share one grade; products then have well defined
/// grade and the trace commutes cyclically up to the graded sign.
template <typename Coeff>
class EndoFormMatrix {
public:
    explicit EndoFormMatrix(int n) : n_(n), e_(static_cast<size_t>(n) * n, Form<Coeff>(n)) {}

    int n() const { return n_; }

    Form<Coeff>& at(int row, int col) { return e_[idx(row, col)]; }
    const Form<Coeff>& at(int row, int col) const { return e_[idx(row, col)]; }

    bool is_zero() const {
        for (const auto& f : e_)
            if (!f.is_zero()) return false;
        return true;
    }

    /// Common grade of all nonzero entries; -1 if the matrix is zero.
    int grade() const {
        int g = -1;
        for (const auto& f : e_) {
            if (f.is_zero()) continue;
            int gf = f.grade();
            if (g < 0)
                g = gf;
            else if (g != gf)
                throw std::logic_error("EndoFormMatrix::grade: mixed entry grades");
        }
        return g;
    }

    EndoFormMatrix operator-() const {
        EndoFormMatrix r(n_);
        for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = -e_[i];
        return r;
    }
    friend EndoFormMatrix operator+(const EndoFormMatrix& a, const EndoFormMatrix& b) {
        check_same(a, b);
        EndoFormMatrix r(a.n_);
        for (size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }
    friend EndoFormMatrix operator-(const EndoFormMatrix& a, const EndoFormMatrix& b) { return a + (-b); }

    friend EndoFormMatrix operator*(const Form<Coeff>& s, const EndoFormMatrix& m) {
        EndoFormMatrix r(m.n_);
        for (size_t i = 0; i < m.e_.size(); ++i) r.e_[i] = s * m.e_[i];
        return r;
    }

    friend bool operator==(const EndoFormMatrix& a, const EndoFormMatrix& b) {
        check_same(a, b);
        return a.e_ == b.e_;
    }
    friend bool operator!=(const EndoFormMatrix& a, const EndoFormMatrix& b) { return !(a == b); }

    /// (A B)_row{}^col = sum_g A_row{}^g ^ B_g{}^col.
    friend EndoFormMatrix mat_mul(const EndoFormMatrix& a, const EndoFormMatrix& b) {
        check_same(a, b);
        EndoFormMatrix r(a.n_);
        for (int i = 0; i < a.n_; ++i)
            for (int j = 0; j < a.n_; ++j) {
                Form<Coeff> acc(a.n_);
                for (int g = 0; g < a.n_; ++g) acc += a.at(i, g) * b.at(g, j);
                r.at(i, j) = acc;
            }
        return r;
    }

    friend EndoFormMatrix mat_power(const EndoFormMatrix& m, int k) {
        if (k < 1) throw std::invalid_argument("mat_power: exponent must be >= 1");
        EndoFormMatrix r = m;
        for (int t = 1; t < k; ++t) r = mat_mul(r, m);
        return r;
    }

    friend Form<Coeff> trace(const EndoFormMatrix& m) {
        Form<Coeff> acc(m.n_);
        for (int i = 0; i < m.n_; ++i) acc += m.at(i, i);
        return acc;
    }

private:
    size_t idx(int row, int col) const {
        if (row < 0 || row >= n_ || col < 0 || col >= n_)
            throw std::out_of_range("EndoFormMatrix: index out of range");
        return static_cast<size_t>(row) * n_ + col;
    }
    static void check_same(const EndoFormMatrix& a, const EndoFormMatrix& b) {
        if (a.n_ != b.n_) throw std::invalid_argument("EndoFormMatrix: dimension mismatch");
    }

    int n_;
    std::vector<Form<Coeff>> e_;
};

/// Characteristic form of an invariant monomial: prod_k (tr M^k)^{sigma_k},
/// sigma given as sigma[k-1] = multiplicity of the k-th trace power.
template <typename Coeff>
Form<Coeff> char_form(const std::vector<int>& sigma, const EndoFormMatrix<Coeff>& m) {
    Form<Coeff> r = Form<Coeff>::scalar(m.n(), Coeff(1));
    for (size_t k = 1; k <= sigma.size(); ++k) {
        int mult = sigma[k - 1];
        if (mult < 0) throw std::invalid_argument("char_form: negative multiplicity");
        if (mult == 0) continue;
        Form<Coeff> tk = trace(mat_power(m, static_cast<int>(k)));
        for (int t = 0; t < mult; ++t) r *= tk;
    }
    return r;
}

}  // namespace pherm::exterior
