#pragma once

#include "pherm/symkernel/dimrational.hpp"
#include "pherm/symkernel/symbols.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace pherm::symkernel {

/// Exponent vector over a symbol table, lexicographically ordered.
using Monomial = std::vector<uint16_t>;

/// Sparse polynomial in the table's symbols with DimComplex coefficients,
/// i.e. an element of Q(n)[i][symbols]. Zero coefficients are never stored,
/// so structural equality is semantic equality.
class ScalarExpr {
public:
    ScalarExpr() = default;
    ScalarExpr(long long c) { set_const(DimComplex(c)); }  // NOLINT: implicit by design
    ScalarExpr(const Rational& c) { set_const(DimComplex(c)); }  // NOLINT
    ScalarExpr(const DimRational& c) { set_const(DimComplex(c)); }  // NOLINT
    ScalarExpr(const DimComplex& c) { set_const(c); }  // NOLINT
    explicit ScalarExpr(SymbolTablePtr table) : table_(std::move(table)) {}

    static ScalarExpr symbol(SymbolTablePtr table, int id, int exp = 1);
    static ScalarExpr symbol(const SymbolTablePtr& table, const std::string& name, int exp = 1);
    static ScalarExpr constant(const DimComplex& c) { return ScalarExpr(c); }
    static ScalarExpr i() { return ScalarExpr(DimComplex::i()); }

    const SymbolTablePtr& table() const { return table_; }
    const std::map<Monomial, DimComplex>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term coefficient (the whole value when is_constant()).
    DimComplex constant_value() const;

    /// Largest total exponent over all monomials; 0 for constants and zero.
    int total_degree() const;
    /// Largest exponent of one symbol.
    int degree_in(int id) const;

    ScalarExpr operator-() const;
    friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
    friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
    ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
    ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
    ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }

    friend bool operator==(const ScalarExpr& a, const ScalarExpr& b);
    friend bool operator!=(const ScalarExpr& a, const ScalarExpr& b) { return !(a == b); }
    /// Deterministic total order for use as a map key.
    friend bool operator<(const ScalarExpr& a, const ScalarExpr& b);

    ScalarExpr pow(int e) const;

    /// Conjugation: coefficients conjugated, symbols mapped through the table's
    /// conjugation involution.
    ScalarExpr conj() const;

    /// Simultaneous substitution symbol id -> expression, then normalization.
    /// Substituted expressions must live on the same table (or be constants).
    ScalarExpr substitute(const std::map<int, ScalarExpr>& rules) const;

    /// Rewrites every occurrence of the product sym_a*sym_b (one power at a
    /// time) to `rep` until no monomial contains both symbols. The caller
    /// guarantees termination by supplying a rep of lower total degree.
    ScalarExpr reduce_pair(int sym_a, int sym_b, const ScalarExpr& rep) const;

    /// Specialize the dimension symbol n to a concrete rational value.
    /// Coefficients become constants; throws where a denominator vanishes.
    ScalarExpr specialize_n(const Rational& n) const;

    /// Exact full evaluation: every symbol must be assigned a constant.
    DimComplex eval_exact(const std::map<int, DimComplex>& values) const;

    /// Floating evaluation at concrete n and complex symbol values.
    std::complex<double> eval_double(double n, const std::map<int, std::complex<double>>& values) const;

    std::string str() const;

private:
    void set_const(const DimComplex& c) {
        if (!c.is_zero()) terms_[Monomial{}] = c;
    }
    void add_term(const Monomial& m, const DimComplex& c);
    /// Unifies tables for a binary op; throws on a genuine mismatch.
    static SymbolTablePtr merge_tables(const ScalarExpr& a, const ScalarExpr& b);
    Monomial sized_key(const Monomial& m) const;

    SymbolTablePtr table_;  // null for pure constants
    std::map<Monomial, DimComplex> terms_;

    friend class TableOps;
};

}  // namespace pherm::symkernel
