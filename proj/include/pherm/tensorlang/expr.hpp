#pragma once

#include "pherm/tensorlang/algebra.hpp"

#include <optional>
#include <random>

namespace pherm::tensorlang {

/// One canonical term: scalar coefficient times a multiset of grade-0 atoms
/// and an ordered word of grade-1 atoms (the vector order of grade-1 entries
/// is the anticommuting word order).
struct TensorTerm {
    symkernel::ScalarExpr coeff;
    std::vector<AtomInst> atoms;
};

/// Sum of tensor terms over one algebra with a common free-index signature.
/// Every mutating operation renormalizes: substitution atoms (Levi form,
/// Kronecker deltas) are absorbed, registered contraction and coefficient
/// rules are applied to a fixpoint, and each term is brought to its canonical
/// atom order with dummies renamed; like terms collect, zero terms drop.
class TensorExpr {
public:
    TensorExpr() = default;

    static TensorExpr zero(AlgebraPtr alg);
    static TensorExpr scalar(AlgebraPtr alg, symkernel::ScalarExpr c);
    /// Atom with named free indices; flips bit i presents slot i raised or
    /// lowered through the Levi form.
    static TensorExpr atom(AlgebraPtr alg, const std::string& name, const std::vector<std::string>& labels,
                           uint32_t flips = 0);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::map<std::string, SlotType>& frees() const { return frees_; }
    const std::vector<TensorTerm>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    TensorExpr operator-() const;
    friend TensorExpr operator+(const TensorExpr& a, const TensorExpr& b);
    friend TensorExpr operator-(const TensorExpr& a, const TensorExpr& b);
    /// Juxtaposition product; free names must be disjoint, grade-1 words concatenate.
    friend TensorExpr operator*(const TensorExpr& a, const TensorExpr& b);
    friend TensorExpr operator*(const symkernel::ScalarExpr& c, const TensorExpr& e);
    TensorExpr& operator+=(const TensorExpr& o) { return *this = *this + o; }
    TensorExpr& operator-=(const TensorExpr& o) { return *this = *this - o; }
    TensorExpr& operator*=(const TensorExpr& o) { return *this = *this * o; }

    /// Structural equality of canonical forms (semantic equality modulo the
    /// registered rules).
    friend bool operator==(const TensorExpr& a, const TensorExpr& b);
    friend bool operator!=(const TensorExpr& a, const TensorExpr& b) { return !(a == b); }

    /// Contract two free indices (one up, one down, same kind as presented).
    TensorExpr contract(const std::string& a, const std::string& b) const;
    /// Raise or lower a free index through the Levi form.
    TensorExpr flip_free(const std::string& name) const;
    TensorExpr rename_frees(const std::map<std::string, std::string>& m) const;
    TensorExpr conj() const;

    /// Covariant derivative with a new free slot: dir Hol gives a lowered
    /// holomorphic slot, AntiHol a lowered antiholomorphic one. Every atom and
    /// non-constant symbol must carry a registered derivative rule.
    TensorExpr derive(Kind dir, const std::string& new_name) const;

    /// Full scalar value of an expression with no atoms and no free indices.
    symkernel::ScalarExpr scalar_value() const;

    /// Re-runs normalization applying eligible rewrites in an order driven by
    /// rng; the canonical result must be identical (used by confluence tests).
    TensorExpr renormalize_shuffled(std::mt19937& rng) const;

    std::string str() const;

private:
    friend class TensorOps;
    void normalize(std::mt19937* rng = nullptr);
    void set_frees_from_terms();

    AlgebraPtr alg_;
    std::map<std::string, SlotType> frees_;
    std::vector<TensorTerm> terms_;
};

/// Generalized Kronecker contraction expanded into k! signed delta products.
/// lower[i]/upper[i] name the free slots (hol_ and hol^ presentations).
TensorExpr gen_kronecker_expand(const AlgebraPtr& alg, const std::vector<std::string>& lower,
                                const std::vector<std::string>& upper);

/// Trace-free part of a four-index tensor u(a, bb, g, sb) with slot types
/// (hol_, antihol_, hol_, antihol_). The input is symmetrized over the two
/// pair swaps first (identity on the intended domain), after which every
/// single Levi trace of the result vanishes identically.
TensorExpr tf4(const TensorExpr& u, const std::string& a, const std::string& bb, const std::string& g,
               const std::string& sb);

/// Trace-free part of a three-index tensor u(a, bb, g) with slot types
/// (hol_, antihol_, hol_); symmetrized over a<->g first.
TensorExpr tf3(const TensorExpr& u, const std::string& a, const std::string& bb, const std::string& g);

}  // namespace pherm::tensorlang
