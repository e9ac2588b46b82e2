#pragma once

#include "pherm/tensorlang/expr.hpp"

namespace pherm::tensorlang {

/// Endomorphism-valued expressions: one lower free index "al" and one upper
/// free index "be". Scalars (no frees) act diagonally where meaningful.

/// (A B)_al{}^be = A_al{}^g B_g{}^be.
inline TensorExpr endo_mul(const TensorExpr& a, const TensorExpr& b) {
    TensorExpr left = a.rename_frees({{"be", "zz1"}});
    TensorExpr right = b.rename_frees({{"al", "zz2"}});
    return (left * right).contract("zz1", "zz2");
}

/// A_g{}^g.
inline TensorExpr endo_trace(const TensorExpr& a) {
    TensorExpr t = a.rename_frees({{"al", "zz1"}, {"be", "zz2"}});
    return t.contract("zz2", "zz1");
}

/// Iterated endo_mul; keeps intermediates reduced between factors.
inline TensorExpr endo_pow(const TensorExpr& a, int k) {
    if (k < 1) throw std::invalid_argument("endo_pow: exponent must be >= 1");
    TensorExpr r = a;
    for (int t = 1; t < k; ++t) r = endo_mul(r, a);
    return r;
}

}  // namespace pherm::tensorlang
