#pragma once

#include "pherm/exterior/form.hpp"
#include "pherm/tensorlang/expr.hpp"

#include <functional>

namespace pherm::tensorlang {

/// Evaluation map onto a concrete frame of dimension n with the Levi form
/// equal to the identity. Raising and lowering flips are transparent then,
/// so values are looked up by the bare index tuple (1-based).
struct ConcreteMap {
    int n = 2;
    /// Value of a grade-0 atom instance at an index assignment.
    std::function<symkernel::ScalarExpr(const AtomInst&, const std::vector<int>&)> atom_value;
    /// Value of a grade-1 atom instance (a one-form over 2n+1 generators).
    std::function<exterior::Form<symkernel::ScalarExpr>(const AtomInst&, const std::vector<int>&)> form_value;
    /// Concrete values of the coefficient symbols; the dimension symbol is
    /// specialized to n first.
    std::map<int, symkernel::ScalarExpr> symbol_values;
};

/// Evaluates a tensor expression by brute-force index enumeration: every
/// dummy pair is summed over 1..n and the named free indices take the values
/// in `frees`. Grade-1 atoms multiply in word order.
exterior::Form<symkernel::ScalarExpr> eval_concrete(const TensorExpr& e, const ConcreteMap& m,
                                                    const std::map<std::string, int>& frees = {});

/// Built-in map for an identity-frame Levi form trio; extend via the fields.
ConcreteMap levi_identity_map(const AlgebraPtr& alg, int n);

}  // namespace pherm::tensorlang
