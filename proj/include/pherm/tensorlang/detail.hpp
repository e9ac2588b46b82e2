#pragma once

#include "pherm/tensorlang/expr.hpp"

namespace pherm::tensorlang::detail {

/// Full per-term rewrite pipeline: substitution-atom absorption, Levi
/// normalization of dummy pairs, contraction and coefficient rules to a
/// fixpoint, then canonical reordering with dummy renaming. Multiplies signs
/// and factors into t.coeff. Returns false when the term vanishes (zero
/// coefficient, or the canonical search proves a sign conflict). When rng is
/// given, eligible rewrites are applied in a shuffled order (result must not
/// change; exercised by confluence tests).
bool normalize_term(const Algebra& alg, TensorTerm& t, std::mt19937* rng);

/// Serialization of the atom structure (not the coefficient) of a canonical
/// term; equal keys identify like terms.
std::string term_key(const Algebra& alg, const TensorTerm& t);

std::string term_str(const Algebra& alg, const TensorTerm& t);

/// Checks dummy pairing and slot-type compatibility; throws on violation.
void validate_term(const Algebra& alg, const TensorTerm& t);

}  // namespace pherm::tensorlang::detail
