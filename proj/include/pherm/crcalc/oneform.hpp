#pragma once

#include <utility>
#include <vector>

#include "pherm/crcalc/char_pairing.hpp"
#include "pherm/crcalc/perturbation.hpp"
#include "pherm/crcalc/report.hpp"
#include "pherm/tensorlang/bridge.hpp"

namespace pherm::crcalc {

/// Concrete evaluation frame at a fixed dimension n for the sphere
/// perturbation expressions. The gradient components of the perturbing
/// function become generic paired symbols a_g (conjugate b_g), the scalar
/// invariant c evaluates to -(1/(n+1)) sum_g a_g b_g, and the admissible
/// coframe generators become Grassmann generators, so that identities proved
/// here hold for an arbitrary perturbing function.
struct GradientFrame {
    int n = 0;
    symkernel::SymbolTablePtr coeffs;
    std::vector<int> a_ids;
    int w_id = -1;
    int wb_id = -1;
    tensorlang::ConcreteMap map;
    symkernel::ScalarExpr c_val;
    symkernel::ScalarExpr w_val;
    symkernel::ScalarExpr wb_val;
    exterior::Form<symkernel::ScalarExpr> dtheta{1};
    exterior::Form<symkernel::ScalarExpr> pw{1};
    exterior::Form<symkernel::ScalarExpr> pwb{1};

    /// Gradient symbol a_g and its conjugate b_g, 1-based.
    symkernel::ScalarExpr a(int g) const;
    symkernel::ScalarExpr b(int g) const;
};

GradientFrame make_gradient_frame(const PerturbationContext& ctx, int n);

/// Evaluates an endomorphism-valued expression with free indices "al" (lower)
/// and "be" (upper) to a concrete matrix of forms, rows indexed by "al".
exterior::EndoFormMatrix<symkernel::ScalarExpr> bridge_endo(const tensorlang::TensorExpr& e,
                                                            const GradientFrame& fr);

/// The leading rate of the divergence of the distinguished one-form at the
/// round sphere, as an exact polynomial in the scalar invariant c at concrete
/// dimension n. Lives on the perturbation context's symbol table.
symkernel::ScalarExpr divergence_rate_polynomial(const PerturbationContext& ctx, int n,
                                                 const Sigma& sigma);

/// Verifies the endpoint identities for the leading rate of the
/// distinguished one-form along sphere perturbations: the invariant of the
/// curvature rate, the gradient of the scalar invariant, the mixed pairing
/// against the torsion rate, the assembled one-form rate, and its divergence,
/// each against its closed form at the given concrete dimensions.
SuiteResult oneform_rate_suite(const std::vector<std::pair<int, Sigma>>& targets);

}  // namespace pherm::crcalc
