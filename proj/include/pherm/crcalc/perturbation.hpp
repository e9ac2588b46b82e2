#pragma once

#include "pherm/crcalc/report.hpp"
#include "pherm/tensorlang/expr.hpp"

namespace pherm::crcalc {

/// Symbolic frame data for the one-parameter family of hypersurfaces that
/// flattens a round sphere in one complex direction to fourth order. At the
/// unperturbed sphere the curvature and torsion rates of change reduce to
/// polynomials in the gradient w_al of the flattened coordinate w, its
/// conjugate, and the scalar c = -(1/(n+1)) w_g wbar^g.
struct PerturbationContext {
    symkernel::SymbolTablePtr table;
    tensorlang::AlgebraPtr alg;
    int w = -1, wb = -1, c = -1;  // symbol ids

    tensorlang::TensorExpr Sdot;  // rate of the curvature tensor, slots al bb g sb
    tensorlang::TensorExpr Vdot;  // rate of the torsion-derivative tensor, slots al bb g

    tensorlang::TensorExpr Cdot;  // curvature rate as an endo-valued two-form
    tensorlang::TensorExpr Vcal;  // torsion rate as an endo-valued one-form

    tensorlang::TensorExpr W, Psi, M, Pcal;  // endo-valued building blocks
    tensorlang::TensorExpr dtheta;           // i theta^g theta_g
    tensorlang::TensorExpr pw, pwb;          // w_g theta^g and its conjugate

    symkernel::ScalarExpr w_sym, wb_sym, c_sym;
};

PerturbationContext make_perturbation_context();

/// Closed forms for iterated products, k >= 1. Terms whose net power of
/// dtheta would be negative are dropped; that convention is part of the
/// displays.
tensorlang::TensorExpr psi_plus_m_power_display(const PerturbationContext& ctx, int k);
tensorlang::TensorExpr pcal_power_display(const PerturbationContext& ctx, int k);
tensorlang::TensorExpr cdot_power_display(const PerturbationContext& ctx, int k);
tensorlang::TensorExpr cdot_power_trace_display(const PerturbationContext& ctx, int k);
tensorlang::TensorExpr cdot_vcal_trace_display(const PerturbationContext& ctx, int k);

/// Structural identities: the factored forms of Cdot and Vcal, curvature
/// symmetries and trace freedom of Sdot, and the divergence identity
/// linking Sdot to Vdot.
SuiteResult perturbation_structure_suite();

/// Pairwise products and traces of the building blocks W, Psi, M.
SuiteResult perturbation_product_suite();

/// The five closed-form power families for k = 1 .. k_max.
SuiteResult perturbation_power_suite(int k_max);

}  // namespace pherm::crcalc
