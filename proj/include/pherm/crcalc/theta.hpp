#pragma once

#include "pherm/crcalc/report.hpp"
#include "pherm/tensorlang/expr.hpp"

#include <vector>

namespace pherm::crcalc {

/// Torsion coframe context: the endomorphism-valued one-form
/// Theta_al{}^be = i theta_al tau^be - i tau_al theta^be built from the
/// coframe and a symmetric torsion one-form pair, with the exchange rules
/// theta^g tau_g = 0 and tau^g theta_g = 0.
struct ThetaContext {
    symkernel::SymbolTablePtr table;
    tensorlang::AlgebraPtr alg;
    tensorlang::TensorExpr Theta;     // frees al (lower), be (upper)
    tensorlang::TensorExpr dtheta;    // i theta^g theta_g
    tensorlang::TensorExpr tau_pair;  // tau^g tau_g
};

ThetaContext make_theta_context();

/// Closed form for the k-th wedge power of Theta:
///   odd k = 2s+1:  (-i tau^g tau_g dtheta)^s Theta,
///   even k = 2s:   (-i tau^g tau_g dtheta)^{s-1}
///                  (tau^r tau_r theta_al theta^be - i tau_al tau^be dtheta).
tensorlang::TensorExpr theta_power_display(const ThetaContext& ctx, int k);

/// Verifies endo powers of Theta against the closed form, symbolically for
/// k = 1 .. 2*s_max+1 and concretely over a generic symmetric torsion at
/// each listed dimension.
SuiteResult theta_power_suite(int s_max, const std::vector<int>& concrete_ns);

}  // namespace pherm::crcalc
