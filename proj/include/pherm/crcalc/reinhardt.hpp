#pragma once

#include <string>
#include <vector>

#include "pherm/crcalc/char_pairing.hpp"
#include "pherm/crcalc/report.hpp"

namespace pherm::crcalc {

/// Exact multiple of a power of pi: coef * pi^pi_pow.
struct PiValue {
    Rational coef;
    int pi_pow = 0;

    PiValue() = default;
    PiValue(Rational c, int p) : coef(std::move(c)), pi_pow(coef.is_zero() ? 0 : p) {}

    double to_double() const;
    std::string str() const;

    friend PiValue operator*(const PiValue& a, const PiValue& b) {
        return PiValue(a.coef * b.coef, a.pi_pow + b.pi_pow);
    }
    friend bool operator==(const PiValue& a, const PiValue& b) {
        return a.coef == b.coef && (a.coef.is_zero() || a.pi_pow == b.pi_pow);
    }
    friend bool operator!=(const PiValue& a, const PiValue& b) { return !(a == b); }
};

/// Volume of the unit n-sphere in R^{n+1}.
PiValue sphere_volume(int n);

/// Base-point data for the homogeneous boundary of the logarithmic tube
/// domain: identity Levi form, torsion -i times the identity, vanishing V
/// and U, parallel curvature. In this frame raised and lowered indices
/// coincide and the conjugate coframe equals its Levi-lowered version.
struct ReinhardtContext {
    int n = 1;
    Rational p_scalar;                                  // trace of the Schouten tensor
    Tensor4<Rational> S{1};                             // curvature, S.at(a,b,g,s)
    std::vector<std::vector<std::vector<Rational>>> V;  // identically zero
    std::vector<std::vector<Rational>> U;               // identically zero
    exterior::Form<symkernel::CRational> dtheta{1};
    exterior::EndoFormMatrix<symkernel::CRational> Sigma{1};
    exterior::EndoFormMatrix<symkernel::CRational> L{1};
    exterior::EndoFormMatrix<symkernel::CRational> Xi{1};
};

ReinhardtContext make_reinhardt_context(int n);

/// Closed forms for the invariant contraction of the curvature and the
/// scalar invariant built from it: prod_k [(n+2)(1-(n+2)^{k-1})]^{sigma_k}
/// scaled by n!/(n+1)^n and -n!/(n+1)^{n+1} respectively.
Rational c_phi_reinhardt_closed(int n, const Sigma& sigma);
Rational i_prime_reinhardt_closed(int n, const Sigma& sigma);

/// The scalar invariant assembled from its definition: the sublaplacian term
/// drops because the curvature is parallel, and the terms quadratic in the
/// torsion-derivative tensors drop because V and U vanish; what remains is
/// -(2/n^2) P c_Phi(S). Throws if the context's V or U is nonzero.
Rational i_prime_assembled(const ReinhardtContext& ctx, const Rational& c_phi_s);

/// Contact volume of the boundary at radius r: n! (pi/r)^{n+1} Vol(S^n(1)).
PiValue contact_volume(int n, const Rational& r);

/// Total invariant: the constant scalar invariant times the contact volume.
/// Two candidate closed forms differ by whether (pi/((n+1)r))^{n+1} or
/// (2pi/((n+1)r))^{n+1} appears; the fundamental-domain volume computation
/// singles one out, and the result records which candidate it equals.
struct TotalReinhardt {
    PiValue exact;
    double value = 0.0;
    PiValue candidate_pi;
    PiValue candidate_2pi;
    std::string variant;  // "pi", "2pi", "both-zero" or "neither"
};

TotalReinhardt total_reinhardt(int n, const Sigma& sigma, const Rational& r);

/// Verifies the homogeneous-model identities at one concrete dimension:
/// torsion square, Sigma/L multiplication table, Xi powers and traces, the
/// invariant contraction by three routes, and the assembled scalar invariant,
/// for every admissible exponent vector.
SuiteResult reinhardt_suite(int n);

/// Verifies the total-invariant chain: contact volume, the closed-form
/// candidates, the r-scaling law, and the concrete endpoint values.
SuiteResult totals_suite(const std::vector<int>& ns);

}  // namespace pherm::crcalc
