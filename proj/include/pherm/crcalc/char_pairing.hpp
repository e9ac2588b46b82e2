#pragma once

#include "pherm/crcalc/invariant_poly.hpp"
#include "pherm/exterior/endo_matrix.hpp"

namespace pherm::crcalc {

/// Invariant contraction of n copies of an endomorphism-valued form along
/// the exponent vector sigma, computed through the class-averaged
/// permutation pairing (the dual route to char_form's product of traces).
template <typename Coeff>
exterior::Form<Coeff> char_pairing(const Sigma& sigma, const exterior::EndoFormMatrix<Coeff>& y) {
    using F = exterior::Form<Coeff>;
    int n = y.n();
    F zero(n);
    std::function<F(int, int, int)> entry = [&](int, int r, int c) { return y.at(r, c); };
    std::function<F(const F&, const Rational&)> scale = [](const F& f, const Rational& q) {
        return Coeff(q) * f;
    };
    return phi_pairing<F>(n, sigma, entry, zero, scale);
}

/// Same pairing with the last slot holding z instead of y. Safe for one odd
/// factor: even-grade entries are central so every chain reordering that the
/// class average performs is sign free.
template <typename Coeff>
exterior::Form<Coeff> char_pairing_mixed(const Sigma& sigma, const exterior::EndoFormMatrix<Coeff>& y,
                                         const exterior::EndoFormMatrix<Coeff>& z) {
    using F = exterior::Form<Coeff>;
    int n = y.n();
    F zero(n);
    std::function<F(int, int, int)> entry = [&](int slot, int r, int c) {
        return slot == n - 1 ? z.at(r, c) : y.at(r, c);
    };
    std::function<F(const F&, const Rational&)> scale = [](const F& f, const Rational& q) {
        return Coeff(q) * f;
    };
    return phi_pairing<F>(n, sigma, entry, zero, scale);
}

/// Trace-product expansion of the mixed pairing,
///   (1/n) sum_k k sigma_k (tr y^k)^{sigma_k-1} (tr y^{k-1} z) prod_{j!=k} (tr y^j)^{sigma_j},
/// the polarization of the product of power traces in its last slot.
template <typename Coeff>
exterior::Form<Coeff> char_pairing_mixed_traces(const Sigma& sigma,
                                                const exterior::EndoFormMatrix<Coeff>& y,
                                                const exterior::EndoFormMatrix<Coeff>& z) {
    using F = exterior::Form<Coeff>;
    int n = y.n();
    F total(n);
    for (int k = 1; k <= n; ++k) {
        int mult = sigma[static_cast<size_t>(k - 1)];
        if (mult < 1) continue;
        F term = F::scalar(n, Coeff(Rational(static_cast<long long>(k) * mult, n)));
        F trk = trace(mat_power(y, k));
        for (int t = 0; t < mult - 1; ++t) term *= trk;
        term *= k == 1 ? trace(z) : trace(mat_mul(mat_power(y, k - 1), z));
        for (int j = 1; j <= n; ++j) {
            if (j == k || sigma[static_cast<size_t>(j - 1)] < 1) continue;
            F trj = trace(mat_power(y, j));
            for (int t = 0; t < sigma[static_cast<size_t>(j - 1)]; ++t) term *= trj;
        }
        total += term;
    }
    return total;
}

}  // namespace pherm::crcalc
