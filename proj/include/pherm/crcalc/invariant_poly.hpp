#pragma once

#include "pherm/symkernel/crational.hpp"
#include "pherm/symkernel/dimrational.hpp"

#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace pherm::crcalc {

using symkernel::CRational;
using symkernel::DimRational;
using symkernel::Rational;

/// Exponent vector of an invariant trace monomial: sigma[k-1] copies of the
/// k-th trace power. Admissible means every entry is nonnegative and the
/// weight sum_k k*sigma[k-1] equals the length n.
using Sigma = std::vector<int>;

int sigma_weight(const Sigma& s);
bool is_admissible(const Sigma& s);
std::vector<Sigma> admissible_sigmas(int n);
std::string sigma_str(const Sigma& s);

/// Permutations of {0..n-1} in image form.
std::vector<std::vector<int>> all_perms(int n);
int perm_sign(const std::vector<int>& perm);
std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm);
Sigma cycle_type_of(const std::vector<int>& perm);
std::vector<int> cycle_type_representative(const Sigma& s);
std::vector<std::vector<int>> perms_with_cycle_type(const Sigma& s);
/// n! / prod_k k^{sigma_k} sigma_k!, the size of the conjugacy class.
Rational cycle_class_size(const Sigma& s);

/// prod_{k>=2} (n + (-n)^k)^{sigma_k} at a concrete dimension.
Rational p_factor(const Sigma& s, int n);
/// Same product with the dimension left symbolic.
DimRational p_factor_poly(const Sigma& s);

/// Rank-4 array in dimension n with the fixed slot roles lower, upper,
/// lower, upper: at(p,q,r,s) = T_p{}^q{}_r{}^s. Entries are any ring type.
template <typename R>
struct Tensor4 {
    int n = 0;
    std::vector<R> v;

    explicit Tensor4(int n_) : n(n_), v(static_cast<size_t>(n_) * n_ * n_ * n_, R(0)) {}

    R& at(int p, int q, int r, int s) { return v[idx(p, q, r, s)]; }
    const R& at(int p, int q, int r, int s) const { return v[idx(p, q, r, s)]; }

    size_t idx(int p, int q, int r, int s) const {
        return ((static_cast<size_t>(p) * n + q) * n + r) * n + s;
    }
};

namespace detail {

template <typename R>
using RMat = std::vector<std::vector<R>>;

template <typename R>
RMat<R> rmat_zero(int n, const R& zero) {
    return RMat<R>(static_cast<size_t>(n), std::vector<R>(static_cast<size_t>(n), zero));
}

template <typename R>
RMat<R> rmat_mul(const RMat<R>& a, const RMat<R>& b, const R& zero) {
    int n = static_cast<int>(a.size());
    RMat<R> c = rmat_zero(n, zero);
    for (int i = 0; i < n; ++i)
        for (int g = 0; g < n; ++g)
            for (int j = 0; j < n; ++j) c[i][j] += a[i][g] * b[g][j];
    return c;
}

template <typename R>
R rmat_trace(const RMat<R>& a, const R& zero) {
    R t = zero;
    for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

/// Advances a mixed-radix odometer over n^len tuples; false when exhausted.
inline bool next_tuple(std::vector<int>& t, int n) {
    for (size_t i = 0; i < t.size(); ++i) {
        if (++t[i] < n) return true;
        t[i] = 0;
    }
    return false;
}

inline std::vector<int> inverse_perm(const std::vector<int>& p) {
    std::vector<int> inv(p.size());
    for (size_t i = 0; i < p.size(); ++i) inv[static_cast<size_t>(p[i])] = static_cast<int>(i);
    return inv;
}

}  // namespace detail

/// Multilinear invariant pairing: the cycle-type average of permutation
/// tensors contracted against one matrix per slot,
///   (1/|C|) sum_{pi in C(sigma)} sum m(0)_{b_0}{}^{b_{pi(0)}} ... .
/// Reduces to a product of traces of matrix chains along each cycle. The
/// slot s matrix entry is entry(s, row, col) with row the lower index.
template <typename R>
R phi_pairing(int n, const Sigma& sigma, const std::function<R(int, int, int)>& entry, const R& zero,
              const std::function<R(const R&, const Rational&)>& scale) {
    if (static_cast<int>(sigma.size()) != n || !is_admissible(sigma))
        throw std::invalid_argument("phi_pairing: inadmissible exponent vector");
    auto perms = perms_with_cycle_type(sigma);
    R total = zero;
    for (const auto& pi : perms) {
        R term = zero;
        bool first_cycle = true;
        for (const auto& cyc : cycles_of(pi)) {
            detail::RMat<R> chain = detail::rmat_zero(n, zero);
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) chain[r][c] = entry(cyc[0], r, c);
            for (size_t t = 1; t < cyc.size(); ++t) {
                detail::RMat<R> m = detail::rmat_zero(n, zero);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) m[r][c] = entry(cyc[t], r, c);
                chain = detail::rmat_mul(chain, m, zero);
            }
            R tr = detail::rmat_trace(chain, zero);
            term = first_cycle ? tr : term * tr;
            first_cycle = false;
        }
        total += term;
    }
    Rational inv_class = Rational(1) / cycle_class_size(sigma);
    return scale(total, inv_class);
}

/// Full invariant contraction c_Phi(S): the antisymmetrized pairing of n
/// copies of S against the trace-monomial projector, computed with one
/// representative permutation per cycle type (the summed relabeling makes
/// every class member contribute equally).
template <typename R>
R c_phi(const Tensor4<R>& S, const Sigma& sigma) {
    int n = S.n;
    if (static_cast<int>(sigma.size()) != n || !is_admissible(sigma))
        throw std::invalid_argument("c_phi: inadmissible exponent vector");
    auto pi = cycle_type_representative(sigma);
    auto cycles = cycles_of(pi);
    R total(0);
    for (const auto& sg : all_perms(n)) {
        auto sg_inv = detail::inverse_perm(sg);
        R sgn(perm_sign(sg));
        std::vector<int> alpha(static_cast<size_t>(n), 0);
        do {
            // beta_j = alpha_{sg^{-1}(j)}; the mu sum factorizes over the
            // cycles of pi into traces of matrix chains.
            R prod = sgn;
            for (const auto& cyc : cycles) {
                detail::RMat<R> chain = detail::rmat_zero(n, R(0));
                int j0 = cyc[0];
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) chain[r][c] = S.at(alpha[static_cast<size_t>(sg_inv[static_cast<size_t>(j0)])], alpha[static_cast<size_t>(j0)], r, c);
                for (size_t t = 1; t < cyc.size(); ++t) {
                    int j = cyc[t];
                    detail::RMat<R> m = detail::rmat_zero(n, R(0));
                    for (int r = 0; r < n; ++r)
                        for (int c = 0; c < n; ++c) m[r][c] = S.at(alpha[static_cast<size_t>(sg_inv[static_cast<size_t>(j)])], alpha[static_cast<size_t>(j)], r, c);
                    chain = detail::rmat_mul(chain, m, R(0));
                }
                prod = prod * detail::rmat_trace(chain, R(0));
            }
            total += prod;
        } while (detail::next_tuple(alpha, n));
    }
    return total;
}

/// Definitional c_Phi(S): averages over the whole conjugacy class and
/// enumerates every index tuple. Slow; kept as the oracle for c_phi.
template <typename R>
R c_phi_class_average(const Tensor4<R>& S, const Sigma& sigma,
                      const std::function<R(const R&, const Rational&)>& scale) {
    int n = S.n;
    auto perms = perms_with_cycle_type(sigma);
    R total(0);
    for (const auto& pi : perms) {
        auto pi_inv = detail::inverse_perm(pi);
        for (const auto& sg : all_perms(n)) {
            auto sg_inv = detail::inverse_perm(sg);
            R sgn(perm_sign(sg));
            std::vector<int> alpha(static_cast<size_t>(n), 0);
            do {
                std::vector<int> mu(static_cast<size_t>(n), 0);
                do {
                    R prod = sgn;
                    for (int j = 0; j < n; ++j)
                        prod = prod * S.at(alpha[static_cast<size_t>(sg_inv[static_cast<size_t>(j)])], alpha[static_cast<size_t>(j)],
                                           mu[static_cast<size_t>(pi_inv[static_cast<size_t>(j)])], mu[static_cast<size_t>(j)]);
                    total += prod;
                } while (detail::next_tuple(mu, n));
            } while (detail::next_tuple(alpha, n));
        }
    }
    return scale(total, Rational(1) / cycle_class_size(sigma));
}

/// One-slot-opened contraction (S^Phi)_a{}^b{}_m{}^nu: the same pairing with
/// n-1 copies of S and the first slot of both projectors left free. Uses the
/// full class average since the free slot pins a projector leg.
template <typename R>
Tensor4<R> s_phi(const Tensor4<R>& S, const Sigma& sigma,
                 const std::function<R(const R&, const Rational&)>& scale) {
    int n = S.n;
    if (static_cast<int>(sigma.size()) != n || !is_admissible(sigma))
        throw std::invalid_argument("s_phi: inadmissible exponent vector");
    auto perms = perms_with_cycle_type(sigma);
    Rational inv_class = Rational(1) / cycle_class_size(sigma);
    Tensor4<R> out(n);
    for (const auto& pi : perms) {
        auto pi_inv = detail::inverse_perm(pi);
        for (const auto& sg : all_perms(n)) {
            auto sg_inv = detail::inverse_perm(sg);
            R sgn(perm_sign(sg));
            std::vector<int> a(static_cast<size_t>(n), 0);  // a[0] = free alpha
            do {
                std::vector<int> m(static_cast<size_t>(n), 0);  // m[0] = free mu
                do {
                    R prod = sgn;
                    for (int j = 1; j < n; ++j)
                        prod = prod * S.at(a[static_cast<size_t>(sg_inv[static_cast<size_t>(j)])], a[static_cast<size_t>(j)],
                                           m[static_cast<size_t>(pi_inv[static_cast<size_t>(j)])], m[static_cast<size_t>(j)]);
                    int beta = a[static_cast<size_t>(sg_inv[0])];
                    int nu = m[static_cast<size_t>(pi_inv[0])];
                    out.at(a[0], beta, m[0], nu) += prod;
                } while (detail::next_tuple(m, n));
            } while (detail::next_tuple(a, n));
        }
    }
    for (auto& x : out.v) x = scale(x, inv_class);
    return out;
}

/// Overdetermined contraction (U^Phi)_a{}^b: n+1 antisymmetrized indices in
/// dimension n against n copies of S; vanishes identically for tensors with
/// the curvature pair symmetry. Computed honestly from the signed
/// permutation expansion with one representative projector permutation.
template <typename R>
std::vector<std::vector<R>> u_phi(const Tensor4<R>& S, const Sigma& sigma) {
    int n = S.n;
    if (static_cast<int>(sigma.size()) != n || !is_admissible(sigma))
        throw std::invalid_argument("u_phi: inadmissible exponent vector");
    auto pi = cycle_type_representative(sigma);
    auto pi_inv = detail::inverse_perm(pi);
    std::vector<std::vector<R>> out(static_cast<size_t>(n), std::vector<R>(static_cast<size_t>(n), R(0)));
    for (const auto& sg : all_perms(n + 1)) {
        auto sg_inv = detail::inverse_perm(sg);
        R sgn(perm_sign(sg));
        std::vector<int> a(static_cast<size_t>(n) + 1, 0);  // a[0] = free alpha
        do {
            std::vector<int> mu(static_cast<size_t>(n), 0);
            do {
                R prod = sgn;
                for (int j = 1; j <= n; ++j)
                    prod = prod * S.at(a[static_cast<size_t>(sg_inv[static_cast<size_t>(j)])], a[static_cast<size_t>(j)],
                                       mu[static_cast<size_t>(pi_inv[static_cast<size_t>(j - 1)])], mu[static_cast<size_t>(j - 1)]);
                int beta = a[static_cast<size_t>(sg_inv[0])];
                out[static_cast<size_t>(a[0])][static_cast<size_t>(beta)] += prod;
            } while (detail::next_tuple(mu, n));
        } while (detail::next_tuple(a, n));
    }
    return out;
}

/// u_phi with the full class average instead of a representative; oracle.
template <typename R>
std::vector<std::vector<R>> u_phi_class_average(const Tensor4<R>& S, const Sigma& sigma,
                                                const std::function<R(const R&, const Rational&)>& scale) {
    int n = S.n;
    auto perms = perms_with_cycle_type(sigma);
    Rational inv_class = Rational(1) / cycle_class_size(sigma);
    std::vector<std::vector<R>> out(static_cast<size_t>(n), std::vector<R>(static_cast<size_t>(n), R(0)));
    for (const auto& pi : perms) {
        auto pi_inv = detail::inverse_perm(pi);
        for (const auto& sg : all_perms(n + 1)) {
            auto sg_inv = detail::inverse_perm(sg);
            R sgn(perm_sign(sg));
            std::vector<int> a(static_cast<size_t>(n) + 1, 0);
            do {
                std::vector<int> mu(static_cast<size_t>(n), 0);
                do {
                    R prod = sgn;
                    for (int j = 1; j <= n; ++j)
                        prod = prod * S.at(a[static_cast<size_t>(sg_inv[static_cast<size_t>(j)])], a[static_cast<size_t>(j)],
                                           mu[static_cast<size_t>(pi_inv[static_cast<size_t>(j - 1)])], mu[static_cast<size_t>(j - 1)]);
                    int beta = a[static_cast<size_t>(sg_inv[0])];
                    out[static_cast<size_t>(a[0])][static_cast<size_t>(beta)] += prod;
                } while (detail::next_tuple(mu, n));
            } while (detail::next_tuple(a, n));
        }
    }
    for (auto& row : out)
        for (auto& x : row) x = scale(x, inv_class);
    return out;
}

/// Random tensor with the curvature symmetries relative to the identity
/// Levi form: pair exchange in both slot pairs plus hermiticity. Trace
/// freedom is not imposed. Entries are small Gaussian rationals.
Tensor4<CRational> random_curvature_tensor(int n, std::mt19937& rng);

/// Pure trace tensor h(x)h: at(p,q,r,s) = delta_pq delta_rs.
Tensor4<CRational> pure_trace_tensor(int n);

inline CRational scale_crational(const CRational& x, const Rational& q) {
    return x * CRational(q);
}

}  // namespace pherm::crcalc
