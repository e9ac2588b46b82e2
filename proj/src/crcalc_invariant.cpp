#include "pherm/crcalc/invariant_poly.hpp"

#include "pherm/symkernel/intpoly.hpp"

#include <algorithm>
#include <numeric>

namespace pherm::crcalc {

using symkernel::BigInt;
using symkernel::IntPoly;

int sigma_weight(const Sigma& s) {
    int w = 0;
    for (size_t k = 0; k < s.size(); ++k) w += static_cast<int>(k + 1) * s[k];
    return w;
}

bool is_admissible(const Sigma& s) {
    if (s.empty()) return false;
    for (int x : s)
        if (x < 0) return false;
    return sigma_weight(s) == static_cast<int>(s.size());
}

std::vector<Sigma> admissible_sigmas(int n) {
    std::vector<Sigma> out;
    Sigma cur(static_cast<size_t>(n), 0);
    // Enumerates partitions of n by largest part first.
    std::function<void(int, int)> rec = [&](int rem, int max_part) {
        if (rem == 0) {
            out.push_back(cur);
            return;
        }
        for (int k = std::min(rem, max_part); k >= 1; --k) {
            ++cur[static_cast<size_t>(k - 1)];
            rec(rem - k, k);
            --cur[static_cast<size_t>(k - 1)];
        }
    };
    rec(n, n);
    return out;
}

std::string sigma_str(const Sigma& s) {
    std::string r = "(";
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) r += ",";
        r += std::to_string(s[i]);
    }
    return r + ")";
}

std::vector<std::vector<int>> all_perms(int n) {
    std::vector<int> p(static_cast<size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do out.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    return out;
}

std::vector<std::vector<int>> cycles_of(const std::vector<int>& perm) {
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(perm.size(), false);
    for (size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = static_cast<int>(i);
        while (!seen[static_cast<size_t>(j)]) {
            seen[static_cast<size_t>(j)] = true;
            cyc.push_back(j);
            j = perm[static_cast<size_t>(j)];
        }
        cycles.push_back(std::move(cyc));
    }
    return cycles;
}

int perm_sign(const std::vector<int>& perm) {
    int flips = 0;
    for (const auto& cyc : cycles_of(perm)) flips += static_cast<int>(cyc.size()) - 1;
    return flips % 2 ? -1 : 1;
}

Sigma cycle_type_of(const std::vector<int>& perm) {
    Sigma s(perm.size(), 0);
    for (const auto& cyc : cycles_of(perm)) ++s[cyc.size() - 1];
    return s;
}

std::vector<int> cycle_type_representative(const Sigma& s) {
    int n = static_cast<int>(s.size());
    std::vector<int> p(static_cast<size_t>(n));
    int pos = 0;
    for (int k = 1; k <= n; ++k)
        for (int c = 0; c < s[static_cast<size_t>(k - 1)]; ++c) {
            for (int t = 0; t < k - 1; ++t) p[static_cast<size_t>(pos + t)] = pos + t + 1;
            p[static_cast<size_t>(pos + k - 1)] = pos;
            pos += k;
        }
    return p;
}

std::vector<std::vector<int>> perms_with_cycle_type(const Sigma& s) {
    std::vector<std::vector<int>> out;
    for (auto& p : all_perms(static_cast<int>(s.size())))
        if (cycle_type_of(p) == s) out.push_back(std::move(p));
    return out;
}

Rational cycle_class_size(const Sigma& s) {
    BigInt num = 1;
    for (int v = 2; v <= static_cast<int>(s.size()); ++v) num *= v;
    BigInt den = 1;
    for (size_t k = 0; k < s.size(); ++k) {
        for (int c = 0; c < s[k]; ++c) den *= BigInt(k + 1);
        for (int c = 2; c <= s[k]; ++c) den *= c;
    }
    return {num, den};
}

Rational p_factor(const Sigma& s, int n) {
    Rational r(1);
    for (size_t k = 2; k <= s.size(); ++k) {
        BigInt nk = 1;
        for (size_t t = 0; t < k; ++t) nk *= -n;
        Rational base = Rational(n) + Rational(nk);
        r *= base.pow(s[k - 1]);
    }
    return r;
}

DimRational p_factor_poly(const Sigma& s) {
    DimRational r(1);
    DimRational n = DimRational::var();
    for (size_t k = 2; k <= s.size(); ++k) {
        DimRational minus_n_k(1);
        for (size_t t = 0; t < k; ++t) minus_n_k *= -n;
        r *= (n + minus_n_k).pow(s[k - 1]);
    }
    return r;
}

Tensor4<CRational> random_curvature_tensor(int n, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 4);
    Tensor4<CRational> t(n);
    for (auto& x : t.v)
        x = CRational(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
    // Symmetrize in both slot pairs, then hermitianize: the lowered-index
    // picture is T_{a b' c d'} with exchanges (a c) and (b' d'), and
    // hermiticity T_{a b' c d'} = conj T_{b a' d c'}. With the identity
    // Levi form the mixed-position array carries the same constraints.
    Tensor4<CRational> u(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    CRational avg = (t.at(a, b, c, d) + t.at(c, b, a, d) + t.at(a, d, c, b) +
                                     t.at(c, d, a, b)) *
                                    CRational(Rational(1, 4));
                    u.at(a, b, c, d) = avg;
                }
    Tensor4<CRational> out(n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d)
                    out.at(a, b, c, d) = (u.at(a, b, c, d) + u.at(b, a, d, c).conj()) *
                                         CRational(Rational(1, 2));
    return out;
}

Tensor4<CRational> pure_trace_tensor(int n) {
    Tensor4<CRational> t(n);
    for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) t.at(a, a, c, c) = CRational(1);
    return t;
}

}  // namespace pherm::crcalc
