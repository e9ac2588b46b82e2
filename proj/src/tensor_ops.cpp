#include "pherm/tensorlang/detail.hpp"
#include "pherm/tensorlang/expr.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace pherm::tensorlang {

using symkernel::DimRational;
using symkernel::IntPoly;
using symkernel::Rational;
using symkernel::ScalarExpr;

namespace {

/// Splices one rule skeleton atom into a concrete term: "%i" labels pull the
/// matched instance's label i (and its flip bit), "%d" becomes the new
/// derivative index, skeleton-local dummies are shifted past the host term's.
AtomInst instantiate_skeleton_atom(const AtomInst& skel, const AtomInst* target, const std::string& new_name,
                                   int dummy_offset) {
    AtomInst out = skel;
    for (size_t s = 0; s < out.labels.size(); ++s) {
        Label& l = out.labels[s];
        if (l.is_dummy()) {
            l.dummy += dummy_offset;
            continue;
        }
        if (l.free.empty() || l.free[0] != '%') continue;
        if (l.free == "%d") {
            l = Label::free_name(new_name);
            continue;
        }
        int i = std::stoi(l.free.substr(1));
        if (!target || i >= static_cast<int>(target->labels.size()))
            throw std::logic_error("derivative rule placeholder out of range");
        l = target->labels[static_cast<size_t>(i)];
        out.flips ^= ((target->flips >> i) & 1u) << s;
    }
    return out;
}

int max_dummy_of(const TensorTerm& t) {
    int m = -1;
    for (const auto& inst : t.atoms)
        for (const auto& l : inst.labels)
            if (l.is_dummy()) m = std::max(m, l.dummy);
    return m;
}

}  // namespace

TensorExpr TensorExpr::derive(Kind dir, const std::string& new_name) const {
    if (frees_.count(new_name))
        throw std::invalid_argument("TensorExpr::derive: index '" + new_name + "' already free");
    TensorExpr r;
    r.alg_ = alg_;
    r.frees_ = frees_;
    r.frees_[new_name] = SlotType{dir, Var::Down};
    for (const auto& t : terms_) {
        int off = max_dummy_of(t) + 1;
        for (size_t ai = 0; ai < t.atoms.size(); ++ai) {
            const AtomInst& target = t.atoms[ai];
            const DerivRule* rule = alg_->atom_derivative(target.def, dir);
            if (!rule)
                throw std::logic_error("TensorExpr::derive: no rule for atom '" + alg_->atom(target.def).name +
                                       "'");
            for (const auto& skel : rule->terms) {
                TensorTerm nt;
                nt.coeff = t.coeff * skel.coeff;
                nt.atoms.assign(t.atoms.begin(), t.atoms.begin() + static_cast<long>(ai));
                for (const auto& sa : skel.atoms)
                    nt.atoms.push_back(instantiate_skeleton_atom(sa, &target, new_name, off));
                nt.atoms.insert(nt.atoms.end(), t.atoms.begin() + static_cast<long>(ai) + 1, t.atoms.end());
                r.terms_.push_back(std::move(nt));
            }
        }
        const auto& table = t.coeff.table();
        for (const auto& [mono, coef] : t.coeff.terms()) {
            for (size_t sid = 0; sid < mono.size(); ++sid) {
                if (mono[sid] == 0) continue;
                int id = static_cast<int>(sid);
                if (alg_->is_constant_symbol(id)) continue;
                const DerivRule* rule = alg_->symbol_derivative(id, dir);
                if (!rule)
                    throw std::logic_error("TensorExpr::derive: no rule for symbol '" + table->name(id) + "'");
                if (rule->terms.empty()) continue;
                ScalarExpr rest = ScalarExpr::constant(coef) * ScalarExpr(static_cast<long long>(mono[sid]));
                for (size_t j = 0; j < mono.size(); ++j) {
                    int e = static_cast<int>(mono[j]) - (j == sid ? 1 : 0);
                    if (e > 0) rest *= ScalarExpr::symbol(table, static_cast<int>(j), e);
                }
                for (const auto& skel : rule->terms) {
                    TensorTerm nt;
                    nt.coeff = rest * skel.coeff;
                    nt.atoms = t.atoms;
                    for (const auto& sa : skel.atoms)
                        nt.atoms.push_back(instantiate_skeleton_atom(sa, nullptr, new_name, off));
                    r.terms_.push_back(std::move(nt));
                }
            }
        }
    }
    r.normalize();
    return r;
}

TensorExpr gen_kronecker_expand(const AlgebraPtr& alg, const std::vector<std::string>& lower,
                                const std::vector<std::string>& upper) {
    if (lower.empty() || lower.size() != upper.size())
        throw std::invalid_argument("gen_kronecker_expand: need equal nonempty label lists");
    if (lower.size() > 6) throw std::invalid_argument("gen_kronecker_expand: order capped at 6");
    const std::string& delta = alg->atom(alg->kronecker()).name;
    size_t k = lower.size();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    TensorExpr sum = TensorExpr::zero(alg);
    do {
        int sign = 1;
        for (size_t i = 0; i < k; ++i)
            for (size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) sign = -sign;
        TensorExpr prod = TensorExpr::scalar(alg, ScalarExpr(sign));
        for (size_t i = 0; i < k; ++i)
            prod *= TensorExpr::atom(alg, delta, {lower[i], upper[static_cast<size_t>(perm[i])]});
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

namespace {

ScalarExpr one_over_n_plus(long long c) {
    return ScalarExpr(DimRational(IntPoly(1), IntPoly::var() + IntPoly(c)));
}

}  // namespace

TensorExpr tf4(const TensorExpr& u, const std::string& a, const std::string& bb, const std::string& g,
               const std::string& sb) {
    const AlgebraPtr& alg = u.algebra();
    const std::string& h = alg->atom(alg->levi()).name;
    auto swap_ag = u.rename_frees({{a, g}, {g, a}});
    auto swap_bs = u.rename_frees({{bb, sb}, {sb, bb}});
    auto swap_both = swap_ag.rename_frees({{bb, sb}, {sb, bb}});
    TensorExpr us = ScalarExpr(Rational(1, 4)) * (u + swap_ag + swap_bs + swap_both);

    TensorExpr T = us.flip_free(sb).contract(g, sb);  // frees a, bb
    TensorExpr T2 = T.flip_free(bb).contract(a, bb);  // no frees

    auto hat = [&](const std::string& x, const std::string& y) { return TensorExpr::atom(alg, h, {x, y}); };
    TensorExpr singles = T * hat(g, sb);
    singles += T.rename_frees({{a, g}}) * hat(a, sb);
    singles += T.rename_frees({{bb, sb}}) * hat(g, bb);
    singles += T.rename_frees({{a, g}, {bb, sb}}) * hat(a, bb);
    TensorExpr doubles = T2 * (hat(a, bb) * hat(g, sb) + hat(a, sb) * hat(g, bb));
    return us - one_over_n_plus(2) * singles +
           (one_over_n_plus(1) * one_over_n_plus(2)) * doubles;
}

TensorExpr tf3(const TensorExpr& u, const std::string& a, const std::string& bb, const std::string& g) {
    const AlgebraPtr& alg = u.algebra();
    const std::string& h = alg->atom(alg->levi()).name;
    auto swap_ag = u.rename_frees({{a, g}, {g, a}});
    TensorExpr us = ScalarExpr(Rational(1, 2)) * (u + swap_ag);
    TensorExpr T = us.flip_free(bb).contract(a, bb);  // free g
    auto hat = [&](const std::string& x, const std::string& y) { return TensorExpr::atom(alg, h, {x, y}); };
    TensorExpr singles = T.rename_frees({{g, a}}) * hat(g, bb) + T * hat(a, bb);
    return us - one_over_n_plus(1) * singles;
}

}  // namespace pherm::tensorlang
