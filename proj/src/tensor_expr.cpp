#include "pherm/tensorlang/detail.hpp"
#include "pherm/tensorlang/expr.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pherm::tensorlang {

using symkernel::ScalarExpr;

TensorExpr TensorExpr::zero(AlgebraPtr alg) {
    TensorExpr e;
    e.alg_ = std::move(alg);
    return e;
}

TensorExpr TensorExpr::scalar(AlgebraPtr alg, ScalarExpr c) {
    TensorExpr e;
    e.alg_ = std::move(alg);
    if (!c.is_zero()) e.terms_.push_back({std::move(c), {}});
    e.normalize();
    return e;
}

TensorExpr TensorExpr::atom(AlgebraPtr alg, const std::string& name, const std::vector<std::string>& labels,
                            uint32_t flips) {
    TensorExpr e;
    e.alg_ = std::move(alg);
    int id = e.alg_->atom_id(name);
    const AtomDef& def = e.alg_->atom(id);
    if (static_cast<int>(labels.size()) != def.arity())
        throw std::invalid_argument("TensorExpr::atom: '" + name + "' expects " + std::to_string(def.arity()) +
                                    " labels");
    if (flips >> def.arity())
        throw std::invalid_argument("TensorExpr::atom: flip mask out of range for '" + name + "'");
    AtomInst inst;
    inst.def = id;
    inst.flips = flips;
    std::set<std::string> seen;
    for (const auto& l : labels) {
        if (!seen.insert(l).second)
            throw std::invalid_argument("TensorExpr::atom: repeated label '" + l + "' (use contract())");
        inst.labels.push_back(Label::free_name(l));
    }
    TensorTerm t;
    t.coeff = ScalarExpr(1);
    t.atoms.push_back(std::move(inst));
    e.terms_.push_back(std::move(t));
    e.set_frees_from_terms();
    e.normalize();
    return e;
}

void TensorExpr::set_frees_from_terms() {
    frees_.clear();
    if (terms_.empty()) return;
    const TensorTerm& t = terms_.front();
    for (const auto& inst : t.atoms)
        for (size_t s = 0; s < inst.labels.size(); ++s)
            if (!inst.labels[s].is_dummy())
                frees_[inst.labels[s].free] = alg_->presented(inst, static_cast<int>(s));
}

void TensorExpr::normalize(std::mt19937* rng) {
    if (!alg_) throw std::logic_error("TensorExpr: no algebra");
    struct Bucket {
        ScalarExpr coeff;
        std::vector<AtomInst> atoms;
    };
    std::map<std::string, Bucket> collected;
    for (auto& t : terms_) {
        TensorTerm tt = std::move(t);
        if (!detail::normalize_term(*alg_, tt, rng)) continue;
        std::string key = detail::term_key(*alg_, tt);
        auto it = collected.find(key);
        if (it == collected.end())
            collected.emplace(key, Bucket{std::move(tt.coeff), std::move(tt.atoms)});
        else
            it->second.coeff += tt.coeff;
    }
    terms_.clear();
    for (auto& [k, b] : collected)
        if (!b.coeff.is_zero()) terms_.push_back({std::move(b.coeff), std::move(b.atoms)});
}

TensorExpr TensorExpr::operator-() const {
    TensorExpr r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

namespace {
void check_same_algebra(const TensorExpr& a, const TensorExpr& b) {
    if (a.algebra() != b.algebra()) throw std::invalid_argument("TensorExpr: algebra mismatch");
}
}  // namespace

TensorExpr operator+(const TensorExpr& a, const TensorExpr& b) {
    check_same_algebra(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.frees_ != b.frees_)
        throw std::invalid_argument("TensorExpr: free-index signature mismatch in sum");
    TensorExpr r = a;
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    r.normalize();
    return r;
}

TensorExpr operator-(const TensorExpr& a, const TensorExpr& b) { return a + (-b); }

TensorExpr operator*(const TensorExpr& a, const TensorExpr& b) {
    check_same_algebra(a, b);
    TensorExpr r;
    r.alg_ = a.alg_;
    for (const auto& [name, type] : a.frees_)
        if (b.frees_.count(name))
            throw std::invalid_argument("TensorExpr: product would repeat free index '" + name + "'");
    r.frees_ = a.frees_;
    r.frees_.insert(b.frees_.begin(), b.frees_.end());
    for (const auto& ta : a.terms_) {
        int max_dummy = -1;
        for (const auto& inst : ta.atoms)
            for (const auto& l : inst.labels)
                if (l.is_dummy()) max_dummy = std::max(max_dummy, l.dummy);
        for (const auto& tb : b.terms_) {
            TensorTerm t;
            t.coeff = ta.coeff * tb.coeff;
            t.atoms = ta.atoms;
            for (AtomInst inst : tb.atoms) {
                for (auto& l : inst.labels)
                    if (l.is_dummy()) l.dummy += max_dummy + 1;
                t.atoms.push_back(std::move(inst));
            }
            r.terms_.push_back(std::move(t));
        }
    }
    r.normalize();
    return r;
}

TensorExpr operator*(const ScalarExpr& c, const TensorExpr& e) {
    TensorExpr r = e;
    for (auto& t : r.terms_) t.coeff = c * t.coeff;
    r.normalize();
    return r;
}

bool operator==(const TensorExpr& a, const TensorExpr& b) {
    check_same_algebra(a, b);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i) {
        if (!(a.terms_[i].atoms == b.terms_[i].atoms)) return false;
        if (a.terms_[i].coeff != b.terms_[i].coeff) return false;
    }
    return true;
}

TensorExpr TensorExpr::contract(const std::string& a, const std::string& b) const {
    auto ia = frees_.find(a), ib = frees_.find(b);
    if (ia == frees_.end() || ib == frees_.end())
        throw std::invalid_argument("TensorExpr::contract: unknown free index");
    SlotType ta = ia->second, tb = ib->second;
    if (ta.kind != tb.kind || ta.var == tb.var)
        throw std::invalid_argument("TensorExpr::contract: '" + a + "' and '" + b +
                                    "' do not form an up/down pair of one kind (raise or lower first)");
    TensorExpr r = *this;
    r.frees_.erase(a);
    r.frees_.erase(b);
    for (auto& t : r.terms_) {
        int max_dummy = -1;
        for (const auto& inst : t.atoms)
            for (const auto& l : inst.labels)
                if (l.is_dummy()) max_dummy = std::max(max_dummy, l.dummy);
        int id = max_dummy + 1;
        for (auto& inst : t.atoms)
            for (auto& l : inst.labels)
                if (!l.is_dummy() && (l.free == a || l.free == b)) l = Label::pair(id);
    }
    r.normalize();
    return r;
}

TensorExpr TensorExpr::flip_free(const std::string& name) const {
    auto it = frees_.find(name);
    if (it == frees_.end()) throw std::invalid_argument("TensorExpr::flip_free: unknown free index '" + name + "'");
    TensorExpr r = *this;
    r.frees_[name] = flip(it->second);
    for (auto& t : r.terms_)
        for (auto& inst : t.atoms)
            for (size_t s = 0; s < inst.labels.size(); ++s)
                if (!inst.labels[s].is_dummy() && inst.labels[s].free == name) inst.flips ^= 1u << s;
    r.normalize();
    return r;
}

TensorExpr TensorExpr::rename_frees(const std::map<std::string, std::string>& m) const {
    TensorExpr r = *this;
    std::map<std::string, SlotType> nf;
    for (const auto& [name, type] : frees_) {
        auto it = m.find(name);
        const std::string& nn = it == m.end() ? name : it->second;
        if (!nf.emplace(nn, type).second)
            throw std::invalid_argument("TensorExpr::rename_frees: name collision on '" + nn + "'");
    }
    r.frees_ = std::move(nf);
    for (auto& t : r.terms_)
        for (auto& inst : t.atoms)
            for (auto& l : inst.labels)
                if (!l.is_dummy()) {
                    auto it = m.find(l.free);
                    if (it != m.end()) l.free = it->second;
                }
    r.normalize();
    return r;
}

TensorExpr TensorExpr::conj() const {
    TensorExpr r;
    r.alg_ = alg_;
    for (const auto& [name, type] : frees_) r.frees_[name] = conj_type(type);
    for (const auto& t : terms_) {
        TensorTerm nt;
        nt.coeff = t.coeff.conj();
        for (const auto& inst : t.atoms) {
            const AtomDef& def = alg_->atom(inst.def);
            if (def.conj_id < 0)
                throw std::logic_error("TensorExpr::conj: no conjugate registered for '" + def.name + "'");
            AtomInst ni;
            ni.def = def.conj_id;
            int k = def.arity();
            ni.labels.resize(static_cast<size_t>(k));
            for (int j = 0; j < k; ++j) {
                int src = def.conj_perm[static_cast<size_t>(j)];
                ni.labels[static_cast<size_t>(j)] = inst.labels[static_cast<size_t>(src)];
                uint32_t f = ((inst.flips >> src) ^ (def.conj_flips >> j)) & 1u;
                ni.flips |= f << j;
            }
            nt.atoms.push_back(std::move(ni));
        }
        r.terms_.push_back(std::move(nt));
    }
    r.normalize();
    return r;
}

ScalarExpr TensorExpr::scalar_value() const {
    if (!frees_.empty() && !terms_.empty())
        throw std::logic_error("TensorExpr::scalar_value: expression has free indices");
    ScalarExpr acc;
    for (const auto& t : terms_) {
        if (!t.atoms.empty())
            throw std::logic_error("TensorExpr::scalar_value: unresolved atoms remain: " +
                                   detail::term_key(*alg_, t));
        acc += t.coeff;
    }
    return acc;
}

TensorExpr TensorExpr::renormalize_shuffled(std::mt19937& rng) const {
    TensorExpr r = *this;
    r.normalize(&rng);
    return r;
}

std::string TensorExpr::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty()) s += " + ";
        s += detail::term_str(*alg_, t);
    }
    return s;
}

}  // namespace pherm::tensorlang
