#include "pherm/tensorlang/bridge.hpp"

#include <set>
#include <stdexcept>

namespace pherm::tensorlang {

using exterior::Form;
using symkernel::DimComplex;
using symkernel::DimRational;
using symkernel::Rational;
using symkernel::ScalarExpr;

namespace {

/// Coefficient at concrete dimension n with symbols replaced by their values.
ScalarExpr eval_coeff(const ScalarExpr& c, const ConcreteMap& m) {
    ScalarExpr out;
    Rational nq(m.n);
    for (const auto& [mono, dc] : c.terms()) {
        DimComplex v(DimRational(dc.re().eval(nq)), DimRational(dc.im().eval(nq)));
        ScalarExpr term = ScalarExpr::constant(v);
        for (size_t j = 0; j < mono.size(); ++j) {
            if (mono[j] == 0) continue;
            auto it = m.symbol_values.find(static_cast<int>(j));
            if (it == m.symbol_values.end())
                throw std::logic_error("eval_concrete: no value for symbol '" +
                                       c.table()->name(static_cast<int>(j)) + "'");
            term *= it->second.pow(static_cast<int>(mono[j]));
        }
        out += term;
    }
    return out;
}

}  // namespace

Form<ScalarExpr> eval_concrete(const TensorExpr& e, const ConcreteMap& m,
                               const std::map<std::string, int>& frees) {
    Form<ScalarExpr> acc(m.n);
    const Algebra& alg = *e.algebra();
    for (const auto& t : e.terms()) {
        std::set<int> dummy_set;
        for (const auto& inst : t.atoms)
            for (const auto& l : inst.labels)
                if (l.is_dummy()) dummy_set.insert(l.dummy);
        std::vector<int> ids(dummy_set.begin(), dummy_set.end());

        ScalarExpr coeff_val = eval_coeff(t.coeff, m);
        if (coeff_val.is_zero()) continue;

        std::vector<int> assign(ids.size(), 1);
        for (;;) {
            std::map<int, int> amap;
            for (size_t i = 0; i < ids.size(); ++i) amap[ids[i]] = assign[i];

            ScalarExpr scalars = coeff_val;
            Form<ScalarExpr> word = Form<ScalarExpr>::scalar(m.n, ScalarExpr(1));
            for (const auto& inst : t.atoms) {
                std::vector<int> idx(inst.labels.size());
                for (size_t s = 0; s < inst.labels.size(); ++s) {
                    const Label& l = inst.labels[s];
                    if (l.is_dummy()) {
                        idx[s] = amap.at(l.dummy);
                    } else {
                        auto it = frees.find(l.free);
                        if (it == frees.end())
                            throw std::invalid_argument("eval_concrete: free index '" + l.free +
                                                        "' has no assigned value");
                        idx[s] = it->second;
                    }
                }
                if (alg.atom(inst.def).grade == 0) {
                    if (!m.atom_value)
                        throw std::logic_error("eval_concrete: no atom_value map installed");
                    scalars *= m.atom_value(inst, idx);
                    if (scalars.is_zero()) break;
                } else {
                    if (!m.form_value)
                        throw std::logic_error("eval_concrete: no form_value map installed");
                    word = word * m.form_value(inst, idx);
                }
            }
            if (!scalars.is_zero()) acc += scalars * word;

            size_t pos = 0;
            while (pos < assign.size() && assign[pos] == m.n) assign[pos++] = 1;
            if (pos == assign.size()) break;
            ++assign[pos];
        }
    }
    return acc;
}

ConcreteMap levi_identity_map(const AlgebraPtr& alg, int n) {
    ConcreteMap m;
    m.n = n;
    int h = alg->levi(), dl = alg->kronecker(), dlb = alg->kronecker_bar();
    m.atom_value = [h, dl, dlb](const AtomInst& inst, const std::vector<int>& idx) -> ScalarExpr {
        if (inst.def == h || inst.def == dl || inst.def == dlb)
            return ScalarExpr(idx[0] == idx[1] ? 1 : 0);
        throw std::logic_error("eval_concrete: no value registered for atom id " + std::to_string(inst.def));
    };
    return m;
}

}  // namespace pherm::tensorlang
