#include "pherm/symkernel/scalar_expr.hpp"

#include <algorithm>
#include <stdexcept>

namespace pherm::symkernel {

ScalarExpr ScalarExpr::symbol(SymbolTablePtr table, int id, int exp) {
    if (!table || id < 0 || id >= table->size())
        throw std::invalid_argument("ScalarExpr::symbol: id out of range");
    if (exp < 0) throw std::invalid_argument("ScalarExpr::symbol: negative exponent");
    ScalarExpr e(std::move(table));
    if (exp == 0) return ScalarExpr(1);
    Monomial m(static_cast<size_t>(e.table_->size()), 0);
    m[static_cast<size_t>(id)] = static_cast<uint16_t>(exp);
    e.terms_[m] = DimComplex(1);
    return e;
}

ScalarExpr ScalarExpr::symbol(const SymbolTablePtr& table, const std::string& name, int exp) {
    if (!table) throw std::invalid_argument("ScalarExpr::symbol: null table");
    return symbol(table, table->require(name), exp);
}

bool ScalarExpr::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const Monomial& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](uint16_t e) { return e == 0; });
}

DimComplex ScalarExpr::constant_value() const {
    if (terms_.empty()) return DimComplex();
    Monomial zero(table_ ? static_cast<size_t>(table_->size()) : 0, 0);
    auto it = terms_.find(zero);
    if (terms_.size() == 1 && it != terms_.end()) return it->second;
    if (!is_constant()) throw std::logic_error("ScalarExpr::constant_value: not constant: " + str());
    return it == terms_.end() ? DimComplex() : it->second;
}

int ScalarExpr::total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
        int t = 0;
        for (uint16_t e : m) t += e;
        d = std::max(d, t);
    }
    return d;
}

int ScalarExpr::degree_in(int id) const {
    int d = 0;
    for (const auto& [m, c] : terms_)
        if (id >= 0 && static_cast<size_t>(id) < m.size()) d = std::max(d, static_cast<int>(m[static_cast<size_t>(id)]));
    return d;
}

void ScalarExpr::add_term(const Monomial& m, const DimComplex& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymbolTablePtr ScalarExpr::merge_tables(const ScalarExpr& a, const ScalarExpr& b) {
    if (a.table_ && b.table_ && a.table_ != b.table_)
        throw std::invalid_argument("ScalarExpr: symbol table mismatch");
    return a.table_ ? a.table_ : b.table_;
}

Monomial ScalarExpr::sized_key(const Monomial& m) const {
    size_t want = table_ ? static_cast<size_t>(table_->size()) : 0;
    if (m.size() == want) return m;
    Monomial r = m;
    r.resize(want, 0);
    return r;
}

ScalarExpr ScalarExpr::operator-() const {
    ScalarExpr r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr r(ScalarExpr::merge_tables(a, b));
    for (const auto& [m, c] : a.terms_) r.add_term(r.sized_key(m), c);
    for (const auto& [m, c] : b.terms_) r.add_term(r.sized_key(m), c);
    return r;
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) { return a + (-b); }

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
    ScalarExpr r(ScalarExpr::merge_tables(a, b));
    for (const auto& [ma, ca] : a.terms_) {
        Monomial ka = r.sized_key(ma);
        for (const auto& [mb, cb] : b.terms_) {
            Monomial k = ka;
            Monomial kb = r.sized_key(mb);
            for (size_t i = 0; i < k.size(); ++i) {
                int s = static_cast<int>(k[i]) + static_cast<int>(kb[i]);
                if (s > 0xFFFF) throw std::overflow_error("ScalarExpr: exponent overflow");
                k[i] = static_cast<uint16_t>(s);
            }
            r.add_term(k, ca * cb);
        }
    }
    return r;
}

bool operator==(const ScalarExpr& a, const ScalarExpr& b) {
    // Tables may differ only when one side is constant; compare semantically.
    if (a.terms_.size() != b.terms_.size()) return false;
    auto ia = a.terms_.begin();
    auto ib = b.terms_.begin();
    for (; ia != a.terms_.end(); ++ia, ++ib) {
        const Monomial& ma = ia->first;
        const Monomial& mb = ib->first;
        size_t n = std::max(ma.size(), mb.size());
        for (size_t i = 0; i < n; ++i) {
            uint16_t ea = i < ma.size() ? ma[i] : 0;
            uint16_t eb = i < mb.size() ? mb[i] : 0;
            if (ea != eb) return false;
        }
        if (ia->second != ib->second) return false;
    }
    return true;
}

bool operator<(const ScalarExpr& a, const ScalarExpr& b) {
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return ia->first < ib->first;
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
}

ScalarExpr ScalarExpr::pow(int e) const {
    if (e < 0) throw std::invalid_argument("ScalarExpr::pow: negative exponent");
    ScalarExpr r(1), base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

ScalarExpr ScalarExpr::conj() const {
    ScalarExpr r(table_);
    for (const auto& [m, c] : terms_) {
        Monomial k(m.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            size_t j = static_cast<size_t>(table_->conj_of(static_cast<int>(i)));
            k[j] = static_cast<uint16_t>(k[j] + m[i]);
        }
        r.add_term(k, c.conj());
    }
    return r;
}

ScalarExpr ScalarExpr::substitute(const std::map<int, ScalarExpr>& rules) const {
    ScalarExpr r(table_);
    for (const auto& [m, c] : terms_) {
        ScalarExpr term(c);
        Monomial rest(m.size(), 0);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            auto it = rules.find(static_cast<int>(i));
            if (it == rules.end())
                rest[i] = m[i];
            else
                term *= it->second.pow(m[i]);
        }
        ScalarExpr base(table_);
        base.terms_[rest] = DimComplex(1);
        ScalarExpr prod = term * base;
        for (const auto& [mm, cc] : prod.terms_) r.add_term(r.sized_key(mm), cc);
    }
    return r;
}

ScalarExpr ScalarExpr::reduce_pair(int sym_a, int sym_b, const ScalarExpr& rep) const {
    if (!table_) return *this;
    ScalarExpr cur = *this;
    for (;;) {
        bool hit = false;
        ScalarExpr next(table_);
        for (const auto& [m, c] : cur.terms_) {
            size_t a = static_cast<size_t>(sym_a), b = static_cast<size_t>(sym_b);
            if (a < m.size() && b < m.size() && m[a] >= 1 && m[b] >= 1) {
                hit = true;
                Monomial k = m;
                --k[a];
                --k[b];
                ScalarExpr base(table_);
                base.terms_[k] = c;
                ScalarExpr prod = base * rep;
                for (const auto& [mm, cc] : prod.terms_) next.add_term(next.sized_key(mm), cc);
            } else {
                next.add_term(m, c);
            }
        }
        cur = std::move(next);
        if (!hit) break;
    }
    return cur;
}

ScalarExpr ScalarExpr::specialize_n(const Rational& n) const {
    ScalarExpr r(table_);
    for (const auto& [m, c] : terms_) {
        DimComplex v(DimRational(c.re().eval(n)), DimRational(c.im().eval(n)));
        r.add_term(m, v);
    }
    return r;
}

DimComplex ScalarExpr::eval_exact(const std::map<int, DimComplex>& values) const {
    DimComplex acc;
    for (const auto& [m, c] : terms_) {
        DimComplex v = c;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            auto it = values.find(static_cast<int>(i));
            if (it == values.end())
                throw std::invalid_argument("ScalarExpr::eval_exact: no value for symbol '" +
                                            table_->name(static_cast<int>(i)) + "'");
            v *= it->second.pow(m[i]);
        }
        acc += v;
    }
    return acc;
}

std::complex<double> ScalarExpr::eval_double(double n, const std::map<int, std::complex<double>>& values) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [m, c] : terms_) {
        double dre = c.re().num().eval(n) / c.re().den().eval(n);
        double dim = c.im().num().eval(n) / c.im().den().eval(n);
        std::complex<double> v(dre, dim);
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            auto it = values.find(static_cast<int>(i));
            if (it == values.end())
                throw std::invalid_argument("ScalarExpr::eval_double: no value for symbol '" +
                                            table_->name(static_cast<int>(i)) + "'");
            std::complex<double> p(1.0, 0.0);
            for (int k = 0; k < m[i]; ++k) p *= it->second;
            v *= p;
        }
        acc += v;
    }
    return acc;
}

std::string ScalarExpr::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
        if (!s.empty()) s += " + ";
        std::string mono;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += table_->name(static_cast<int>(i));
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        std::string cs = c.str();
        bool needs_paren = cs.find('+') != std::string::npos || cs.find('-') != std::string::npos ||
                           cs.find('/') != std::string::npos;
        if (mono.empty())
            s += cs;
        else if (cs == "1")
            s += mono;
        else
            s += (needs_paren ? "(" + cs + ")" : cs) + "*" + mono;
    }
    return s;
}

}  // namespace pherm::symkernel
