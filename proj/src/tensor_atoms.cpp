#include "pherm/tensorlang/algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pherm::tensorlang {

namespace {

std::vector<int> identity_perm(int k) {
    std::vector<int> p(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) p[static_cast<size_t>(i)] = i;
    return p;
}

// apply(p, q)[i] = q[p[i]]; closure under this composition.
std::vector<int> compose(const std::vector<int>& p, const std::vector<int>& q) {
    std::vector<int> r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = q[static_cast<size_t>(p[i])];
    return r;
}

}  // namespace

int Algebra::add_atom(const std::string& name, std::vector<SlotType> slots, int grade,
                      const std::vector<std::pair<std::vector<int>, int>>& sym_generators) {
    if (grade != 0 && grade != 1) throw std::invalid_argument("Algebra::add_atom: grade must be 0 or 1");
    if (grade == 1 && slots.size() > 1)
        throw std::invalid_argument("Algebra::add_atom: one-form atoms carry at most one slot");
    for (const auto& a : atoms_)
        if (a.name == name) throw std::invalid_argument("Algebra::add_atom: duplicate atom '" + name + "'");

    AtomDef def;
    def.name = name;
    def.slots = std::move(slots);
    def.grade = grade;
    int k = def.arity();

    for (const auto& [perm, sign] : sym_generators) {
        if (static_cast<int>(perm.size()) != k || (sign != 1 && sign != -1))
            throw std::invalid_argument("Algebra::add_atom: malformed symmetry generator for '" + name + "'");
        for (int i = 0; i < k; ++i) {
            int j = perm[static_cast<size_t>(i)];
            if (j < 0 || j >= k) throw std::invalid_argument("Algebra::add_atom: bad permutation");
            if (!(def.slots[static_cast<size_t>(i)] == def.slots[static_cast<size_t>(j)]))
                throw std::invalid_argument("Algebra::add_atom: symmetry mixes slot types in '" + name + "'");
        }
    }

    // Closure of the signed permutation group.
    std::set<std::pair<std::vector<int>, int>> group;
    group.insert({identity_perm(k), 1});
    for (const auto& g : sym_generators) group.insert(g);
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<std::pair<std::vector<int>, int>> next = group;
        for (const auto& a : group)
            for (const auto& b : group) {
                std::pair<std::vector<int>, int> c{compose(a.first, b.first), a.second * b.second};
                if (next.insert(c).second) grew = true;
            }
        group = std::move(next);
        if (group.size() > 4096) throw std::invalid_argument("Algebra::add_atom: symmetry group too large");
    }
    for (const auto& [perm, sign] : group)
        if (sign == -1 && perm == identity_perm(k))
            throw std::invalid_argument("Algebra::add_atom: symmetry group forces '" + name + "' to vanish");

    def.sym_group.assign(group.begin(), group.end());
    atoms_.push_back(std::move(def));
    return static_cast<int>(atoms_.size()) - 1;
}

void Algebra::set_conjugates(int a, int b, std::vector<int> perm, uint32_t flips) {
    AtomDef& da = atoms_.at(static_cast<size_t>(a));
    AtomDef& db = atoms_.at(static_cast<size_t>(b));
    int k = da.arity();
    if (db.arity() != k) throw std::invalid_argument("Algebra::set_conjugates: arity mismatch");
    if (da.grade != db.grade) throw std::invalid_argument("Algebra::set_conjugates: grade mismatch");
    if (perm.empty()) perm = identity_perm(k);
    if (static_cast<int>(perm.size()) != k) throw std::invalid_argument("Algebra::set_conjugates: bad perm");

    // Type check: b's slot j (with the extra flip) must be the conjugate type
    // of a's slot perm[j].
    for (int j = 0; j < k; ++j) {
        SlotType want = conj_type(da.slots[static_cast<size_t>(perm[static_cast<size_t>(j)])]);
        SlotType have = db.slots[static_cast<size_t>(j)];
        if ((flips >> j) & 1u) have = flip(have);
        if (!(have == want))
            throw std::invalid_argument("Algebra::set_conjugates: slot types of '" + da.name + "' and '" +
                                        db.name + "' are not conjugate under the given map");
    }

    // Reverse map: slot i of a carries b's slot inv_perm[i] with matching flips.
    std::vector<int> inv(static_cast<size_t>(k));
    uint32_t rflips = 0;
    for (int j = 0; j < k; ++j) inv[static_cast<size_t>(perm[static_cast<size_t>(j)])] = j;
    for (int i = 0; i < k; ++i)
        if ((flips >> inv[static_cast<size_t>(i)]) & 1u) rflips |= 1u << i;

    da.conj_id = b;
    da.conj_perm = perm;
    da.conj_flips = flips;
    db.conj_id = a;
    db.conj_perm = inv;
    db.conj_flips = rflips;

    // Round trip must be the identity map with no residual flips.
    for (int i = 0; i < k; ++i) {
        int j = da.conj_perm[static_cast<size_t>(db.conj_perm[static_cast<size_t>(i)])];
        uint32_t f = ((da.conj_flips >> db.conj_perm[static_cast<size_t>(i)]) ^ (db.conj_flips >> i)) & 1u;
        if (j != i || f != 0) throw std::logic_error("Algebra::set_conjugates: conjugation is not an involution");
    }
}

void Algebra::set_self_conjugate(int a, std::vector<int> perm, uint32_t flips) {
    set_conjugates(a, a, std::move(perm), flips);
}

int Algebra::atom_id(const std::string& name) const {
    for (size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i].name == name) return static_cast<int>(i);
    throw std::invalid_argument("Algebra: unknown atom '" + name + "'");
}

void Algebra::set_levi(int h, int delta, int delta_bar) {
    const AtomDef& dh = atom(h);
    if (dh.arity() != 2 || !(dh.slots[0] == SlotType{Kind::Hol, Var::Down}) ||
        !(dh.slots[1] == SlotType{Kind::AntiHol, Var::Down}))
        throw std::invalid_argument("Algebra::set_levi: h must have slots (hol_, antihol_)");
    const AtomDef& dd = atom(delta);
    if (dd.arity() != 2 || !(dd.slots[0] == SlotType{Kind::Hol, Var::Down}) ||
        !(dd.slots[1] == SlotType{Kind::Hol, Var::Up}))
        throw std::invalid_argument("Algebra::set_levi: delta must have slots (hol_, hol^)");
    const AtomDef& db = atom(delta_bar);
    if (db.arity() != 2 || !(db.slots[0] == SlotType{Kind::AntiHol, Var::Up}) ||
        !(db.slots[1] == SlotType{Kind::AntiHol, Var::Down}))
        throw std::invalid_argument("Algebra::set_levi: delta_bar must have slots (antihol^, antihol_)");
    h_ = h;
    delta_ = delta;
    delta_bar_ = delta_bar;
}

void Algebra::add_contraction_rule(const std::string& atom_up, bool up_flipped, const std::string& atom_down,
                                   bool down_flipped, symkernel::ScalarExpr factor) {
    ContractionRule r;
    r.atom_up = atom_id(atom_up);
    r.up_flipped = up_flipped;
    r.atom_down = atom_id(atom_down);
    r.down_flipped = down_flipped;
    r.factor = std::move(factor);

    const AtomDef& du = atom(r.atom_up);
    const AtomDef& dd = atom(r.atom_down);
    if (du.arity() != 1 || dd.arity() != 1)
        throw std::invalid_argument("Algebra::add_contraction_rule: atoms must be single-slot");
    SlotType tu = du.slots[0];
    if (r.up_flipped) tu = flip(tu);
    SlotType td = dd.slots[0];
    if (r.down_flipped) td = flip(td);
    if (!(tu == SlotType{Kind::Hol, Var::Up}) || !(td == SlotType{Kind::Hol, Var::Down}))
        throw std::invalid_argument(
            "Algebra::add_contraction_rule: pattern must present a Levi-normalized hol^/hol_ pair");
    // Termination: a contraction rule always removes one contracted pair and
    // two atoms, so the measure strictly decreases. A nonzero scalar factor
    // for a pair of one-form atoms would need word-position bookkeeping the
    // engine does not define; reject it.
    if (du.grade + dd.grade > 0 && !r.factor.is_zero())
        throw std::invalid_argument(
            "Algebra::add_contraction_rule: one-form pairs may only rewrite to zero");
    contraction_rules_.push_back(std::move(r));
}

void Algebra::add_pair_rule(const std::string& sym_a, const std::string& sym_b, symkernel::ScalarExpr rep) {
    PairRule r;
    r.sym_a = symbols_->require(sym_a);
    r.sym_b = symbols_->require(sym_b);
    if (rep.total_degree() >= 2)
        throw std::invalid_argument(
            "Algebra::add_pair_rule: replacement must have total degree < 2 (termination measure)");
    r.rep = std::move(rep);
    pair_rules_.push_back(std::move(r));
}

void Algebra::validate_skeleton(const std::vector<SkeletonTerm>& tmpl, int arity, bool with_dir) const {
    for (const auto& t : tmpl) {
        for (const auto& inst : t.atoms) {
            const AtomDef& d = atom(inst.def);
            if (static_cast<int>(inst.labels.size()) != d.arity())
                throw std::invalid_argument("Algebra: skeleton arity mismatch for atom '" + d.name + "'");
            for (const auto& l : inst.labels) {
                if (l.is_dummy()) continue;
                if (l.free == "%d") {
                    if (!with_dir) throw std::invalid_argument("Algebra: '%d' not allowed here");
                    continue;
                }
                if (l.free.size() >= 2 && l.free[0] == '%') {
                    int idx = std::stoi(l.free.substr(1));
                    if (idx < 0 || idx >= arity)
                        throw std::invalid_argument("Algebra: skeleton placeholder out of range");
                }
            }
        }
    }
}

void Algebra::add_atom_derivative(const std::string& name, Kind dir, std::vector<SkeletonTerm> tmpl) {
    int id = atom_id(name);
    validate_skeleton(tmpl, atom(id).arity(), true);
    atom_derivs_[{id, static_cast<int>(dir)}] = DerivRule{std::move(tmpl)};
}

void Algebra::add_symbol_derivative(const std::string& sym, Kind dir, std::vector<SkeletonTerm> tmpl) {
    int id = symbols_->require(sym);
    validate_skeleton(tmpl, 0, true);
    symbol_derivs_[{id, static_cast<int>(dir)}] = DerivRule{std::move(tmpl)};
}

void Algebra::add_constant_symbol(const std::string& sym) {
    constant_symbols_.push_back(symbols_->require(sym));
}

const DerivRule* Algebra::atom_derivative(int a, Kind dir) const {
    auto it = atom_derivs_.find({a, static_cast<int>(dir)});
    return it == atom_derivs_.end() ? nullptr : &it->second;
}

const DerivRule* Algebra::symbol_derivative(int sym, Kind dir) const {
    auto it = symbol_derivs_.find({sym, static_cast<int>(dir)});
    return it == symbol_derivs_.end() ? nullptr : &it->second;
}

bool Algebra::is_constant_symbol(int sym) const {
    return std::find(constant_symbols_.begin(), constant_symbols_.end(), sym) != constant_symbols_.end();
}

}  // namespace pherm::tensorlang
