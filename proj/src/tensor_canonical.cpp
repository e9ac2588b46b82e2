#include "pherm/tensorlang/detail.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace pherm::tensorlang::detail {

namespace {

using symkernel::DimRational;
using symkernel::ScalarExpr;

struct SlotRef {
    int atom;
    int slot;
};

// dummy id -> the (exactly two) slots carrying it
std::map<int, std::vector<SlotRef>> dummy_map(const std::vector<AtomInst>& atoms) {
    std::map<int, std::vector<SlotRef>> m;
    for (size_t a = 0; a < atoms.size(); ++a)
        for (size_t s = 0; s < atoms[a].labels.size(); ++s)
            if (atoms[a].labels[s].is_dummy())
                m[atoms[a].labels[s].dummy].push_back({static_cast<int>(a), static_cast<int>(s)});
    return m;
}

void erase_atoms(std::vector<AtomInst>& atoms, int i, int j = -1) {
    if (j >= 0 && j > i) std::swap(i, j);
    if (i >= 0) atoms.erase(atoms.begin() + i);
    if (j >= 0) atoms.erase(atoms.begin() + j);
}

// ---- substitution-atom absorption -----------------------------------------

/// One absorption step; returns true if anything changed.
bool absorb_step(const Algebra& alg, TensorTerm& t) {
    const int h = alg.levi(), dl = alg.kronecker(), dlb = alg.kronecker_bar();
    auto& atoms = t.atoms;

    // Mixed-presentation Levi form is a Kronecker delta.
    for (auto& inst : atoms) {
        if (inst.def != h) continue;
        if (inst.flips == 0b01u) {  // slot 0 raised: (antihol^, antihol_)
            inst.def = dlb;
            inst.flips = 0;
            return true;
        }
        if (inst.flips == 0b10u) {  // slot 1 raised: (hol_, hol^)
            inst.def = dl;
            inst.flips = 0;
            return true;
        }
    }

    // Kronecker absorption: self-trace gives the dimension factor; otherwise
    // transfer the other label onto the partner slot.
    for (size_t a = 0; a < atoms.size(); ++a) {
        const AtomInst& d = atoms[a];
        if (d.def != dl && d.def != dlb) continue;
        if (d.flips != 0) throw std::logic_error("tensorlang: flipped Kronecker delta survived absorption");
        if (d.labels[0].is_dummy() && d.labels[0] == d.labels[1]) {
            t.coeff *= ScalarExpr(DimRational::var());
            erase_atoms(atoms, static_cast<int>(a));
            return true;
        }
        for (int s = 0; s < 2; ++s) {
            if (!d.labels[static_cast<size_t>(s)].is_dummy()) continue;
            int id = d.labels[static_cast<size_t>(s)].dummy;
            // find the partner slot
            for (size_t b = 0; b < atoms.size(); ++b)
                for (size_t bs = 0; bs < atoms[b].labels.size(); ++bs) {
                    if (b == a && static_cast<int>(bs) == s) continue;
                    if (!(atoms[b].labels[bs].is_dummy() && atoms[b].labels[bs].dummy == id)) continue;
                    atoms[b].labels[bs] = d.labels[static_cast<size_t>(1 - s)];
                    erase_atoms(atoms, static_cast<int>(a));
                    return true;
                }
        }
    }

    // Levi-form absorption: contract h into the partner slot, which flips it.
    for (size_t a = 0; a < atoms.size(); ++a) {
        const AtomInst& d = atoms[a];
        if (d.def != h) continue;
        for (int s = 0; s < 2; ++s) {
            if (!d.labels[static_cast<size_t>(s)].is_dummy()) continue;
            int id = d.labels[static_cast<size_t>(s)].dummy;
            for (size_t b = 0; b < atoms.size(); ++b)
                for (size_t bs = 0; bs < atoms[b].labels.size(); ++bs) {
                    if (b == a) continue;  // both slots of one h can never pair
                    if (!(atoms[b].labels[bs].is_dummy() && atoms[b].labels[bs].dummy == id)) continue;
                    atoms[b].labels[bs] = d.labels[static_cast<size_t>(1 - s)];
                    atoms[b].flips ^= 1u << bs;
                    erase_atoms(atoms, static_cast<int>(a));
                    return true;
                }
        }
    }

    return false;
}

/// Flip both ends of any dummy pair presented antiholomorphically.
bool levi_normalize_dummies(const Algebra& alg, TensorTerm& t) {
    bool changed = false;
    auto dm = dummy_map(t.atoms);
    for (const auto& [id, slots] : dm) {
        if (slots.size() != 2) throw std::logic_error("tensorlang: dummy id does not occur exactly twice");
        SlotType t0 = alg.presented(t.atoms[static_cast<size_t>(slots[0].atom)], slots[0].slot);
        if (t0.kind == Kind::AntiHol) {
            for (const auto& sr : slots)
                t.atoms[static_cast<size_t>(sr.atom)].flips ^= 1u << sr.slot;
            changed = true;
        }
    }
    return changed;
}

/// Applies one matching contraction rule; rng shuffles the scan order.
bool apply_contraction_rule(const Algebra& alg, TensorTerm& t, std::mt19937* rng) {
    auto dm = dummy_map(t.atoms);
    std::vector<int> ids;
    ids.reserve(dm.size());
    for (const auto& [id, slots] : dm) ids.push_back(id);
    if (rng) std::shuffle(ids.begin(), ids.end(), *rng);

    std::vector<size_t> rule_order(alg.contraction_rules().size());
    for (size_t i = 0; i < rule_order.size(); ++i) rule_order[i] = i;
    if (rng) std::shuffle(rule_order.begin(), rule_order.end(), *rng);

    for (int id : ids) {
        const auto& slots = dm[id];
        const AtomInst& x = t.atoms[static_cast<size_t>(slots[0].atom)];
        const AtomInst& y = t.atoms[static_cast<size_t>(slots[1].atom)];
        if (alg.atom(x.def).arity() != 1 || alg.atom(y.def).arity() != 1) continue;
        SlotType tx = alg.presented(x, 0);
        // identify the up and the down end (already Levi-normalized to hol)
        const AtomInst& up = tx.var == Var::Up ? x : y;
        const AtomInst& down = tx.var == Var::Up ? y : x;
        int up_idx = tx.var == Var::Up ? slots[0].atom : slots[1].atom;
        int down_idx = tx.var == Var::Up ? slots[1].atom : slots[0].atom;
        for (size_t ri : rule_order) {
            const ContractionRule& r = alg.contraction_rules()[ri];
            if (r.atom_up != up.def || r.atom_down != down.def) continue;
            if (r.up_flipped != ((up.flips & 1u) != 0)) continue;
            if (r.down_flipped != ((down.flips & 1u) != 0)) continue;
            t.coeff *= r.factor;
            erase_atoms(t.atoms, up_idx, down_idx);
            return true;
        }
    }
    return false;
}

// ---- canonical ordering -----------------------------------------------------

struct Component {
    std::vector<int> members;  // indices into term.atoms
};

std::vector<Component> split_components(const TensorTerm& t) {
    size_t n = t.atoms.size();
    std::vector<int> parent(n);
    for (size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return parent[static_cast<size_t>(x)] == x ? x : parent[static_cast<size_t>(x)] = find(parent[static_cast<size_t>(x)]); };
    auto unite = [&](int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); };

    std::map<int, int> first_seen;  // dummy id -> atom index
    for (size_t a = 0; a < n; ++a)
        for (const auto& l : t.atoms[a].labels)
            if (l.is_dummy()) {
                auto it = first_seen.find(l.dummy);
                if (it == first_seen.end())
                    first_seen[l.dummy] = static_cast<int>(a);
                else
                    unite(static_cast<int>(a), it->second);
            }

    std::map<int, Component> comps;
    for (size_t a = 0; a < n; ++a) comps[find(static_cast<int>(a))].members.push_back(static_cast<int>(a));
    std::vector<Component> out;
    out.reserve(comps.size());
    for (auto& [root, c] : comps) out.push_back(std::move(c));
    return out;
}

int inversion_parity(const std::vector<int>& seq) {
    int inv = 0;
    for (size_t i = 0; i < seq.size(); ++i)
        for (size_t j = i + 1; j < seq.size(); ++j)
            if (seq[i] > seq[j]) ++inv;
    return inv & 1;
}

struct SearchState {
    uint64_t mask = 0;                 // emitted members (bit per position in comp.members)
    std::map<int, int> local;          // dummy id -> local ordinal
    int next_local = 0;
    std::vector<int> emitted;          // original atom indices in emission order
    std::vector<AtomInst> out;         // canonical (symmetry-permuted) instances
    int sym_sign = 1;
};

struct ComponentCanon {
    std::vector<int> flat;             // canonical record string
    std::vector<AtomInst> out;
    std::vector<int> emitted;          // original atom indices
    int sym_sign = 1;
    int grade = 0;
    bool conflict = false;
};

/// Record of emitting one atom under one symmetry element; provisional local
/// ids continue from state.next_local in slot order.
std::vector<int> make_record(const AtomInst& inst, const std::vector<int>& perm, const SearchState& st,
                             const std::map<std::string, int>& free_ord) {
    std::vector<int> rec;
    rec.push_back(inst.def);
    int k = static_cast<int>(inst.labels.size());
    uint32_t pflips = 0;
    for (int j = 0; j < k; ++j)
        if ((inst.flips >> perm[static_cast<size_t>(j)]) & 1u) pflips |= 1u << j;
    rec.push_back(static_cast<int>(pflips));
    std::map<int, int> prov;
    int next = st.next_local;
    for (int j = 0; j < k; ++j) {
        const Label& l = inst.labels[static_cast<size_t>(perm[static_cast<size_t>(j)])];
        if (l.is_dummy()) {
            auto it = st.local.find(l.dummy);
            int v;
            if (it != st.local.end()) {
                v = it->second;
            } else {
                auto ip = prov.find(l.dummy);
                if (ip != prov.end())
                    v = ip->second;
                else
                    v = prov[l.dummy] = next++;
            }
            rec.push_back(1);
            rec.push_back(v);
        } else {
            rec.push_back(0);
            rec.push_back(free_ord.at(l.free));
        }
    }
    return rec;
}

ComponentCanon canonicalize_component(const Algebra& alg, const TensorTerm& t, const Component& comp,
                                      const std::map<std::string, int>& free_ord) {
    ComponentCanon result;
    size_t m = comp.members.size();
    if (m > 63) throw std::logic_error("tensorlang: component too large");
    for (int idx : comp.members) result.grade += alg.atom(t.atoms[static_cast<size_t>(idx)].def).grade;

    std::vector<SearchState> states(1);
    std::vector<int> flat;  // shared by all surviving branches
    for (size_t depth = 0; depth < m; ++depth) {
        // gather candidates over all states
        struct Cand {
            size_t state;
            int member;  // position within comp.members
            const std::vector<int>* perm;
            int sign;
            std::vector<int> rec;
        };
        std::vector<Cand> cands;
        std::vector<int> best;
        for (size_t si = 0; si < states.size(); ++si) {
            const SearchState& st = states[si];
            for (size_t mi = 0; mi < m; ++mi) {
                if ((st.mask >> mi) & 1u) continue;
                const AtomInst& inst = t.atoms[static_cast<size_t>(comp.members[mi])];
                const AtomDef& def = alg.atom(inst.def);
                for (const auto& [perm, sign] : def.sym_group) {
                    std::vector<int> rec = make_record(inst, perm, st, free_ord);
                    if (best.empty() || rec < best) best = rec;
                    cands.push_back({si, static_cast<int>(mi), &perm, sign, std::move(rec)});
                }
            }
        }
        flat.insert(flat.end(), best.begin(), best.end());
        std::vector<SearchState> next_states;
        for (const auto& c : cands) {
            if (c.rec != best) continue;
            const SearchState& st = states[c.state];
            SearchState ns = st;
            ns.mask |= 1ull << c.member;
            int orig_idx = comp.members[static_cast<size_t>(c.member)];
            const AtomInst& inst = t.atoms[static_cast<size_t>(orig_idx)];
            // commit provisional locals in slot order of the permuted instance
            AtomInst out;
            out.def = inst.def;
            out.flips = 0;
            int k = static_cast<int>(inst.labels.size());
            out.labels.resize(static_cast<size_t>(k));
            for (int j = 0; j < k; ++j) {
                int src = (*c.perm)[static_cast<size_t>(j)];
                out.labels[static_cast<size_t>(j)] = inst.labels[static_cast<size_t>(src)];
                if ((inst.flips >> src) & 1u) out.flips |= 1u << j;
                const Label& l = out.labels[static_cast<size_t>(j)];
                if (l.is_dummy() && ns.local.find(l.dummy) == ns.local.end()) ns.local[l.dummy] = ns.next_local++;
            }
            ns.emitted.push_back(orig_idx);
            ns.out.push_back(std::move(out));
            ns.sym_sign *= c.sign;

            // merge with an existing identical state; a sign clash proves zero
            bool merged = false;
            for (auto& os : next_states) {
                if (os.mask != ns.mask || os.local != ns.local) continue;
                std::vector<int> sa, sb;
                for (int e : os.emitted)
                    if (alg.atom(t.atoms[static_cast<size_t>(e)].def).grade == 1) sa.push_back(e);
                for (int e : ns.emitted)
                    if (alg.atom(t.atoms[static_cast<size_t>(e)].def).grade == 1) sb.push_back(e);
                int pa = inversion_parity(sa) ^ (os.sym_sign < 0 ? 1 : 0);
                int pb = inversion_parity(sb) ^ (ns.sym_sign < 0 ? 1 : 0);
                if (pa != pb) {
                    result.conflict = true;
                    return result;
                }
                merged = true;
                break;
            }
            if (!merged) next_states.push_back(std::move(ns));
            if (next_states.size() > 4096) throw std::logic_error("tensorlang: canonical search exploded");
        }
        states = std::move(next_states);
    }

    // all complete states share the same flat; compare signs
    const SearchState& first = states.front();
    for (size_t si = 1; si < states.size(); ++si) {
        const SearchState& st = states[si];
        std::vector<int> sa, sb;
        for (int e : first.emitted)
            if (alg.atom(t.atoms[static_cast<size_t>(e)].def).grade == 1) sa.push_back(e);
        for (int e : st.emitted)
            if (alg.atom(t.atoms[static_cast<size_t>(e)].def).grade == 1) sb.push_back(e);
        int pa = inversion_parity(sa) ^ (first.sym_sign < 0 ? 1 : 0);
        int pb = inversion_parity(sb) ^ (st.sym_sign < 0 ? 1 : 0);
        if (pa != pb) {
            result.conflict = true;
            return result;
        }
    }
    result.flat = std::move(flat);
    result.out = first.out;
    result.emitted = first.emitted;
    result.sym_sign = first.sym_sign;
    return result;
}

/// Canonical ordering of the whole term; returns false when the term is zero.
bool canonical_order(const Algebra& alg, TensorTerm& t) {
    // deterministic ordinals for free names
    std::map<std::string, int> free_ord;
    for (const auto& inst : t.atoms)
        for (const auto& l : inst.labels)
            if (!l.is_dummy()) free_ord.emplace(l.free, 0);
    int ord = 0;
    for (auto& [name, o] : free_ord) o = ord++;

    auto comps = split_components(t);
    std::vector<ComponentCanon> canon;
    canon.reserve(comps.size());
    for (const auto& c : comps) {
        canon.push_back(canonicalize_component(alg, t, c, free_ord));
        if (canon.back().conflict) return false;
    }
    std::stable_sort(canon.begin(), canon.end(),
                     [](const ComponentCanon& a, const ComponentCanon& b) { return a.flat < b.flat; });

    // identical odd components square to zero
    for (size_t i = 0; i + 1 < canon.size(); ++i)
        if ((canon[i].grade & 1) && canon[i].flat == canon[i + 1].flat) return false;

    // global grade-1 permutation parity
    std::vector<int> form_seq;
    std::vector<AtomInst> out;
    int sign = 1;
    for (const auto& c : canon) {
        sign *= c.sym_sign;
        for (size_t k = 0; k < c.out.size(); ++k) {
            if (alg.atom(c.out[k].def).grade == 1) form_seq.push_back(c.emitted[k]);
            out.push_back(c.out[k]);
        }
    }
    if (inversion_parity(form_seq)) sign = -sign;

    // final dummy renaming by first appearance
    std::map<int, int> rename;
    for (auto& inst : out)
        for (auto& l : inst.labels)
            if (l.is_dummy()) {
                auto it = rename.find(l.dummy);
                if (it == rename.end()) {
                    int id = static_cast<int>(rename.size());
                    rename[l.dummy] = id;
                    l.dummy = id;
                } else {
                    l.dummy = it->second;
                }
            }

    t.atoms = std::move(out);
    if (sign < 0) t.coeff = -t.coeff;
    return true;
}

}  // namespace

void validate_term(const Algebra& alg, const TensorTerm& t) {
    std::map<int, std::vector<SlotType>> pairs;
    std::map<std::string, int> frees;
    for (const auto& inst : t.atoms) {
        const AtomDef& def = alg.atom(inst.def);
        if (static_cast<int>(inst.labels.size()) != def.arity())
            throw std::logic_error("tensorlang: label count mismatch on '" + def.name + "'");
        for (size_t s = 0; s < inst.labels.size(); ++s) {
            const Label& l = inst.labels[s];
            if (l.is_dummy())
                pairs[l.dummy].push_back(alg.presented(inst, static_cast<int>(s)));
            else
                frees[l.free]++;
        }
    }
    for (const auto& [id, types] : pairs) {
        if (types.size() != 2) throw std::logic_error("tensorlang: dummy does not occur exactly twice");
        if (types[0].kind != types[1].kind || types[0].var == types[1].var)
            throw std::logic_error("tensorlang: ill-typed contraction");
    }
    for (const auto& [name, cnt] : frees)
        if (cnt != 1) throw std::logic_error("tensorlang: free index '" + name + "' occurs " + std::to_string(cnt) + " times");
}

bool normalize_term(const Algebra& alg, TensorTerm& t, std::mt19937* rng) {
    validate_term(alg, t);
    for (;;) {
        if (absorb_step(alg, t)) continue;
        if (levi_normalize_dummies(alg, t)) continue;
        if (apply_contraction_rule(alg, t, rng)) continue;
        break;
    }
    // coefficient pair rules to a fixpoint
    for (int round = 0;; ++round) {
        if (round > 100) throw std::logic_error("tensorlang: pair rules do not stabilize");
        symkernel::ScalarExpr before = t.coeff;
        for (const auto& pr : alg.pair_rules()) t.coeff = t.coeff.reduce_pair(pr.sym_a, pr.sym_b, pr.rep);
        if (t.coeff == before) break;
    }
    if (t.coeff.is_zero()) return false;
    return canonical_order(alg, t);
}

std::string term_key(const Algebra& alg, const TensorTerm& t) {
    std::string s;
    for (const auto& inst : t.atoms) {
        s += alg.atom(inst.def).name;
        if (inst.flips) s += "~" + std::to_string(inst.flips);
        s += "(";
        for (size_t i = 0; i < inst.labels.size(); ++i) {
            if (i) s += ",";
            const Label& l = inst.labels[i];
            s += l.is_dummy() ? "#" + std::to_string(l.dummy) : l.free;
        }
        s += ")";
    }
    return s;
}

std::string term_str(const Algebra& alg, const TensorTerm& t) {
    std::string cs = t.coeff.str();
    bool simple = cs.find('+') == std::string::npos && cs.find('-') == std::string::npos;
    std::string s = simple ? cs : "(" + cs + ")";
    std::string k = term_key(alg, t);
    if (!k.empty()) s += " " + k;
    return s;
}

}  // namespace pherm::tensorlang::detail
