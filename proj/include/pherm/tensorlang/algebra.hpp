#pragma once

#include "pherm/symkernel/scalar_expr.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace pherm::tensorlang {

enum class Kind : uint8_t { Hol, AntiHol };
enum class Var : uint8_t { Up, Down };

/// Slot type as presented (after any Levi-form raising/lowering flips).
struct SlotType {
    Kind kind;
    Var var;
    friend bool operator==(const SlotType&, const SlotType&) = default;
};

/// Raising or lowering through the Levi form toggles both kind and variance:
/// a lowered holomorphic slot presents as a raised antiholomorphic one.
inline SlotType flip(SlotType t) {
    return {t.kind == Kind::Hol ? Kind::AntiHol : Kind::Hol, t.var == Var::Up ? Var::Down : Var::Up};
}

/// Complex conjugation swaps kind and keeps variance.
inline SlotType conj_type(SlotType t) {
    return {t.kind == Kind::Hol ? Kind::AntiHol : Kind::Hol, t.var};
}

inline std::string slot_str(SlotType t) {
    std::string s = t.kind == Kind::Hol ? "hol" : "antihol";
    return s + (t.var == Var::Up ? "^" : "_");
}

/// Index label: a named free index or a term-local dummy pair id.
struct Label {
    int dummy = -1;
    std::string free;

    static Label free_name(std::string n) { return Label{-1, std::move(n)}; }
    static Label pair(int id) { return Label{id, {}}; }
    bool is_dummy() const { return dummy >= 0; }
    friend bool operator==(const Label&, const Label&) = default;
    friend auto operator<=>(const Label& a, const Label& b) {
        if (auto c = a.dummy <=> b.dummy; c != 0) return c;
        return a.free <=> b.free;
    }
};

/// One atom occurrence inside a term. `flips` bit i set means slot i is
/// presented raised/lowered through the Levi form relative to the definition.
struct AtomInst {
    int def = -1;
    uint32_t flips = 0;
    std::vector<Label> labels;

    friend bool operator==(const AtomInst&, const AtomInst&) = default;
};

/// Declared tensor atom: slot signature, form grade (0 or 1), slot symmetry
/// group (signed permutations, stored as the full closure), and an explicitly
/// registered conjugate atom with its slot permutation and flip mask.
struct AtomDef {
    std::string name;
    std::vector<SlotType> slots;
    int grade = 0;
    std::vector<std::pair<std::vector<int>, int>> sym_group;  // (perm, sign), includes identity
    int conj_id = -1;
    std::vector<int> conj_perm;  // conj slot j carries this atom's slot conj_perm[j]
    uint32_t conj_flips = 0;     // extra flips applied to the conjugate's slots

    int arity() const { return static_cast<int>(slots.size()); }
};

/// One term of a rule template: placeholder free names "%0", "%1", ... refer
/// to the matched atom's slots and "%d" to the derivative direction slot.
struct SkeletonTerm {
    symkernel::ScalarExpr coeff;
    std::vector<AtomInst> atoms;
};

/// Contraction rule: a Levi-normalized dummy pair between two single-slot
/// atoms rewrites to a scalar factor. Both grade-1 only with factor zero.
struct ContractionRule {
    int atom_up = -1;
    bool up_flipped = false;
    int atom_down = -1;
    bool down_flipped = false;
    symkernel::ScalarExpr factor;
};

/// Coefficient rule: the monomial product sym_a*sym_b rewrites to `rep`,
/// whose total degree must be strictly smaller (termination measure).
struct PairRule {
    int sym_a = -1;
    int sym_b = -1;
    symkernel::ScalarExpr rep;
};

/// Derivative rule payload: linear combination of skeleton terms.
struct DerivRule {
    std::vector<SkeletonTerm> terms;  // may be empty (derivative is zero)
};

/// Registry of atoms, scalar symbols and rewrite rules for one computation
/// context. Built once by a domain layer, then frozen behind shared_ptr;
/// expressions hold a pointer and never mutate it. Registration never infers
/// conjugates: every atom and every rule must be registered explicitly, and
/// each rule is checked against the termination measure
/// (contracted-pair count, atom count, coefficient degree).
class Algebra {
public:
    explicit Algebra(symkernel::SymbolTablePtr symbols) : symbols_(std::move(symbols)) {}

    const symkernel::SymbolTablePtr& symbols() const { return symbols_; }

    int add_atom(const std::string& name, std::vector<SlotType> slots, int grade,
                 const std::vector<std::pair<std::vector<int>, int>>& sym_generators = {});

    /// Registers b as the conjugate of a (and a of b). perm/flips describe the
    /// a -> b direction; the reverse direction is derived and validated.
    void set_conjugates(int a, int b, std::vector<int> perm, uint32_t flips);
    /// Self-conjugate (real) atom.
    void set_self_conjugate(int a, std::vector<int> perm = {}, uint32_t flips = 0);

    int atom_id(const std::string& name) const;
    const AtomDef& atom(int id) const { return atoms_.at(static_cast<size_t>(id)); }
    int num_atoms() const { return static_cast<int>(atoms_.size()); }

    /// The distinguished substitution atoms used by built-in absorption:
    /// the Levi form h (slots hol_, antihol_), the holomorphic Kronecker
    /// delta (hol_, hol^) and its conjugate (antihol^, antihol_).
    void set_levi(int h, int delta, int delta_bar);
    int levi() const { return h_; }
    int kronecker() const { return delta_; }
    int kronecker_bar() const { return delta_bar_; }

    void add_contraction_rule(const std::string& atom_up, bool up_flipped, const std::string& atom_down,
                              bool down_flipped, symkernel::ScalarExpr factor);
    void add_pair_rule(const std::string& sym_a, const std::string& sym_b, symkernel::ScalarExpr rep);
    void add_atom_derivative(const std::string& atom, Kind dir, std::vector<SkeletonTerm> tmpl);
    void add_symbol_derivative(const std::string& sym, Kind dir, std::vector<SkeletonTerm> tmpl);
    /// Declares a scalar symbol as covariant-constant (derivative zero).
    void add_constant_symbol(const std::string& sym);

    const std::vector<ContractionRule>& contraction_rules() const { return contraction_rules_; }
    const std::vector<PairRule>& pair_rules() const { return pair_rules_; }
    const DerivRule* atom_derivative(int atom, Kind dir) const;
    const DerivRule* symbol_derivative(int sym, Kind dir) const;
    bool is_constant_symbol(int sym) const;

    /// Presented slot type of an instance slot.
    SlotType presented(const AtomInst& inst, int slot) const {
        SlotType t = atom(inst.def).slots[static_cast<size_t>(slot)];
        return (inst.flips >> slot) & 1u ? flip(t) : t;
    }

private:
    void validate_skeleton(const std::vector<SkeletonTerm>& tmpl, int arity, bool with_dir) const;

    symkernel::SymbolTablePtr symbols_;
    std::vector<AtomDef> atoms_;
    std::vector<ContractionRule> contraction_rules_;
    std::vector<PairRule> pair_rules_;
    std::map<std::pair<int, int>, DerivRule> atom_derivs_;    // (atom, Kind)
    std::map<std::pair<int, int>, DerivRule> symbol_derivs_;  // (symbol, Kind)
    std::vector<int> constant_symbols_;
    int h_ = -1;
    int delta_ = -1;
    int delta_bar_ = -1;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

}  // namespace pherm::tensorlang
