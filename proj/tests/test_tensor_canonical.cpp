#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "tensor_fixtures.hpp"

#include <random>

using namespace fixtures;
using pherm::symkernel::DimComplex;
using pherm::tensorlang::TensorExpr;

namespace {

TensorExpr atom(const fixtures::Fix& f, const std::string& name, const std::vector<std::string>& labels,
                uint32_t flips = 0) {
    return TensorExpr::atom(f.alg, name, labels, flips);
}

// lowered gradient one-form w_mu theta^mu
TensorExpr grad_form(const fixtures::Fix& f) {
    return (atom(f, "w_lo", {"m"}) * atom(f, "th_up", {"u"})).contract("m", "u");
}

TensorExpr conj_grad_form(const fixtures::Fix& f) {
    return (atom(f, "wb_lo", {"m"}) * atom(f, "th_dn", {"u"}, 1)).contract("m", "u");
}

}  // namespace

TEST_CASE("one-form words anticommute and square to zero") {
    auto f = make_fix();
    auto ab = atom(f, "th_up", {"a"}) * atom(f, "th_up", {"b"});
    auto ba = atom(f, "th_up", {"b"}) * atom(f, "th_up", {"a"});
    CHECK_FALSE(ab.is_zero());
    CHECK(ab == -ba);
    CHECK(ab != ba);
    CHECK((atom(f, "theta", {}) * atom(f, "theta", {})).is_zero());

    auto dw = grad_form(f);
    CHECK_FALSE(dw.is_zero());
    CHECK((dw * dw).is_zero());
    auto dwb = conj_grad_form(f);
    CHECK((dwb * dwb).is_zero());
    CHECK_FALSE((dw * dwb).is_zero());
    CHECK(dw * dwb == -(dwb * dw));
}

TEST_CASE("contraction of a symmetric atom with an anticommuting pair vanishes") {
    auto f = make_fix();
    std::vector<std::pair<std::vector<int>, int>> sym{{{1, 0}, 1}};
    std::vector<std::pair<std::vector<int>, int>> asym{{{1, 0}, -1}};
    f.alg->add_atom("sym2", {kHolDn, kHolDn}, 0, sym);
    f.alg->add_atom("asym2", {kHolDn, kHolDn}, 0, asym);

    auto pair_with = [&](const std::string& name, const std::string& l0, const std::string& l1) {
        return (atom(f, name, {l0, l1}) * atom(f, "th_up", {"u1"}) * atom(f, "th_up", {"u2"}))
            .contract("m1", "u1")
            .contract("m2", "u2");
    };
    CHECK(pair_with("sym2", "m1", "m2").is_zero());
    auto x = pair_with("asym2", "m1", "m2");
    CHECK_FALSE(x.is_zero());
    CHECK(pair_with("asym2", "m2", "m1") == -x);
}

TEST_CASE("equal tensors canonicalize identically regardless of build order") {
    auto f = make_fix();
    // pair-swap symmetries of the four-slot atom
    auto s = atom(f, "S", {"a", "bb", "g", "sb"});
    CHECK(s == atom(f, "S", {"g", "bb", "a", "sb"}));
    CHECK(s == atom(f, "S", {"a", "sb", "g", "bb"}));
    CHECK(s == atom(f, "S", {"g", "sb", "a", "bb"}));

    // dummy names and contraction order do not matter
    auto x1 = (atom(f, "S", {"a", "bb", "p", "q"}).flip_free("q") .contract("p", "q"));
    auto x2 = (atom(f, "S", {"r", "s", "a", "bb"}).flip_free("s")
                   .rename_frees({{"s", "q2"}, {"r", "p2"}})
                   .contract("p2", "q2"));
    CHECK(x1 == x2);

    // atom order in a product does not matter for grade-0 atoms
    auto p1 = atom(f, "w_lo", {"a"}) * atom(f, "wb_lo", {"bb"});
    auto p2 = atom(f, "wb_lo", {"bb"}) * atom(f, "w_lo", {"a"});
    CHECK(p1 == p2);
}

TEST_CASE("kronecker and levi absorption") {
    auto f = make_fix();
    const auto n = ScalarExpr(DimRational::var());

    // full self-trace of the kronecker delta is the dimension
    CHECK(atom(f, "delta", {"a", "b"}).contract("a", "b") == TensorExpr::scalar(f.alg, n));
    // mixed-presentation levi form is a kronecker delta
    CHECK(atom(f, "h", {"a", "b"}, 0b10) == atom(f, "delta", {"a", "b"}));
    CHECK(atom(f, "h", {"a", "b"}, 0b01) == atom(f, "deltab", {"a", "b"}));
    // h^{ab'} h_{ab'} = n
    auto hup = atom(f, "h", {"a", "bb"}, 0b11);
    auto hdn = atom(f, "h", {"a2", "bb2"});
    CHECK((hup * hdn).contract("a", "bb2").contract("bb", "a2") == TensorExpr::scalar(f.alg, n));
    // h_{ab'} h^{b'g} = delta_a^g (the raised antihol slot of h~3 is slot 0)
    auto mixed = (atom(f, "h", {"a", "bb"}) * atom(f, "h", {"x", "g"}, 0b11)).contract("bb", "x");
    CHECK(mixed == atom(f, "delta", {"a", "g"}));
    // lowering a vector index through h
    auto low = (atom(f, "h", {"a", "bb"}) * atom(f, "w_lo", {"m"}, 1)).contract("bb", "m");
    CHECK(low == atom(f, "w_lo", {"a"}));
}

TEST_CASE("contraction presented antiholomorphically equals its holomorphic form") {
    auto f = make_fix();
    f.alg->add_atom("U2", {kHolDn, kAntiDn}, 0);
    auto hol_pair = (atom(f, "U2", {"m", "bb"}) * atom(f, "w_lo", {"x"}, 1)).contract("bb", "x");
    auto anti_pair = (atom(f, "U2", {"m", "bb"}).flip_free("bb") * atom(f, "w_lo", {"x"})).contract("bb", "x");
    CHECK(hol_pair == anti_pair);
}

TEST_CASE("conjugation is an involution and distributes over products") {
    auto f = make_fix();
    auto dw = grad_form(f);
    auto dwb = conj_grad_form(f);
    CHECK(dw.conj() == dwb);
    CHECK(dwb.conj() == dw);

    auto s = atom(f, "S", {"a", "bb", "g", "sb"});
    CHECK(s.conj().conj() == s);
    auto v = atom(f, "V", {"a", "bb", "g"});
    CHECK(v.conj().conj() == v);

    auto prod = s * dw;
    CHECK(prod.conj().conj() == prod);
    CHECK(prod.conj() == s.conj() * dw.conj());

    // i conjugates to -i alongside the atoms
    auto x = ScalarExpr::i() * dw;
    CHECK(x.conj() == -(ScalarExpr::i() * dwb));
}

TEST_CASE("free index types are tracked through flips and renames") {
    auto f = make_fix();
    auto s = atom(f, "S", {"a", "bb", "g", "sb"});
    CHECK(s.frees().at("a") == kHolDn);
    CHECK(s.frees().at("bb") == kAntiDn);
    auto fl = s.flip_free("bb");
    CHECK(fl.frees().at("bb") == kHolUp);
    auto rn = fl.rename_frees({{"bb", "mu"}});
    CHECK(rn.frees().count("bb") == 0);
    CHECK(rn.frees().at("mu") == kHolUp);
    CHECK(rn.flip_free("mu") == s.rename_frees({{"bb", "mu"}}));
}

TEST_CASE("renormalizing in shuffled rule order reproduces the canonical form") {
    auto f = make_fix();
    auto dw = grad_form(f);
    auto dwb = conj_grad_form(f);
    auto s = atom(f, "S", {"a", "bb", "g", "sb"});
    auto strace = s.flip_free("sb").contract("g", "sb");
    auto wsq = (atom(f, "w_lo", {"m"}) * atom(f, "wb_lo", {"x"}, 1)).contract("m", "x");
    std::vector<pherm::tensorlang::TensorExpr> zoo{
        dw * dwb,
        s * dw * dwb,
        strace,
        wsq,
        wsq * wsq + f.sym("c") * strace.rename_frees({{"a", "x"}, {"bb", "y"}})
            .flip_free("y").contract("x", "y") * dw * dwb,
        (s.flip_free("bb").contract("a", "bb").flip_free("sb").contract("g", "sb")) * dw,
    };
    std::mt19937 rng(20260822);
    for (const auto& e : zoo)
        for (int rep = 0; rep < 8; ++rep) CHECK(e.renormalize_shuffled(rng) == e);
}

TEST_CASE("self traces inside a single atom resolve") {
    auto f = make_fix();
    auto s = atom(f, "S", {"a", "bb", "g", "sb"});
    auto tr = s.flip_free("bb").contract("a", "bb");
    CHECK_FALSE(tr.is_zero());
    CHECK(tr.frees().count("g") == 1);
    CHECK(tr.frees().count("sb") == 1);
    // trace the remaining pair too: still one canonical term
    auto tr2 = tr.flip_free("sb").contract("g", "sb");
    CHECK(tr2.size() == 1);
    CHECK(tr2.frees().empty());
}
