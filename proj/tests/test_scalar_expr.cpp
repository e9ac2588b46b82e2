#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pherm/symkernel/scalar_expr.hpp"

#include <memory>
#include <random>

using namespace pherm::symkernel;

namespace {
SymbolTablePtr make_table() {
    auto t = std::make_shared<SymbolTable>();
    t->add("c");
    t->add_pair("w", "wb");
    t->add("t");
    return t;
}

ScalarExpr rand_expr(const SymbolTablePtr& table, std::mt19937& rng) {
    std::uniform_int_distribution<int> nterms(0, 4), expd(0, 2), coeff(-5, 5);
    ScalarExpr e(table);
    int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
        ScalarExpr mono(DimComplex(DimRational(coeff(rng)), DimRational(coeff(rng))));
        for (int s = 0; s < table->size(); ++s) mono *= ScalarExpr::symbol(table, s, expd(rng));
        e += mono;
    }
    return e;
}
}  // namespace

TEST_CASE("ring axioms and normalization") {
    auto table = make_table();
    std::mt19937 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        ScalarExpr a = rand_expr(table, rng), b = rand_expr(table, rng), c = rand_expr(table, rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a - a == ScalarExpr(0));
        CHECK((a - a).is_zero());
    }
}

TEST_CASE("zero coefficients are never stored") {
    auto table = make_table();
    ScalarExpr c = ScalarExpr::symbol(table, "c");
    ScalarExpr e = c * ScalarExpr(2) - c - c;
    CHECK(e.terms().empty());
}

TEST_CASE("conjugation swaps paired symbols and conjugates coefficients") {
    auto table = make_table();
    ScalarExpr w = ScalarExpr::symbol(table, "w");
    ScalarExpr wb = ScalarExpr::symbol(table, "wb");
    ScalarExpr c = ScalarExpr::symbol(table, "c");
    ScalarExpr e = ScalarExpr::i() * w * w * c;
    CHECK(e.conj() == -ScalarExpr::i() * wb * wb * c);
    CHECK(e.conj().conj() == e);
}

TEST_CASE("substitution is simultaneous") {
    auto table = make_table();
    ScalarExpr w = ScalarExpr::symbol(table, "w");
    ScalarExpr wb = ScalarExpr::symbol(table, "wb");
    std::map<int, ScalarExpr> swap{{table->require("w"), wb}, {table->require("wb"), w}};
    ScalarExpr e = w * w + wb;
    CHECK(e.substitute(swap) == wb * wb + w);
}

TEST_CASE("pair reduction terminates and eliminates the pair") {
    auto table = make_table();
    int iw = table->require("w"), iwb = table->require("wb"), ic = table->require("c");
    ScalarExpr w = ScalarExpr::symbol(table, "w");
    ScalarExpr wb = ScalarExpr::symbol(table, "wb");
    ScalarExpr c = ScalarExpr::symbol(table, "c");
    DimRational n = DimRational::var();
    // w*wb -> 1 + (n+1) c
    ScalarExpr rep = ScalarExpr(1) + ScalarExpr(DimRational(n + DimRational(1))) * c;
    ScalarExpr e = (w * wb).pow(2) * c + w * wb * w;
    ScalarExpr red = e.reduce_pair(iw, iwb, rep);
    CHECK(red.degree_in(iw) == 1);  // the unpaired w survives
    CHECK(red.degree_in(iwb) == 0);
    CHECK(red == rep.pow(2) * c + rep * w);
    CHECK(red.degree_in(ic) == 3);
}

TEST_CASE("specialize_n evaluates coefficients exactly") {
    auto table = make_table();
    ScalarExpr c = ScalarExpr::symbol(table, "c");
    DimRational n = DimRational::var();
    ScalarExpr e = ScalarExpr((n * n - DimRational(1)) / (n + DimRational(1))) * c;
    ScalarExpr at3 = e.specialize_n(Rational(3));
    CHECK(at3 == ScalarExpr(2) * c);
    ScalarExpr pole = ScalarExpr(DimRational(1) / (n - DimRational(2))) * c;
    CHECK_THROWS_AS(pole.specialize_n(Rational(2)), std::domain_error);
}

TEST_CASE("exact and floating evaluation agree") {
    auto table = make_table();
    std::mt19937 rng(100);
    std::uniform_int_distribution<long long> val(-4, 4);
    for (int trial = 0; trial < 50; ++trial) {
        ScalarExpr e = rand_expr(table, rng);
        std::map<int, DimComplex> exact;
        std::map<int, std::complex<double>> fl;
        for (int s = 0; s < table->size(); ++s) {
            Rational re(val(rng)), im(val(rng));
            exact[s] = DimComplex(DimRational(re), DimRational(im));
            fl[s] = {re.to_double(), im.to_double()};
        }
        DimComplex ev = e.specialize_n(Rational(3)).eval_exact(exact);
        std::complex<double> fv = e.eval_double(3.0, fl);
        CHECK(ev.re().constant_value().to_double() == doctest::Approx(fv.real()).epsilon(1e-12));
        CHECK(ev.im().constant_value().to_double() == doctest::Approx(fv.imag()).epsilon(1e-12));
    }
}

TEST_CASE("table mismatch is an error") {
    auto t1 = make_table(), t2 = make_table();
    ScalarExpr a = ScalarExpr::symbol(t1, "c"), b = ScalarExpr::symbol(t2, "c");
    CHECK_THROWS_AS(a + b, std::invalid_argument);
    CHECK_NOTHROW(a + ScalarExpr(5));  // constants mix with anything
}
