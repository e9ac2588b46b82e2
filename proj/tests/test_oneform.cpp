#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pherm/crcalc/oneform.hpp"

using namespace pherm::crcalc;
using pherm::symkernel::Rational;
using pherm::symkernel::CRational;
using pherm::symkernel::ScalarExpr;
using pherm::exterior::EndoFormMatrix;
using pherm::exterior::Form;

namespace {

void check_suite(const SuiteResult& s, size_t expect_cases) {
    for (const auto& c : s.cases) {
        INFO(c.id, ": ", c.anchor);
        CHECK(c.status == "pass");
    }
    CHECK(s.cases.size() == expect_cases);
}

}  // namespace

TEST_CASE("gradient frame sanity") {
    PerturbationContext ctx = make_perturbation_context();
    GradientFrame fr = make_gradient_frame(ctx, 2);
    // dtheta bridges to i sum_g theta^g theta_g.
    Form<ScalarExpr> expect(2);
    for (int g = 1; g <= 2; ++g)
        expect += ScalarExpr::i() * (Form<ScalarExpr>::hol(2, g) * Form<ScalarExpr>::antihol(2, g));
    CHECK(fr.dtheta == expect);
    // The scalar invariant value matches its defining contraction.
    ScalarExpr c_expect = ScalarExpr(Rational(-1, 3)) * (fr.a(1) * fr.b(1) + fr.a(2) * fr.b(2));
    CHECK(fr.c_val == c_expect);
    // The curvature rate bridges to a nonzero trace-free matrix of two-forms.
    EndoFormMatrix<ScalarExpr> cmat = bridge_endo(ctx.Cdot, fr);
    CHECK(!trace(mat_power(cmat, 2)).is_zero());
    CHECK(trace(cmat).is_zero());
}

TEST_CASE("mixed pairing on explicit diagonal matrices") {
    // Y = diag(u, v) of commuting two-form generators, Z = diag(z1, z2):
    // at sigma=(0,1) the opened pairing is tr(YZ) = u z1 + v z2.
    int n = 2;
    EndoFormMatrix<CRational> y(n), z(n);
    Form<CRational> u = Form<CRational>::hol(n, 1) * Form<CRational>::antihol(n, 1);
    Form<CRational> v = Form<CRational>::hol(n, 2) * Form<CRational>::antihol(n, 2);
    Form<CRational> z1 = Form<CRational>::hol(n, 2);
    Form<CRational> z2 = Form<CRational>::antihol(n, 1);
    y.at(0, 0) = u;
    y.at(1, 1) = v;
    z.at(0, 0) = z1;
    z.at(1, 1) = z2;
    CHECK(char_pairing_mixed({0, 1}, y, z) == u * z1 + v * z2);
    CHECK(char_pairing_mixed_traces({0, 1}, y, z) == u * z1 + v * z2);
    CHECK(char_pairing({0, 1}, y) == char_form({0, 1}, y));
}

TEST_CASE("oneform rate suite at n=2 and n=3") {
    SuiteResult s = oneform_rate_suite({{2, {0, 1}}, {3, {0, 0, 1}}});
    // 2 global cases, 14 per dimension plus 2 extra n=2 examples.
    check_suite(s, 32);
}

TEST_CASE("divergence rate polynomial is nonzero and degree 2n") {
    PerturbationContext ctx = make_perturbation_context();
    ScalarExpr div2 = divergence_rate_polynomial(ctx, 2, {0, 1});
    CHECK(!div2.is_zero());
    CHECK(div2.total_degree() == 4);
    ScalarExpr div3 = divergence_rate_polynomial(ctx, 3, {0, 0, 1});
    CHECK(!div3.is_zero());
    CHECK(div3.total_degree() == 6);
}
