#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "pherm/crcalc/theta.hpp"
#include "pherm/tensorlang/endo.hpp"

using namespace pherm::crcalc;
using pherm::tensorlang::endo_mul;
using pherm::tensorlang::endo_trace;
using pherm::tensorlang::TensorExpr;

TEST_CASE("exchange rules") {
    ThetaContext ctx = make_theta_context();
    auto alg = ctx.alg;
    // theta^g tau_g and tau^g theta_g both vanish.
    TensorExpr a = (TensorExpr::atom(alg, "th_up", {"x"}) * TensorExpr::atom(alg, "tau_lo", {"y"}))
                       .contract("x", "y");
    CHECK(a.is_zero());
    TensorExpr b =
        (TensorExpr::atom(alg, "taub_lo", {"x"}, 1u) * TensorExpr::atom(alg, "th_dn", {"y"}))
            .contract("x", "y");
    CHECK(b.is_zero());
}

TEST_CASE("square") {
    ThetaContext ctx = make_theta_context();
    TensorExpr sq = endo_mul(ctx.Theta, ctx.Theta);
    CHECK(sq == theta_power_display(ctx, 2));
    CHECK(!sq.is_zero());
}

TEST_CASE("power suite symbolic and concrete") {
    SuiteResult s = theta_power_suite(3, {2, 3});
    for (const auto& c : s.cases) {
        INFO(c.id, ": ", c.anchor);
        CHECK(c.status == "pass");
    }
    CHECK(s.cases.size() == 9);  // k=1..7 symbolic plus two concrete dimensions
}

TEST_CASE("trace of odd powers vanishes") {
    // tr Theta^{2s+1} contracts theta against tau and dies by the exchange
    // rules; check s=0,1.
    ThetaContext ctx = make_theta_context();
    CHECK(endo_trace(ctx.Theta).is_zero());
    CHECK(endo_trace(theta_power_display(ctx, 3)).is_zero());
}
