#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pherm/exterior/endo_matrix.hpp"
#include "pherm/symkernel/scalar_expr.hpp"

#include <random>

using namespace pherm::exterior;
using namespace pherm::symkernel;

namespace {

using SForm = Form<ScalarExpr>;
using SMat = EndoFormMatrix<ScalarExpr>;

SMat rand_matrix(int n, int grade, std::mt19937& rng) {
    std::uniform_int_distribution<long long> coeff(-3, 3);
    SMat m(n);
    int gens = 2 * n + 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            SForm f(n);
            for (uint32_t mask = 0; mask < (1u << gens); ++mask) {
                if (std::popcount(mask) != grade) continue;
                long long c = coeff(rng);
                if (c != 0) f.add(mask, ScalarExpr(c));
            }
            m.at(i, j) = f;
        }
    return m;
}

}  // namespace

TEST_CASE("matrix product is associative and grade adds") {
    std::mt19937 rng(555);
    int n = 2;
    SMat a = rand_matrix(n, 1, rng), b = rand_matrix(n, 1, rng), c = rand_matrix(n, 2, rng);
    CHECK(mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c)));
    CHECK(mat_mul(a, b).grade() == 2);
    CHECK(mat_power(c, 2).grade() == 4);
}

TEST_CASE("cyclic trace with graded sign") {
    std::mt19937 rng(556);
    int n = 3;
    for (int ga = 1; ga <= 2; ++ga)
        for (int gb = 1; gb <= 2; ++gb) {
            SMat a = rand_matrix(n, ga, rng), b = rand_matrix(n, gb, rng);
            SForm tab = trace(mat_mul(a, b));
            SForm tba = trace(mat_mul(b, a));
            if ((ga * gb) % 2 == 0)
                CHECK(tab == tba);
            else
                CHECK(tab == -tba);
        }
}

TEST_CASE("char_form with only first traces is a trace power") {
    std::mt19937 rng(557);
    int n = 2;
    SMat m = rand_matrix(n, 2, rng);
    std::vector<int> sigma{2};  // (tr M)^2
    CHECK(char_form(sigma, m) == trace(m) * trace(m));
    std::vector<int> sigma2{0, 1};  // tr M^2
    CHECK(char_form(sigma2, m) == trace(mat_power(m, 2)));
}

TEST_CASE("identity-like matrix powers") {
    int n = 2;
    SMat id2(n);
    SForm dt(n);
    for (int a = 1; a <= n; ++a) dt += SForm::hol(n, a) * SForm::antihol(n, a);
    for (int i = 0; i < n; ++i) id2.at(i, i) = dt;  // grade-2 scalar multiple of identity
    SMat p = mat_power(id2, 2);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j)
                CHECK(p.at(i, j) == dt * dt);
            else
                CHECK(p.at(i, j).is_zero());
        }
    CHECK(trace(p) == dt * dt + dt * dt);
}
