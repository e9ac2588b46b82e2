#include "pherm/crcalc/theta.hpp"

#include "pherm/exterior/endo_matrix.hpp"
#include "pherm/tensorlang/bridge.hpp"
#include "pherm/tensorlang/endo.hpp"

#include <stdexcept>

namespace pherm::crcalc {

using exterior::EndoFormMatrix;
using exterior::Form;
using symkernel::ScalarExpr;
using symkernel::SymbolTable;
using tensorlang::AtomInst;
using tensorlang::ConcreteMap;
using tensorlang::Kind;
using tensorlang::SlotType;
using tensorlang::TensorExpr;
using tensorlang::Var;

namespace {

constexpr SlotType kHolDn{Kind::Hol, Var::Down};
constexpr SlotType kHolUp{Kind::Hol, Var::Up};
constexpr SlotType kAntiDn{Kind::AntiHol, Var::Down};
constexpr SlotType kAntiUp{Kind::AntiHol, Var::Up};

}  // namespace

ThetaContext make_theta_context() {
    ThetaContext ctx;
    ctx.table = std::make_shared<SymbolTable>();
    auto a = std::make_shared<tensorlang::Algebra>(ctx.table);

    int h = a->add_atom("h", {kHolDn, kAntiDn}, 0);
    int dl = a->add_atom("delta", {kHolDn, kHolUp}, 0);
    int dlb = a->add_atom("deltab", {kAntiUp, kAntiDn}, 0);
    a->set_self_conjugate(h, {1, 0}, 0);
    a->set_conjugates(dl, dlb, {1, 0}, 0);
    a->set_levi(h, dl, dlb);

    int thu = a->add_atom("th_up", {kHolUp}, 1);
    int thd = a->add_atom("th_dn", {kHolDn}, 1);
    a->set_conjugates(thu, thd, {0}, 1u);
    int tl = a->add_atom("tau_lo", {kHolDn}, 1);
    int tbl = a->add_atom("taub_lo", {kAntiDn}, 1);
    a->set_conjugates(tl, tbl, {0}, 0);

    // Symmetry of the torsion coefficients enters through both exchange
    // contractions vanishing.
    a->add_contraction_rule("th_up", false, "tau_lo", false, ScalarExpr(0));
    a->add_contraction_rule("taub_lo", true, "th_dn", false, ScalarExpr(0));

    ctx.alg = a;
    ScalarExpr i_ = ScalarExpr::i();
    TensorExpr th_dn_al = TensorExpr::atom(a, "th_dn", {"al"});
    TensorExpr tau_up_be = TensorExpr::atom(a, "taub_lo", {"be"}, 1u);
    TensorExpr tau_lo_al = TensorExpr::atom(a, "tau_lo", {"al"});
    TensorExpr th_up_be = TensorExpr::atom(a, "th_up", {"be"});
    ctx.Theta = i_ * (th_dn_al * tau_up_be) - i_ * (tau_lo_al * th_up_be);
    ctx.dtheta =
        i_ * (TensorExpr::atom(a, "th_up", {"g1"}) * TensorExpr::atom(a, "th_dn", {"g2"}))
                 .contract("g1", "g2");
    ctx.tau_pair =
        (TensorExpr::atom(a, "taub_lo", {"g1"}, 1u) * TensorExpr::atom(a, "tau_lo", {"g2"}))
            .contract("g1", "g2");
    return ctx;
}

TensorExpr theta_power_display(const ThetaContext& ctx, int k) {
    if (k < 1) throw std::invalid_argument("theta_power_display: k must be >= 1");
    ScalarExpr i_ = ScalarExpr::i();
    TensorExpr block = (-i_) * (ctx.tau_pair * ctx.dtheta);
    auto block_pow = [&](int s) {
        TensorExpr r = TensorExpr::scalar(ctx.alg, ScalarExpr(1));
        for (int t = 0; t < s; ++t) r *= block;
        return r;
    };
    if (k % 2 == 1) return block_pow((k - 1) / 2) * ctx.Theta;
    TensorExpr th_dn_al = TensorExpr::atom(ctx.alg, "th_dn", {"al"});
    TensorExpr th_up_be = TensorExpr::atom(ctx.alg, "th_up", {"be"});
    TensorExpr tau_lo_al = TensorExpr::atom(ctx.alg, "tau_lo", {"al"});
    TensorExpr tau_up_be = TensorExpr::atom(ctx.alg, "taub_lo", {"be"}, 1u);
    TensorExpr core = ctx.tau_pair * th_dn_al * th_up_be - i_ * (tau_lo_al * tau_up_be * ctx.dtheta);
    return block_pow(k / 2 - 1) * core;
}

namespace {

/// Concrete map with a generic symmetric torsion: tau_g = sum_d a_{gd} th^d
/// with a_{gd} = a_{dg} symbolic; the conjugate uses the paired symbols.
ConcreteMap torsion_map(const ThetaContext& ctx, int n,
                        const symkernel::SymbolTablePtr& coeffs,
                        const std::vector<std::vector<int>>& a_ids) {
    ConcreteMap m = tensorlang::levi_identity_map(ctx.alg, n);
    auto alg = ctx.alg;
    m.form_value = [alg, n, coeffs, a_ids](const AtomInst& inst,
                                           const std::vector<int>& idx) -> Form<ScalarExpr> {
        const std::string& nm = alg->atom(inst.def).name;
        if (nm == "th_up") return Form<ScalarExpr>::hol(n, idx[0]);
        if (nm == "th_dn") return Form<ScalarExpr>::antihol(n, idx[0]);
        if (nm == "tau_lo") {
            Form<ScalarExpr> f(n);
            for (int d = 1; d <= n; ++d)
                f += ScalarExpr::symbol(coeffs, a_ids[static_cast<size_t>(idx[0] - 1)][static_cast<size_t>(d - 1)]) *
                     Form<ScalarExpr>::hol(n, d);
            return f;
        }
        if (nm == "taub_lo") {
            Form<ScalarExpr> f(n);
            for (int d = 1; d <= n; ++d)
                f += ScalarExpr::symbol(coeffs, a_ids[static_cast<size_t>(idx[0] - 1)][static_cast<size_t>(d - 1)] + 1) *
                     Form<ScalarExpr>::antihol(n, d);
            return f;
        }
        throw std::logic_error("torsion_map: unexpected grade-1 atom " + nm);
    };
    return m;
}

std::string side_str(const TensorExpr& e) { return e.str(); }

}  // namespace

SuiteResult theta_power_suite(int s_max, const std::vector<int>& concrete_ns) {
    SuiteResult suite;
    suite.suite = "theta-powers";
    ThetaContext ctx = make_theta_context();

    int k_max = 2 * s_max + 1;
    TensorExpr pow = ctx.Theta;
    for (int k = 1; k <= k_max; ++k) {
        WallTimer t;
        if (k > 1) pow = tensorlang::endo_mul(pow, ctx.Theta);
        TensorExpr rhs = theta_power_display(ctx, k);
        bool ok = pow == rhs;
        std::string anchor =
            k % 2 ? "Theta^" + std::to_string(k) + " = (-i tau^g tau_g dtheta)^" +
                        std::to_string((k - 1) / 2) + " Theta"
                  : "Theta^" + std::to_string(k) + " = (-i tau^g tau_g dtheta)^" +
                        std::to_string(k / 2 - 1) +
                        " (tau^r tau_r theta_al theta^be - i tau_al tau^be dtheta)";
        suite.cases.push_back(make_case("theta-pow-" + std::to_string(k), anchor, ok, side_str(rhs),
                                        side_str(pow), ok ? "0" : "nonzero difference", t.ms()));
    }

    for (int n : concrete_ns) {
        WallTimer t;
        // Generic symmetric torsion coefficients a_{gd} over dimension n.
        auto coeffs = std::make_shared<SymbolTable>();
        std::vector<std::vector<int>> a_ids(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), -1));
        for (int g = 1; g <= n; ++g)
            for (int d = g; d <= n; ++d) {
                std::string base = "a" + std::to_string(g) + std::to_string(d);
                int id = coeffs->add_pair(base, base + "b");
                a_ids[static_cast<size_t>(g - 1)][static_cast<size_t>(d - 1)] = id;
                a_ids[static_cast<size_t>(d - 1)][static_cast<size_t>(g - 1)] = id;
            }
        ConcreteMap m = torsion_map(ctx, n, coeffs, a_ids);

        // Wedge the concrete matrix directly; compare against the bridged
        // closed form entry by entry.
        EndoFormMatrix<ScalarExpr> theta_mat(n);
        for (int r = 1; r <= n; ++r)
            for (int c = 1; c <= n; ++c)
                theta_mat.at(r - 1, c - 1) =
                    eval_concrete(ctx.Theta, m, {{"al", r}, {"be", c}});
        bool ok = true;
        EndoFormMatrix<ScalarExpr> pw = theta_mat;
        for (int k = 1; k <= k_max && ok; ++k) {
            if (k > 1) pw = mat_mul(pw, theta_mat);
            TensorExpr rhs = theta_power_display(ctx, k);
            for (int r = 1; r <= n && ok; ++r)
                for (int c = 1; c <= n && ok; ++c)
                    ok = pw.at(r - 1, c - 1) == eval_concrete(rhs, m, {{"al", r}, {"be", c}});
        }
        suite.cases.push_back(make_case(
            "theta-pow-concrete-n" + std::to_string(n),
            "wedge powers of Theta match the closed form for a generic symmetric torsion, n=" +
                std::to_string(n),
            ok, "entrywise equality for k=1.." + std::to_string(k_max), ok ? "equal" : "mismatch",
            ok ? "0" : "nonzero difference", t.ms()));
    }
    return suite;
}

}  // namespace pherm::crcalc
