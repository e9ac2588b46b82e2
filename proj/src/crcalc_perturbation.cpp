#include "pherm/crcalc/perturbation.hpp"

#include "pherm/tensorlang/endo.hpp"

#include <stdexcept>
#include <string>

namespace pherm::crcalc {

using symkernel::DimRational;
using symkernel::ScalarExpr;
using symkernel::SymbolTable;
using tensorlang::AtomInst;
using tensorlang::endo_mul;
using tensorlang::endo_trace;
using tensorlang::Kind;
using tensorlang::Label;
using tensorlang::SkeletonTerm;
using tensorlang::SlotType;
using tensorlang::TensorExpr;
using tensorlang::Var;

namespace {

constexpr SlotType kHolDn{Kind::Hol, Var::Down};
constexpr SlotType kHolUp{Kind::Hol, Var::Up};
constexpr SlotType kAntiDn{Kind::AntiHol, Var::Down};
constexpr SlotType kAntiUp{Kind::AntiHol, Var::Up};

DimRational nvar() { return DimRational::var(); }

DimRational dpow(const DimRational& b, int e) { return b.pow(e); }

/// (-n)^k as an exact polynomial.
DimRational neg_n_pow(int k) { return dpow(-nvar(), k); }

}  // namespace

PerturbationContext make_perturbation_context() {
    PerturbationContext ctx;
    auto tb = std::make_shared<SymbolTable>();
    ctx.w = tb->add_pair("w", "wb");
    ctx.wb = ctx.w + 1;
    ctx.c = tb->add("c");
    ctx.table = tb;
    auto a = std::make_shared<tensorlang::Algebra>(tb);

    int h = a->add_atom("h", {kHolDn, kAntiDn}, 0);
    int dl = a->add_atom("delta", {kHolDn, kHolUp}, 0);
    int dlb = a->add_atom("deltab", {kAntiUp, kAntiDn}, 0);
    a->set_self_conjugate(h, {1, 0}, 0);
    a->set_conjugates(dl, dlb, {1, 0}, 0);
    a->set_levi(h, dl, dlb);

    int wl = a->add_atom("w_lo", {kHolDn}, 0);
    int wbl = a->add_atom("wb_lo", {kAntiDn}, 0);
    a->set_conjugates(wl, wbl, {0}, 0);

    int thu = a->add_atom("th_up", {kHolUp}, 1);
    int thd = a->add_atom("th_dn", {kHolDn}, 1);
    a->set_conjugates(thu, thd, {0}, 1u);

    ScalarExpr cs = ScalarExpr::symbol(tb, "c");
    ScalarExpr ws = ScalarExpr::symbol(tb, "w");
    ScalarExpr wbs = ScalarExpr::symbol(tb, "wb");
    ScalarExpr np1(nvar() + DimRational(1));
    ScalarExpr inv_np1(DimRational(1) / (nvar() + DimRational(1)));

    // Gradient pair contraction and the defining function pair rule.
    a->add_contraction_rule("wb_lo", true, "w_lo", false, -(np1 * cs));
    a->add_pair_rule("w", "wb", ScalarExpr(1) + np1 * cs);

    auto wl_of = [&](const char* l) { return AtomInst{wl, 0, {Label::free_name(l)}}; };
    auto wbl_of = [&](const char* l) { return AtomInst{wbl, 0, {Label::free_name(l)}}; };
    a->add_symbol_derivative("c", Kind::Hol, {SkeletonTerm{inv_np1 * wbs, {wl_of("%d")}}});
    a->add_symbol_derivative("c", Kind::AntiHol, {SkeletonTerm{inv_np1 * ws, {wbl_of("%d")}}});
    a->add_symbol_derivative("w", Kind::Hol, {SkeletonTerm{ScalarExpr(1), {wl_of("%d")}}});
    a->add_symbol_derivative("w", Kind::AntiHol, {});
    a->add_symbol_derivative("wb", Kind::Hol, {});
    a->add_symbol_derivative("wb", Kind::AntiHol, {SkeletonTerm{ScalarExpr(1), {wbl_of("%d")}}});
    a->add_atom_derivative("w_lo", Kind::Hol, {});
    a->add_atom_derivative(
        "w_lo", Kind::AntiHol,
        {SkeletonTerm{-ws, {AtomInst{h, 0, {Label::free_name("%0"), Label::free_name("%d")}}}}});
    a->add_atom_derivative("wb_lo", Kind::AntiHol, {});
    a->add_atom_derivative(
        "wb_lo", Kind::Hol,
        {SkeletonTerm{-wbs, {AtomInst{h, 0, {Label::free_name("%d"), Label::free_name("%0")}}}}});
    for (const char* name : {"h", "delta", "deltab"}) {
        a->add_atom_derivative(name, Kind::Hol, {});
        a->add_atom_derivative(name, Kind::AntiHol, {});
    }

    ctx.alg = a;
    ctx.w_sym = ws;
    ctx.wb_sym = wbs;
    ctx.c_sym = cs;

    ScalarExpr i_ = ScalarExpr::i();
    auto atom = [&](const char* nm, std::vector<std::string> ls, uint32_t flips = 0) {
        return TensorExpr::atom(a, nm, ls, flips);
    };

    // Rates at the round sphere: Sdot is the doubly trace-free part of
    // w w' w w' and Vdot the trace-free part of w w' w scaled by wbar.
    TensorExpr wwww = atom("w_lo", {"al"}) * atom("wb_lo", {"bb"}) * atom("w_lo", {"g"}) *
                      atom("wb_lo", {"sb"});
    ctx.Sdot = tf4(wwww, "al", "bb", "g", "sb");
    TensorExpr www = atom("w_lo", {"al"}) * atom("wb_lo", {"bb"}) * atom("w_lo", {"g"});
    ScalarExpr vcoef = ScalarExpr(-((nvar() + 3) / (nvar() + 2)));
    ctx.Vdot = (vcoef * i_ * wbs) * tf3(www, "al", "bb", "g");

    ctx.dtheta = i_ * (atom("th_up", {"g1"}) * atom("th_dn", {"g2"})).contract("g1", "g2");
    ctx.pw = (atom("w_lo", {"g1"}) * atom("th_up", {"g2"})).contract("g1", "g2");
    ctx.pwb = (atom("wb_lo", {"g1"}) * atom("th_dn", {"g2"}, 1u)).contract("g1", "g2");

    // Cdot_al{}^be = i Sdot_al{}^be{}_m{}^nu theta^m theta_nu.
    TensorExpr s_raised = ctx.Sdot.flip_free("bb").flip_free("sb").rename_frees(
        {{"bb", "be"}, {"g", "m1"}, {"sb", "n1"}});
    ctx.Cdot = i_ * ((s_raised * atom("th_up", {"m2"}) * atom("th_dn", {"n2"}))
                         .contract("m1", "m2")
                         .contract("n1", "n2"));
    // Vcal_al{}^be = Vdot_al{}^be{}_m theta^m.
    TensorExpr v_raised = ctx.Vdot.flip_free("bb").rename_frees({{"bb", "be"}, {"g", "m1"}});
    ctx.Vcal = (v_raised * atom("th_up", {"m2"})).contract("m1", "m2");

    TensorExpr w_al = atom("w_lo", {"al"});
    TensorExpr wb_up_be = atom("wb_lo", {"be"}, 1u);
    TensorExpr th_up_be = atom("th_up", {"be"});
    TensorExpr th_dn_al = atom("th_dn", {"al"});
    ctx.W = i_ * (w_al * wb_up_be * ctx.pw * ctx.pwb);
    ctx.Psi = w_al * wb_up_be * ctx.dtheta + i_ * (w_al * th_up_be * ctx.pwb) +
              i_ * (wb_up_be * ctx.pw * th_dn_al);
    ctx.M = i_ * cs * (th_up_be * th_dn_al);
    ctx.Pcal = ctx.Psi + ctx.M +
               atom("delta", {"al", "be"}) * (i_ * (ctx.pw * ctx.pwb) + cs * ctx.dtheta);
    return ctx;
}

namespace {

TensorExpr dtheta_pow(const PerturbationContext& ctx, int j) {
    TensorExpr r = TensorExpr::scalar(ctx.alg, ScalarExpr(1));
    for (int t = 0; t < j; ++t) r *= ctx.dtheta;
    return r;
}

/// Accumulates coef * i^ipow * c^cpow * body * dtheta^dthpow, dropping
/// negative dtheta powers per the display convention. A negative c power
/// with a nonzero coefficient would be a formula transcription bug.
void add_term(const PerturbationContext& ctx, TensorExpr& acc, const DimRational& coef, int ipow,
              int cpow, const TensorExpr& body, int dthpow) {
    if (coef.is_zero()) return;
    if (dthpow < 0) return;
    if (cpow < 0) throw std::logic_error("add_term: negative scalar power with nonzero coefficient");
    ScalarExpr s(coef);
    for (int t = 0; t < ipow % 4; ++t) s *= ScalarExpr::i();
    s *= ctx.c_sym.pow(cpow);
    acc += s * (body * dtheta_pow(ctx, dthpow));
}

}  // namespace

TensorExpr psi_plus_m_power_display(const PerturbationContext& ctx, int k) {
    if (k < 1) throw std::invalid_argument("psi_plus_m_power_display: k must be >= 1");
    DimRational n = nvar();
    TensorExpr acc = TensorExpr::zero(ctx.alg);
    TensorExpr m_pw_pwb = ctx.M * ctx.pw * ctx.pwb;
    // (Psi+M)^k = (-c)^{k-2} [ (k-1)(n+1)^{k-2} W dth - (n+1)^{k-1} c Psi dth
    //             - c M dth + ((n+1)^{k-1} - k) i M pw pwb ] dth^{k-2}.
    DimRational sgn = dpow(DimRational(-1), k);  // (-1)^{k-2} = (-1)^k
    add_term(ctx, acc, DimRational(k - 1) * dpow(n + 1, k - 2) * sgn, 0, k >= 2 ? k - 2 : 0, ctx.W,
             k - 1);
    add_term(ctx, acc, -dpow(n + 1, k - 1) * sgn, 0, k - 1, ctx.Psi, k - 1);
    add_term(ctx, acc, -sgn, 0, k - 1, ctx.M, k - 1);
    add_term(ctx, acc, (dpow(n + 1, k - 1) - DimRational(k)) * sgn, 1, k >= 2 ? k - 2 : 0,
             m_pw_pwb, k - 2);
    return acc;
}

TensorExpr pcal_power_display(const PerturbationContext& ctx, int k) {
    if (k < 1) throw std::invalid_argument("pcal_power_display: k must be >= 1");
    DimRational n = nvar();
    TensorExpr delta = TensorExpr::atom(ctx.alg, "delta", {"al", "be"});
    TensorExpr acc = TensorExpr::zero(ctx.alg);
    TensorExpr m_pw_pwb = ctx.M * ctx.pw * ctx.pwb;
    TensorExpr d_pw_pwb = delta * ctx.pw * ctx.pwb;
    DimRational mk = neg_n_pow(k);
    // Pcal^k = c^{k-2} [ c^2 delta dth^2 + i k c delta pw pwb dth
    //          - ((-n)^k - 1)/(n+1) c Psi dth + c M dth
    //          + ((-n)^k - 1 + k(n+1))/(n+1) i M pw pwb
    //          + (k(1 - 2(-n)^{k-1})/(n+1) + (1 - (-n)^k)/(n+1)^2) W dth ] dth^{k-2}.
    add_term(ctx, acc, DimRational(1), 0, k, delta, k);
    add_term(ctx, acc, DimRational(k), 1, k - 1, d_pw_pwb, k - 1);
    add_term(ctx, acc, -(mk - 1) / (n + 1), 0, k - 1, ctx.Psi, k - 1);
    add_term(ctx, acc, DimRational(1), 0, k - 1, ctx.M, k - 1);
    add_term(ctx, acc, (mk - 1 + DimRational(k) * (n + 1)) / (n + 1), 1, k >= 2 ? k - 2 : 0,
             m_pw_pwb, k - 2);
    add_term(ctx, acc,
             DimRational(k) * (DimRational(1) - DimRational(2) * neg_n_pow(k - 1)) / (n + 1) +
                 (DimRational(1) - mk) / dpow(n + 1, 2),
             0, k >= 2 ? k - 2 : 0, ctx.W, k - 1);
    return acc;
}

TensorExpr cdot_power_display(const PerturbationContext& ctx, int k) {
    if (k < 1) throw std::invalid_argument("cdot_power_display: k must be >= 1");
    DimRational n = nvar();
    DimRational q = (n + 1) / (n + 2);
    TensorExpr delta = TensorExpr::atom(ctx.alg, "delta", {"al", "be"});
    TensorExpr acc = TensorExpr::zero(ctx.alg);
    TensorExpr m_pw_pwb = ctx.M * ctx.pw * ctx.pwb;
    TensorExpr d_pw_pwb = delta * ctx.pw * ctx.pwb;
    DimRational mk = neg_n_pow(k);
    // Cdot^k = ((n+1)/(n+2))^{k-1} c^{2k-2} [ ((n+1)/(n+2)) c (c delta dth + M) dth
    //          + ((n+1)/(n+2)) k i c delta pw pwb dth - ((-n)^k - 1)/(n+2) c Psi dth
    //          + ((-n)^k - 1 + k(n+1))/(n+2) i M pw pwb
    //          + (k(n+1)+1)(1 - (-n)^k)/((n+1)(n+2)) W dth ] dth^{k-2}.
    add_term(ctx, acc, dpow(q, k), 0, 2 * k, delta, k);
    add_term(ctx, acc, dpow(q, k), 0, 2 * k - 1, ctx.M, k - 1);
    add_term(ctx, acc, dpow(q, k) * DimRational(k), 1, 2 * k - 1, d_pw_pwb, k - 1);
    add_term(ctx, acc, -dpow(q, k - 1) * (mk - 1) / (n + 2), 0, 2 * k - 1, ctx.Psi, k - 1);
    add_term(ctx, acc, dpow(q, k - 1) * (mk - 1 + DimRational(k) * (n + 1)) / (n + 2), 1,
             2 * k - 2, m_pw_pwb, k - 2);
    add_term(ctx, acc,
             dpow(q, k - 1) * (DimRational(k) * (n + 1) + 1) * (DimRational(1) - mk) /
                 ((n + 1) * (n + 2)),
             0, 2 * k - 2, ctx.W, k - 1);
    return acc;
}

TensorExpr cdot_power_trace_display(const PerturbationContext& ctx, int k) {
    if (k < 1) throw std::invalid_argument("cdot_power_trace_display: k must be >= 1");
    DimRational n = nvar();
    DimRational q = (n + 1) / (n + 2);
    TensorExpr one = TensorExpr::scalar(ctx.alg, ScalarExpr(1));
    TensorExpr acc = TensorExpr::zero(ctx.alg);
    DimRational lead = dpow(q, k) * (n + neg_n_pow(k));
    // tr Cdot^k = ((n+1)/(n+2))^k (n + (-n)^k) c^{2k-1} (c dth + k i pw pwb) dth^{k-1}.
    add_term(ctx, acc, lead, 0, 2 * k, one, k);
    add_term(ctx, acc, lead * DimRational(k), 1, 2 * k - 1, ctx.pw * ctx.pwb, k - 1);
    return acc;
}

TensorExpr cdot_vcal_trace_display(const PerturbationContext& ctx, int k) {
    if (k < 1) throw std::invalid_argument("cdot_vcal_trace_display: k must be >= 1");
    DimRational n = nvar();
    DimRational q = (n + 1) / (n + 2);
    TensorExpr acc = TensorExpr::zero(ctx.alg);
    // tr(Cdot^{k-1} Vcal) = -((n+1)/(n+2))^k (n+3)(n + (-n)^k)/(n+1)
    //                        i c^{2k-1} wbar pw dth^{k-1}.
    DimRational coef = -dpow(q, k) * (n + 3) * (n + neg_n_pow(k)) / (n + 1);
    add_term(ctx, acc, coef, 1, 2 * k - 1, ctx.wb_sym * ctx.pw, k - 1);
    return acc;
}

namespace {

TensorExpr swap_frees(const TensorExpr& e, const std::string& a, const std::string& b) {
    return e.rename_frees({{a, "tmpswap"}}).rename_frees({{b, a}}).rename_frees({{"tmpswap", b}});
}

void push_eq(SuiteResult& s, const std::string& id, const std::string& anchor,
             const TensorExpr& lhs, const TensorExpr& rhs, double ms) {
    bool ok = lhs == rhs;
    s.cases.push_back(make_case(id, anchor, ok, rhs.str(), lhs.str(),
                                ok ? "0" : "nonzero difference", ms));
}

}  // namespace

SuiteResult perturbation_structure_suite() {
    SuiteResult s;
    s.suite = "perturbation-structure";
    PerturbationContext ctx = make_perturbation_context();
    ScalarExpr i_ = ScalarExpr::i();
    DimRational n = nvar();

    {
        WallTimer t;
        ScalarExpr q((n + 1) / (n + 2));
        TensorExpr rhs = ctx.W + (q * ctx.c_sym) * ctx.Pcal;
        push_eq(s, "curvature-rate-factored",
                "Cdot = W + ((n+1)/(n+2)) c (Psi + M + delta (i pw pwb + c dtheta))", ctx.Cdot,
                rhs, t.ms());
    }
    {
        WallTimer t;
        TensorExpr w_al = TensorExpr::atom(ctx.alg, "w_lo", {"al"});
        TensorExpr wb_up_be = TensorExpr::atom(ctx.alg, "wb_lo", {"be"}, 1u);
        TensorExpr delta = TensorExpr::atom(ctx.alg, "delta", {"al", "be"});
        TensorExpr th_up_be = TensorExpr::atom(ctx.alg, "th_up", {"be"});
        ScalarExpr coef(-((n + 3) / (n + 2)));
        TensorExpr rhs = (coef * i_ * ctx.wb_sym) *
                         ((w_al * wb_up_be + ctx.c_sym * delta) * ctx.pw +
                          ctx.c_sym * (w_al * th_up_be));
        push_eq(s, "torsion-rate-factored",
                "Vcal = -((n+3)/(n+2)) i wbar ((w_al wbar^be + c delta) pw + c w_al theta^be)",
                ctx.Vcal, rhs, t.ms());
    }
    {
        WallTimer t;
        bool ok = swap_frees(ctx.Sdot, "al", "g") == ctx.Sdot &&
                  swap_frees(ctx.Sdot, "bb", "sb") == ctx.Sdot;
        s.cases.push_back(make_case("curvature-rate-symmetries",
                                    "Sdot symmetric under both slot-pair exchanges", ok,
                                    "symmetric", ok ? "symmetric" : "asymmetric",
                                    ok ? "0" : "nonzero difference", t.ms()));
    }
    {
        WallTimer t;
        bool ok = true;
        for (auto [a, b] : {std::pair{"al", "bb"}, {"al", "sb"}, {"g", "bb"}, {"g", "sb"}}) {
            TensorExpr tr = ctx.Sdot.flip_free(a).contract(a, b);
            ok = ok && tr.is_zero();
        }
        s.cases.push_back(make_case("curvature-rate-trace-free",
                                    "every Levi trace of Sdot vanishes", ok, "0",
                                    ok ? "0" : "nonzero trace", ok ? "0" : "nonzero", t.ms()));
    }
    {
        WallTimer t;
        TensorExpr again = tf4(ctx.Sdot, "al", "bb", "g", "sb");
        push_eq(s, "trace-free-projection-idempotent", "tf4(tf4(u)) = tf4(u)", again, ctx.Sdot,
                t.ms());
    }
    {
        WallTimer t;
        TensorExpr div = ctx.Sdot.derive(Kind::Hol, "r").flip_free("r").contract("r", "sb");
        TensorExpr rhs = ScalarExpr(-n) * (ScalarExpr::i() * ctx.Vdot);
        push_eq(s, "curvature-rate-divergence", "nabla^sb Sdot_{al bb g sb} = -n i Vdot_{al bb g}",
                div, rhs, t.ms());
    }
    return s;
}

SuiteResult perturbation_product_suite() {
    SuiteResult s;
    s.suite = "perturbation-products";
    PerturbationContext ctx = make_perturbation_context();
    ScalarExpr i_ = ScalarExpr::i();
    DimRational n = nvar();
    ScalarExpr np1(n + 1);
    TensorExpr zero = TensorExpr::zero(ctx.alg);
    TensorExpr m_pw_pwb = ctx.M * ctx.pw * ctx.pwb;

    auto timed_eq = [&](const std::string& id, const std::string& anchor, auto lhs_fn,
                        const TensorExpr& rhs) {
        WallTimer t;
        TensorExpr lhs = lhs_fn();
        push_eq(s, id, anchor, lhs, rhs, t.ms());
    };

    timed_eq(
        "psi-squared", "Psi^2 = W dth - (n+1) c Psi dth + (n+1) i M pw pwb",
        [&] { return endo_mul(ctx.Psi, ctx.Psi); },
        ctx.W * ctx.dtheta - (np1 * ctx.c_sym) * (ctx.Psi * ctx.dtheta) + (np1 * i_) * m_pw_pwb);
    TensorExpr psi_m_rhs = -(i_ * m_pw_pwb);
    timed_eq(
        "psi-m", "Psi M = -i M pw pwb", [&] { return endo_mul(ctx.Psi, ctx.M); }, psi_m_rhs);
    timed_eq(
        "m-psi", "M Psi = -i M pw pwb", [&] { return endo_mul(ctx.M, ctx.Psi); }, psi_m_rhs);
    timed_eq(
        "m-squared", "M^2 = -c M dth", [&] { return endo_mul(ctx.M, ctx.M); },
        -(ctx.c_sym * (ctx.M * ctx.dtheta)));
    timed_eq(
        "w-squared", "W^2 = 0", [&] { return endo_mul(ctx.W, ctx.W); }, zero);
    TensorExpr w_psi_rhs = -(np1 * ctx.c_sym) * (ctx.W * ctx.dtheta);
    timed_eq(
        "w-psi", "W Psi = -(n+1) c W dth", [&] { return endo_mul(ctx.W, ctx.Psi); }, w_psi_rhs);
    timed_eq(
        "psi-w", "Psi W = -(n+1) c W dth", [&] { return endo_mul(ctx.Psi, ctx.W); }, w_psi_rhs);
    timed_eq(
        "w-m", "W M = 0", [&] { return endo_mul(ctx.W, ctx.M); }, zero);
    timed_eq(
        "m-w", "M W = 0", [&] { return endo_mul(ctx.M, ctx.W); }, zero);
    timed_eq(
        "w-pw", "W pw = 0", [&] { return ctx.W * ctx.pw; }, zero);
    timed_eq(
        "w-pwb", "W pwb = 0", [&] { return ctx.W * ctx.pwb; }, zero);
    timed_eq(
        "trace-w", "tr W = -(n+1) i c pw pwb", [&] { return endo_trace(ctx.W); },
        -(np1 * i_ * ctx.c_sym) * (ctx.pw * ctx.pwb));
    timed_eq(
        "trace-m", "tr M = c dth", [&] { return endo_trace(ctx.M); }, ctx.c_sym * ctx.dtheta);
    timed_eq(
        "trace-psi", "tr Psi = -(n+1) c dth + 2 i pw pwb", [&] { return endo_trace(ctx.Psi); },
        -(np1 * ctx.c_sym) * ctx.dtheta + (ScalarExpr(2) * i_) * (ctx.pw * ctx.pwb));
    timed_eq(
        "trace-vcal", "tr Vcal = 0", [&] { return endo_trace(ctx.Vcal); }, zero);
    return s;
}

SuiteResult perturbation_power_suite(int k_max) {
    SuiteResult s;
    s.suite = "perturbation-powers";
    PerturbationContext ctx = make_perturbation_context();

    TensorExpr psi_m = ctx.Psi + ctx.M;
    TensorExpr pm_pow = psi_m;
    TensorExpr pc_pow = ctx.Pcal;
    TensorExpr cd_pow = ctx.Cdot;
    TensorExpr cd_prev;  // Cdot^{k-1}, empty at k = 1
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) {
            pm_pow = endo_mul(pm_pow, psi_m);
            pc_pow = endo_mul(pc_pow, ctx.Pcal);
            cd_prev = cd_pow;
            cd_pow = endo_mul(cd_pow, ctx.Cdot);
        }
        std::string ks = std::to_string(k);
        {
            WallTimer t;
            push_eq(s, "psi-plus-m-pow-" + ks,
                    "(Psi+M)^" + ks + " matches its closed form", pm_pow,
                    psi_plus_m_power_display(ctx, k), t.ms());
        }
        {
            WallTimer t;
            push_eq(s, "pcal-pow-" + ks, "Pcal^" + ks + " matches its closed form", pc_pow,
                    pcal_power_display(ctx, k), t.ms());
        }
        {
            WallTimer t;
            push_eq(s, "cdot-pow-" + ks, "Cdot^" + ks + " matches its closed form", cd_pow,
                    cdot_power_display(ctx, k), t.ms());
        }
        {
            WallTimer t;
            push_eq(s, "cdot-pow-trace-" + ks, "tr Cdot^" + ks + " matches its closed form",
                    endo_trace(cd_pow), cdot_power_trace_display(ctx, k), t.ms());
        }
        {
            WallTimer t;
            TensorExpr lhs = k == 1 ? endo_trace(ctx.Vcal)
                                    : endo_trace(endo_mul(cd_prev, ctx.Vcal));
            push_eq(s, "cdot-vcal-trace-" + ks,
                    "tr(Cdot^" + std::to_string(k - 1) + " Vcal) matches its closed form", lhs,
                    cdot_vcal_trace_display(ctx, k), t.ms());
        }
    }
    return s;
}

}  // namespace pherm::crcalc
