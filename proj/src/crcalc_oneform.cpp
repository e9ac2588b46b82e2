// Endpoint identities for the leading rate of the distinguished one-form
// along sphere perturbations: the invariant of the curvature rate, the
// gradient of the scalar invariant, the opened pairing against the torsion
// rate, the assembled one-form rate, and its divergence polynomial.

#include "pherm/crcalc/oneform.hpp"

#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pherm/symkernel/crational.hpp"

namespace pherm::crcalc {

using exterior::EndoFormMatrix;
using exterior::Form;
using symkernel::CRational;
using symkernel::DimRational;
using symkernel::ScalarExpr;
using symkernel::SymbolTable;
using tensorlang::AtomInst;
using tensorlang::ConcreteMap;
using tensorlang::Kind;
using tensorlang::TensorExpr;
using tensorlang::eval_concrete;

namespace {

DimRational nvar() { return DimRational::var(); }

long long factorial(int k) {
    long long r = 1;
    for (int t = 2; t <= k; ++t) r *= t;
    return r;
}

ScalarExpr scale_scalar(const ScalarExpr& x, const Rational& q) { return ScalarExpr(q) * x; }

void push(SuiteResult& s, const std::string& id, const std::string& anchor, bool ok,
          const std::string& expected, const std::string& actual, double ms) {
    s.cases.push_back(make_case(id, anchor, ok, expected, actual,
                                ok ? "0" : "nonzero difference", ms));
}

/// dtheta^k in the concrete frame, k = 0 allowed.
Form<ScalarExpr> dth_pow(const GradientFrame& fr, int k) {
    Form<ScalarExpr> r = Form<ScalarExpr>::scalar(fr.n, ScalarExpr(1));
    for (int t = 0; t < k; ++t) r *= fr.dtheta;
    return r;
}

/// Random endomorphism-valued form with homogeneous entries of the given
/// grade over all 2n+1 generators.
EndoFormMatrix<CRational> random_endo(int n, int grade, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::vector<Form<CRational>> gens;
    gens.push_back(Form<CRational>::contact(n));
    for (int g = 1; g <= n; ++g) gens.push_back(Form<CRational>::hol(n, g));
    for (int g = 1; g <= n; ++g) gens.push_back(Form<CRational>::antihol(n, g));
    EndoFormMatrix<CRational> m(n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            Form<CRational> f(n);
            if (grade == 1) {
                for (const auto& g : gens)
                    f += CRational(Rational(num(rng), den(rng))) * g;
            } else {
                for (size_t i = 0; i < gens.size(); ++i)
                    for (size_t j = i + 1; j < gens.size(); ++j)
                        f += CRational(Rational(num(rng), den(rng))) * (gens[i] * gens[j]);
            }
            m.at(r, c) = f;
        }
    return m;
}

}  // namespace

ScalarExpr GradientFrame::a(int g) const {
    return ScalarExpr::symbol(coeffs, a_ids.at(static_cast<size_t>(g - 1)));
}

ScalarExpr GradientFrame::b(int g) const {
    return ScalarExpr::symbol(coeffs, a_ids.at(static_cast<size_t>(g - 1)) + 1);
}

GradientFrame make_gradient_frame(const PerturbationContext& ctx, int n) {
    GradientFrame fr;
    fr.n = n;
    auto tb = std::make_shared<SymbolTable>();
    fr.a_ids.resize(static_cast<size_t>(n));
    for (int g = 1; g <= n; ++g) {
        std::string base = "a" + std::to_string(g);
        fr.a_ids[static_cast<size_t>(g - 1)] = tb->add_pair(base, "b" + std::to_string(g));
    }
    fr.w_id = tb->add_pair("w", "wb");
    fr.wb_id = fr.w_id + 1;
    fr.coeffs = tb;

    ScalarExpr csum;
    for (int g = 1; g <= n; ++g) csum += fr.a(g) * fr.b(g);
    fr.c_val = ScalarExpr(Rational(-1, n + 1)) * csum;
    fr.w_val = ScalarExpr::symbol(fr.coeffs, fr.w_id);
    fr.wb_val = ScalarExpr::symbol(fr.coeffs, fr.wb_id);

    fr.map = tensorlang::levi_identity_map(ctx.alg, n);
    int wl = ctx.alg->atom_id("w_lo");
    int wbl = ctx.alg->atom_id("wb_lo");
    auto base_atoms = fr.map.atom_value;
    auto coeffs = fr.coeffs;
    auto a_ids = fr.a_ids;
    fr.map.atom_value = [base_atoms, wl, wbl, coeffs, a_ids](
                            const AtomInst& inst, const std::vector<int>& idx) -> ScalarExpr {
        if (inst.def == wl)
            return ScalarExpr::symbol(coeffs, a_ids.at(static_cast<size_t>(idx[0] - 1)));
        if (inst.def == wbl)
            return ScalarExpr::symbol(coeffs, a_ids.at(static_cast<size_t>(idx[0] - 1)) + 1);
        return base_atoms(inst, idx);
    };
    auto alg = ctx.alg;
    fr.map.form_value = [alg, n](const AtomInst& inst,
                                 const std::vector<int>& idx) -> Form<ScalarExpr> {
        const std::string& nm = alg->atom(inst.def).name;
        if (nm == "th_up") return Form<ScalarExpr>::hol(n, idx[0]);
        if (nm == "th_dn") return Form<ScalarExpr>::antihol(n, idx[0]);
        throw std::logic_error("gradient frame: unexpected grade-1 atom " + nm);
    };
    fr.map.symbol_values = {{ctx.c, fr.c_val}, {ctx.w, fr.w_val}, {ctx.wb, fr.wb_val}};

    fr.dtheta = eval_concrete(ctx.dtheta, fr.map);
    fr.pw = eval_concrete(ctx.pw, fr.map);
    fr.pwb = eval_concrete(ctx.pwb, fr.map);
    return fr;
}

EndoFormMatrix<ScalarExpr> bridge_endo(const TensorExpr& e, const GradientFrame& fr) {
    EndoFormMatrix<ScalarExpr> m(fr.n);
    for (int r = 1; r <= fr.n; ++r)
        for (int c = 1; c <= fr.n; ++c)
            m.at(r - 1, c - 1) = eval_concrete(e, fr.map, {{"al", r}, {"be", c}});
    return m;
}

ScalarExpr divergence_rate_polynomial(const PerturbationContext& ctx, int n, const Sigma& sigma) {
    DimRational q = (nvar() + 1) / (nvar() + 2);
    DimRational coef_x = (DimRational(3) / nvar()) * q.pow(n) * p_factor_poly(sigma);
    TensorExpr x_rate = TensorExpr::scalar(ctx.alg, ScalarExpr(coef_x) * ctx.c_sym.pow(2 * n - 1) *
                                                        ctx.wb_sym) *
                        TensorExpr::atom(ctx.alg, "w_lo", {"al"});
    TensorExpr div = x_rate.derive(Kind::AntiHol, "r").flip_free("r").contract("r", "al");
    return div.scalar_value().specialize_n(Rational(n));
}

SuiteResult oneform_rate_suite(const std::vector<std::pair<int, Sigma>>& targets) {
    SuiteResult suite;
    suite.suite = "oneform-rate";
    PerturbationContext ctx = make_perturbation_context();
    DimRational nv = nvar();
    DimRational q = (nv + 1) / (nv + 2);
    ScalarExpr i_ = ScalarExpr::i();
    TensorExpr w_al = TensorExpr::atom(ctx.alg, "w_lo", {"al"});

    {
        // The two rate displays combine to the one-form rate coefficient.
        WallTimer t;
        DimRational lhs = (nv + 3) / (nv * (nv + 1)) + DimRational(2) / (nv + 1);
        bool ok = lhs == DimRational(3) / nv;
        push(suite, "oneform-coefficient-identity",
             "(n+3)/(n(n+1)) + 2/(n+1) = 3/n", ok, "3/n", ok ? "3/n" : "mismatch", t.ms());
    }

    {
        // At n = 2 the opened pairing degenerates to a single matrix trace.
        WallTimer t;
        std::mt19937 rng(20240811u);
        auto y = random_endo(2, 2, rng);
        auto z = random_endo(2, 1, rng);
        bool ok = char_pairing_mixed({0, 1}, y, z) == trace(mat_mul(y, z));
        ok = ok && char_pairing_mixed({0, 1}, y, z) == char_pairing_mixed_traces({0, 1}, y, z);
        ok = ok && char_pairing_mixed({2, 0}, y, z) == trace(y) * trace(z);
        push(suite, "mixed-pairing-reduces-to-trace-n2",
             "opened pairing at n=2: sigma=(0,1) gives tr(YZ), sigma=(2,0) gives trY trZ", ok,
             "trace products", ok ? "equal" : "mismatch", t.ms());
    }

    for (const auto& [n, sigma] : targets) {
        std::string tag = "-n" + std::to_string(n);
        DimRational p = p_factor_poly(sigma);
        DimRational coef_inv = -nv * q.pow(n) * p;               // invariant rate
        DimRational coef_grad = -(2 * nv * nv / (nv + 1)) * q.pow(n) * p;  // gradient rate
        DimRational coef_sv = ((nv + 3) / (nv + 1)) * q.pow(n) * p;        // opened pairing rate
        DimRational coef_x = (DimRational(3) / nv) * q.pow(n) * p;         // one-form rate
        Rational nq(n);
        GradientFrame fr = make_gradient_frame(ctx, n);
        EndoFormMatrix<ScalarExpr> cmat = bridge_endo(ctx.Cdot, fr);
        EndoFormMatrix<ScalarExpr> vmat = bridge_endo(ctx.Vcal, fr);

        {
            // n i (del_b w)(delbar_b wbar) dtheta^{n-1} = -(n+1) c dtheta^n.
            WallTimer t;
            Form<ScalarExpr> lhs =
                (ScalarExpr(static_cast<long long>(n)) * i_) * (fr.pw * fr.pwb * dth_pow(fr, n - 1));
            Form<ScalarExpr> rhs =
                (ScalarExpr(static_cast<long long>(-(n + 1))) * fr.c_val) * dth_pow(fr, n);
            push(suite, "volume-pair-identity" + tag,
                 "n i pw pwb dtheta^{n-1} = -(n+1) c dtheta^n", lhs == rhs, "closed form",
                 lhs == rhs ? "equal" : "mismatch", t.ms());
        }

        {
            // tr Cdot = 0 in the concrete frame; any sigma_1 >= 1 monomial dies.
            WallTimer t;
            bool ok = trace(cmat).is_zero();
            Sigma sig1(static_cast<size_t>(n), 0);
            sig1[0] = n;
            ok = ok && char_form(sig1, cmat).is_zero();
            push(suite, "trace-rate-vanishes" + tag,
                 "tr Cdot = 0, so exponent vectors with sigma_1 >= 1 contribute nothing", ok, "0",
                 ok ? "0" : "nonzero", t.ms());
        }

        {
            // c_Phi(Cdot) = -n ((n+1)/(n+2))^n p(sigma) c^{2n} dtheta^n.
            WallTimer t;
            Form<ScalarExpr> lhs = char_form(sigma, cmat);
            Form<ScalarExpr> rhs =
                (ScalarExpr(coef_inv.eval(nq)) * fr.c_val.pow(2 * n)) * dth_pow(fr, n);
            push(suite, "curvature-invariant-rate" + tag,
                 "c_Phi(Cdot) = -n q^n p c^{2n} dtheta^n, sigma=" + sigma_str(sigma), lhs == rhs,
                 "closed form", lhs == rhs ? "equal" : "mismatch", t.ms());
            WallTimer t2;
            bool ok2 = char_pairing(sigma, cmat) == lhs;
            push(suite, "curvature-invariant-pairing" + tag,
                 "class-averaged permutation pairing agrees with the trace product", ok2,
                 "trace route", ok2 ? "equal" : "mismatch", t2.ms());
        }

        {
            // Power rule for the scalar invariant: del_al c^m = (m/(n+1)) c^{m-1} wbar w_al.
            WallTimer t;
            int m = 2 * n;
            TensorExpr lhs = TensorExpr::scalar(ctx.alg, ctx.c_sym.pow(m)).derive(Kind::Hol, "al");
            TensorExpr rhs = TensorExpr::scalar(ctx.alg, ScalarExpr(DimRational(m) / (nv + 1)) *
                                                             ctx.c_sym.pow(m - 1) * ctx.wb_sym) *
                             w_al;
            push(suite, "gradient-power-rule" + tag,
                 "del_al c^{2n} = (2n/(n+1)) c^{2n-1} wbar w_al", lhs == rhs, rhs.str(), lhs.str(),
                 t.ms());
        }

        {
            // Gradient of the invariant rate: coefficient identity and the
            // bridged per-component check.
            WallTimer t;
            bool ok = (coef_inv * DimRational(2 * n) / (nv + 1)).eval(nq) == coef_grad.eval(nq);
            TensorExpr lhs = TensorExpr::scalar(ctx.alg, ScalarExpr(coef_inv.eval(nq)) *
                                                             ctx.c_sym.pow(2 * n))
                                 .derive(Kind::Hol, "al");
            TensorExpr rhs = TensorExpr::scalar(ctx.alg, ScalarExpr(coef_grad.eval(nq)) *
                                                             ctx.c_sym.pow(2 * n - 1) * ctx.wb_sym) *
                             w_al;
            for (int al = 1; al <= n && ok; ++al)
                ok = eval_concrete(lhs, fr.map, {{"al", al}}) ==
                     eval_concrete(rhs, fr.map, {{"al", al}});
            push(suite, "gradient-rate" + tag,
                 "del_al c_Phi rate = -(2n^2/(n+1)) q^n p c^{2n-1} wbar w_al", ok, "closed form",
                 ok ? "equal" : "mismatch", t.ms());
        }

        // Opened pairing against the torsion rate, three routes.
        Tensor4<ScalarExpr> s4(n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int g = 0; g < n; ++g)
                    for (int s = 0; s < n; ++s)
                        s4.at(a, b, g, s) =
                            eval_concrete(ctx.Sdot, fr.map,
                                          {{"al", a + 1}, {"bb", b + 1}, {"g", g + 1}, {"sb", s + 1}})
                                .coeff(0u);
        std::function<ScalarExpr(const ScalarExpr&, const Rational&)> sc = scale_scalar;
        Tensor4<ScalarExpr> sp = s_phi(s4, sigma, sc);
        std::vector<std::vector<std::vector<ScalarExpr>>> vh(
            static_cast<size_t>(n),
            std::vector<std::vector<ScalarExpr>>(static_cast<size_t>(n),
                                                 std::vector<ScalarExpr>(static_cast<size_t>(n))));
        for (int b = 1; b <= n; ++b)
            for (int m = 1; m <= n; ++m)
                for (int u = 1; u <= n; ++u)
                    vh[static_cast<size_t>(b - 1)][static_cast<size_t>(m - 1)]
                      [static_cast<size_t>(u - 1)] =
                          eval_concrete(ctx.Vdot, fr.map, {{"al", b}, {"bb", m}, {"g", u}})
                              .coeff(0u);
        std::vector<ScalarExpr> sv(static_cast<size_t>(n));
        for (int al = 0; al < n; ++al) {
            ScalarExpr acc;
            for (int b = 0; b < n; ++b)
                for (int m = 0; m < n; ++m)
                    for (int u = 0; u < n; ++u)
                        acc += sp.at(al, b, m, u) * vh[static_cast<size_t>(b)]
                                                      [static_cast<size_t>(m)][static_cast<size_t>(u)];
            sv[static_cast<size_t>(al)] = acc;
        }
        ScalarExpr inv_fact(Rational(1, factorial(n - 1)));

        {
            // Componentwise display for the opened pairing rate.
            WallTimer t;
            bool ok = true;
            for (int al = 1; al <= n && ok; ++al) {
                ScalarExpr lhs = inv_fact * i_ * sv[static_cast<size_t>(al - 1)];
                ScalarExpr rhs = ScalarExpr(coef_sv.eval(nq)) * fr.c_val.pow(2 * n - 1) *
                                 fr.wb_val * fr.a(al);
                ok = lhs == rhs;
            }
            push(suite, "torsion-contraction-rate" + tag,
                 "(i/(n-1)!) S^Phi[Sdot] Vdot = ((n+3)/(n+1)) q^n p c^{2n-1} wbar w_al", ok,
                 "closed form", ok ? "equal" : "mismatch", t.ms());
        }

        Form<ScalarExpr> mixed = char_pairing_mixed(sigma, cmat, vmat);

        {
            // The opened scalar pairing wedged into theta^al dtheta^{n-1}
            // equals the matrix-level mixed pairing.
            WallTimer t;
            Form<ScalarExpr> acc(n);
            for (int al = 1; al <= n; ++al)
                acc += sv[static_cast<size_t>(al - 1)] * Form<ScalarExpr>::hol(n, al);
            Form<ScalarExpr> lhs = (inv_fact * i_) * (acc * dth_pow(fr, n - 1));
            Form<ScalarExpr> rhs = i_ * mixed;
            push(suite, "opened-contraction-bridge" + tag,
                 "(1/(n-1)!) i S^Phi[Sdot] Vdot theta^al dtheta^{n-1} = i c_{Phi,n-1}(Cdot, Vcal)",
                 lhs == rhs, "matrix pairing", lhs == rhs ? "equal" : "mismatch", t.ms());
        }

        {
            // Mixed pairing: permutation route equals its trace expansion.
            WallTimer t;
            bool ok = mixed == char_pairing_mixed_traces(sigma, cmat, vmat);
            push(suite, "mixed-pairing-traces" + tag,
                 "class-averaged mixed pairing equals the polarized trace expansion", ok,
                 "trace expansion", ok ? "equal" : "mismatch", t.ms());
        }

        {
            // i c_{Phi,n-1}(Cdot, Vcal) = ((n+3)/(n+1)) q^n p c^{2n-1} wbar pw dtheta^{n-1}.
            WallTimer t;
            Form<ScalarExpr> lhs = i_ * mixed;
            Form<ScalarExpr> rhs = (ScalarExpr(coef_sv.eval(nq)) * fr.c_val.pow(2 * n - 1) *
                                    fr.wb_val) *
                                   (fr.pw * dth_pow(fr, n - 1));
            push(suite, "mixed-pairing-display" + tag,
                 "i c_{Phi,n-1}(Cdot, Vcal) matches its closed form", lhs == rhs, "closed form",
                 lhs == rhs ? "equal" : "mismatch", t.ms());
        }

        {
            // Assembly: (1/n) (pairing rate) - (1/n^2) (gradient rate)
            // = (3/n) q^n p c^{2n-1} wbar w_al, with concrete exponents and
            // the dimension kept symbolic in every coefficient.
            WallTimer t;
            TensorExpr core = TensorExpr::scalar(ctx.alg, ctx.c_sym.pow(2 * n - 1) * ctx.wb_sym) *
                              w_al;
            TensorExpr lhs = ScalarExpr(DimRational(1) / nv) * (ScalarExpr(coef_sv) * core) -
                             ScalarExpr(DimRational(1) / (nv * nv)) * (ScalarExpr(coef_grad) * core);
            TensorExpr rhs = ScalarExpr(coef_x) * core;
            push(suite, "oneform-rate" + tag,
                 "one-form rate = (3/n) q^n p c^{2n-1} wbar w_al", lhs == rhs, rhs.str(), lhs.str(),
                 t.ms());
        }

        if (n == 2) {
            WallTimer t;
            bool ok = coef_x.eval(nq) == Rational(81, 16);
            push(suite, "oneform-coefficient-n2",
                 "(3/n) q^n p = 81/16 at n=2, sigma=(0,1)", ok, "81/16", coef_x.eval(nq).str(),
                 t.ms());
        }

        {
            // Divergence of the one-form rate as a polynomial in c.
            WallTimer t;
            ScalarExpr div = divergence_rate_polynomial(ctx, n, sigma);
            ScalarExpr disp = ScalarExpr(-coef_x) * ctx.c_sym.pow(2 * n - 1) *
                              (ScalarExpr(DimRational(3) * nv * (nv + 1)) * ctx.c_sym +
                               ScalarExpr(DimRational(3) * nv - 1));
            bool ok = div == disp.specialize_n(nq);
            push(suite, "divergence-rate" + tag,
                 "div of the one-form rate = -(3/n) q^n p c^{2n-1} (3n(n+1)c + 3n - 1)", ok,
                 disp.specialize_n(nq).str(), div.str(), t.ms());
            WallTimer t2;
            bool ok2 = !div.is_zero();
            push(suite, "divergence-display-nonzero" + tag,
                 "the divergence rate polynomial is not identically zero", ok2, "nonzero",
                 ok2 ? "nonzero" : "0", t2.ms());
            if (n == 2) {
                WallTimer t3;
                ScalarExpr expect = ScalarExpr(Rational(-81, 16)) *
                                    (ScalarExpr(18) * ctx.c_sym.pow(4) +
                                     ScalarExpr(5) * ctx.c_sym.pow(3));
                bool ok3 = div == expect;
                push(suite, "divergence-example-n2",
                     "divergence rate at n=2 is -(81/16)(18 c^4 + 5 c^3)", ok3, expect.str(),
                     div.str(), t3.ms());
            }
        }

        {
            // Pairing bookkeeping on random even entries: permutation route
            // and diagonal trace expansion agree with the trace product for
            // every admissible exponent vector.
            WallTimer t;
            std::mt19937 rng(7700u + static_cast<unsigned>(n));
            auto y = random_endo(n, 2, rng);
            bool ok = true;
            for (const auto& sg : admissible_sigmas(n)) {
                Form<CRational> cf = char_form(sg, y);
                ok = ok && char_pairing(sg, y) == cf;
                ok = ok && char_pairing_mixed_traces(sg, y, y) == cf;
                if (!ok) break;
            }
            push(suite, "pairing-closes" + tag,
                 "pairing routes agree with trace products on random even-grade entries", ok,
                 "trace products", ok ? "equal" : "mismatch", t.ms());
        }
    }
    return suite;
}

}  // namespace pherm::crcalc
