#include "ccb/bounds.hpp"

#include "ccb/realcert.hpp"

namespace ccb {

namespace {

// sqrt(q) for q = p^f as an exact surd (exact integer when f is even).
QuadSurd sqrt_q(std::int64_t p, std::int64_t f) {
    Int half = pow_int(Int(p), static_cast<unsigned long>(f / 2));
    if (f % 2 == 0) return QuadSurd(Rat(half));
    return QuadSurd(0, Rat(half), Int(p));
}

}  // namespace

bool GuardReport::all_requested_pass() const {
    if (!ramification) return false;
    if (hyp_i && !*hyp_i) return false;
    if (hyp_ii && !*hyp_ii) return false;
    return true;
}

GuardReport guards(const SurfaceBoundInputs& in, bool want_i, bool want_ii) {
    GuardReport rep;
    const auto& lf = in.field;
    rep.ramification = ramification_guard(lf.p, lf.e);
    rep.checks.push_back({"ramification: p > max(e+1, exp(e/exp(1)))", rep.ramification,
                          "p = " + std::to_string(lf.p) + ", e = " + std::to_string(lf.e)});
    if (want_i) {
        if (in.c1sq < 1) throw usage_error("c1sq must be >= 1");
        Rat threshold = Rat(128, 9) * Rat(in.c1sq * in.c1sq);
        bool ok = Rat(lf.p) > threshold && in.ambient_dim == 3;
        rep.hyp_i = ok;
        rep.checks.push_back({"hypothesis (i): n = 3 and p > (128/9) c1sq^2", ok,
                              "threshold = " + rat_str(threshold)});
    }
    if (want_ii) {
        if (!in.deg_h2x || !in.deg_hkx || !in.deg_hn)
            throw usage_error(
                "hypothesis (ii) needs deg_h2x, deg_hkx, and deg_hn (missing field(s))");
        Rat t1 = Rat(3 * in.c1sq + 2);
        Rat t2 = hyp_ii_threshold(in.ambient_dim, *in.deg_h2x, *in.deg_hkx, *in.deg_hn);
        Rat threshold = std::max(t1, t2);
        bool ok = Rat(lf.p) > threshold;
        rep.hyp_ii = ok;
        rep.checks.push_back({"hypothesis (ii): p > max(3 c1sq + 2, degree threshold)", ok,
                              "threshold = " + rat_str(threshold)});
    }
    return rep;
}

Rat hyp_ii_threshold(unsigned n, const Int& a, const Int& b, const Int& c) {
    if (n < 1 || c <= 0) throw usage_error("bad hypothesis-(ii) inputs");
    Int num = factorial(n) * pow_int(3 * a + b, n);
    Int den = pow_int(Int(n), n) * c;
    return Rat(num, den);
}

MainBoundReport main_bound(const SurfaceBoundInputs& in, bool formula_only) {
    const auto& lf = in.field;
    if (in.c1sq < 1) throw usage_error("c1sq must be >= 1 (general type surface)");
    if (!lf.lambda_below_one())
        throw usage_error("p <= e + 1: lambda >= 1 and the bound formula is undefined");
    MainBoundReport rep{QuadSurd(Rat(0)), 0, lf.lambda(), 0, false, {}, false};
    bool want_i = in.ambient_dim == 3;
    bool want_ii = in.deg_h2x && in.deg_hkx && in.deg_hn;
    rep.guard_report = guards(in, want_i, want_ii);
    bool ok_i = rep.guard_report.hyp_i && *rep.guard_report.hyp_i;
    bool ok_ii = rep.guard_report.hyp_ii && *rep.guard_report.hyp_ii;
    rep.hypotheses_met = rep.guard_report.ramification && (ok_i || ok_ii);
    if (!rep.hypotheses_met && !formula_only)
        throw hypothesis_error(
            "hypotheses not met; pass formula_only to evaluate the expression anyway");

    Rat inv_one_minus_lambda = Rat(1) / (Rat(1) - rep.lambda);
    QuadSurd sq = sqrt_q(lf.p, lf.f);
    QuadSurd paren = QuadSurd(Rat(lf.q())) + QuadSurd(Rat(4)) * sq + QuadSurd(Rat(3));
    rep.bound = QuadSurd(Rat(in.nxk)) +
                QuadSurd(inv_one_minus_lambda) * paren * QuadSurd(Rat(in.c1sq));
    rep.bound_floor = rep.bound.floor();
    rep.simplified = in.nxk + 4 * Int(lf.p) * in.c1sq;
    if (lf.e == 1 && lf.f == 1 && lf.p >= 7)
        rep.simplified_dominates = coefficient_dominated_by_4p(lf.p);
    return rep;
}

Int rh_point_upper(std::int64_t p, std::int64_t f, const Int& b1, const Int& b2, const Int& b3) {
    if (b1 < 0 || b2 < 0 || b3 < 0) throw usage_error("Betti numbers are non-negative");
    Int q = pow_int(Int(p), static_cast<unsigned long>(f));
    QuadSurd sq = sqrt_q(p, f);
    QuadSurd val = QuadSurd(Rat(q * q)) + QuadSurd(Rat(b3)) * QuadSurd(Rat(q)) * sq +
                   QuadSurd(Rat(b2 * q)) + QuadSurd(Rat(b1)) * sq + QuadSurd(Rat(1));
    return val.ceil();
}

Sym2Invariants sym2_invariants(const Int& g) {
    if (g < 2) throw usage_error("symmetric-square invariants need genus >= 2");
    Sym2Invariants inv;
    inv.g = g;
    inv.c1sq = (4 * g - 9) * (g - 1);
    inv.theta_k = 2 * g * (g - 2);
    unsigned gu = g.convert_to<unsigned>();
    inv.deg_hg = pow_int(Int(2), gu) * factorial(gu);
    inv.deg_h2x = 4 * g * (g - 1);
    inv.deg_hkx = 4 * g * (g - 2);
    inv.threshold = pow_int(8 * g - 10, gu);
    inv.d2 = 4 - 4 * g;
    inv.c1sq_positive = inv.c1sq >= 1;
    // internal consistency: the hypothesis-(ii) quantity with n = g collapses
    // to (8g-10)^g exactly
    if (g <= 12) {
        Rat t = hyp_ii_threshold(gu, inv.deg_h2x, inv.deg_hkx, inv.deg_hg);
        if (t != Rat(inv.threshold))
            throw consistency_error("symmetric-square threshold simplification failed");
    }
    return inv;
}

ColemanReport coleman_bound(const Int& g, std::int64_t p, const Int& count) {
    if (g < 2) throw usage_error("the curve bound needs genus >= 2");
    ColemanReport rep;
    rep.p_admissible = Int(p) > 2 * g;
    rep.bound = count + 2 * g - 2;
    return rep;
}

Sym2Report sym2_bound(const Int& g, std::int64_t p, const Int& count) {
    if (g < 3) throw usage_error("symmetric-square bounds need genus >= 3");
    Sym2Report rep{sym2_invariants(g), QuadSurd(Rat(0)), 0, false, false, std::nullopt};
    rep.threshold_ok = Int(p) > rep.inv.threshold;
    if (g == 3) rep.threshold_ok = Int(p) >= 521;  // the sharper genus-3 gate
    Rat frac = Rat(p - 1, p - 2);
    QuadSurd sp = QuadSurd::sqrt_of(Int(p));
    QuadSurd paren = QuadSurd(Rat(p)) + QuadSurd(Rat(4)) * sp + QuadSurd(Rat(3));
    rep.bound = QuadSurd(Rat(count)) +
                QuadSurd(frac) * paren * QuadSurd(Rat(rep.inv.c1sq));
    rep.bound_floor = rep.bound.floor();
    rep.hypotheses_met = rep.threshold_ok && rep.inv.c1sq_positive;
    if (g == 3) {
        QuadSurd lhs = QuadSurd(Rat(6) * frac) * paren;
        QuadSurd rhs = QuadSurd(Rat(71, 10) * Rat(p));
        rep.genus3_margin_ok = lhs < rhs;
    }
    return rep;
}

bool coefficient_dominated_by_4p(std::int64_t p) {
    if (p < 3) throw usage_error("p too small");
    QuadSurd lhs = QuadSurd(Rat(p - 1, p - 2)) *
                   (QuadSurd(Rat(p)) + QuadSurd(Rat(4)) * QuadSurd::sqrt_of(Int(p)) +
                    QuadSurd(Rat(3)));
    return lhs < QuadSurd(Rat(4 * Int(p)));
}

}  // namespace ccb
