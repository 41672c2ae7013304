#include "ccb/jets.hpp"

#include <algorithm>

namespace ccb {

namespace {

TruncSeries<FFElem> with_trunc(const TruncSeries<FFElem>& s, unsigned t) {
    TruncSeries<FFElem> r(s.nvars(), t, s.proto());
    for (const auto& [m, c] : s.terms())
        if (mono_degree(m) <= t) r.add_term(m, c);
    return r;
}

TruncSeries<FFElem> pullback_raw(const JetMap& phi, const PolyOneForm<FFElem>& w,
                                 unsigned trunc) {
    const auto& phi1 = phi.coords[0];
    const auto& phi2 = phi.coords[1];
    std::vector<TruncSeries<FFElem>> subs{with_trunc(phi1, trunc), with_trunc(phi2, trunc)};
    TruncSeries<FFElem> a = w.f1.compose(subs);
    TruncSeries<FFElem> b = w.f2.compose(subs);
    TruncSeries<FFElem> d1 = with_trunc(phi1.derivative(0), trunc);
    TruncSeries<FFElem> d2 = with_trunc(phi2.derivative(0), trunc);
    return a * d1 + b * d2;
}

}  // namespace

JetRingForm pullback_form(const JetMap& phi, const PolyOneForm<FFElem>& w) {
    if (phi.coords.size() != 2)
        throw usage_error("pullback_form needs a two-coordinate jet (chart dimension 2)");
    if (!phi.coords[0].proto().field()->same_field(*w.f1.proto().field()))
        throw usage_error("jet and form live over different fields");
    unsigned trunc = static_cast<unsigned>(phi.m);
    return jetring_reduce(pullback_raw(phi, w, trunc), phi.m);
}

BranchOrd ord_on_branch(const TruncSeries<FFElem>& phi1, const TruncSeries<FFElem>& phi2,
                        const PolyOneForm<FFElem>& w) {
    if (phi1.nvars() != 1 || phi2.nvars() != 1)
        throw usage_error("branch parametrizations are one-variable");
    if (!phi1.coeff(Mono{0}).is_zero() || !phi2.coeff(Mono{0}).is_zero())
        throw usage_error("branch parametrizations must have zero constant term");
    unsigned tb = std::min(phi1.trunc_order(), phi2.trunc_order());
    JetMap jm{static_cast<int>(tb), {with_trunc(phi1, tb), with_trunc(phi2, tb)}};
    TruncSeries<FFElem> g = pullback_raw(jm, w, tb);
    if (g.is_zero()) return BranchOrd{false, static_cast<long>(g.trunc_order()) + 1};
    return BranchOrd{true, static_cast<long>(g.min_degree())};
}

Int overdetermined_bound(const std::vector<BranchRecord>& branches) {
    Int total = 0;
    for (size_t i = 0; i < branches.size(); ++i) {
        const auto& br = branches[i];
        if (!br.ord_finite)
            throw usage_error(
                "branch " + std::to_string(i) +
                " is integral for the reference form; choose a combination for which no "
                "branch pullback vanishes");
        if (br.a < 1) throw usage_error("branch multiplicities must be >= 1");
        total += br.a * Int(br.ord_w0 + 1);
    }
    return total;
}

namespace {

struct SearchCtx {
    const PolyOneForm<FFElem>* w1;
    const PolyOneForm<FFElem>* w2;
    FieldPtr field;
    int m;
    std::uint64_t nodes = 0;
    std::uint64_t budget;
};

// Coefficient of z^d in the pullback of `w` along the partially-built jet.
FFElem condition_value(const SearchCtx& ctx, const JetMap& phi, const PolyOneForm<FFElem>& w,
                       unsigned d) {
    TruncSeries<FFElem> g = pullback_raw(phi, w, static_cast<unsigned>(ctx.m));
    return g.coeff(Mono{static_cast<std::uint16_t>(d)});
}

bool final_check(const SearchCtx& ctx, const JetMap& phi) {
    return is_integral(phi, *ctx.w1) && is_integral(phi, *ctx.w2);
}

// DFS over the unknown coefficients of the non-normalized coordinate.
// `free_coord` is 0 (family B: phi1 unknown from degree 2, phi2 = z) or
// 1 (family A: phi1 = z, phi2 unknown from degree 1).
bool dfs(SearchCtx& ctx, JetMap& phi, unsigned free_coord, unsigned k, unsigned k_max,
         JetMap& out) {
    if (++ctx.nodes > ctx.budget)
        throw inconclusive_error("jet search exceeded its node budget");
    if (k > k_max) {
        if (final_check(ctx, phi)) {
            out = phi;
            return true;
        }
        return false;
    }
    // the conditions at degree k-1 are affine in the degree-k coefficient
    auto probe = [&](const PolyOneForm<FFElem>& w, FFElem& rest, FFElem& slope) {
        phi.coords[free_coord].set_term(Mono{static_cast<std::uint16_t>(k)}, ctx.field->zero());
        rest = condition_value(ctx, phi, w, k - 1);
        phi.coords[free_coord].set_term(Mono{static_cast<std::uint16_t>(k)}, ctx.field->one());
        slope = condition_value(ctx, phi, w, k - 1) - rest;
    };
    FFElem r1 = ctx.field->zero(), s1 = ctx.field->zero();
    FFElem r2 = ctx.field->zero(), s2 = ctx.field->zero();
    probe(*ctx.w1, r1, s1);
    probe(*ctx.w2, r2, s2);
    auto try_value = [&](const FFElem& v) -> bool {
        if (!(s1 * v + r1).is_zero()) return false;
        if (!(s2 * v + r2).is_zero()) return false;
        phi.coords[free_coord].set_term(Mono{static_cast<std::uint16_t>(k)}, v);
        if (dfs(ctx, phi, free_coord, k + 1, k_max, out)) return true;
        return false;
    };
    bool ok = false;
    if (!s1.is_zero()) {
        ok = try_value(-r1 / s1);
    } else if (!s2.is_zero()) {
        ok = try_value(-r2 / s2);
    } else if (r1.is_zero() && r2.is_zero()) {
        // degenerate level: the new coefficient is unconstrained here
        for (std::uint64_t i = 0; i < ctx.field->q() && !ok; ++i)
            ok = try_value(ctx.field->element(i));
    }
    if (!ok) phi.coords[free_coord].set_term(Mono{static_cast<std::uint16_t>(k)}, ctx.field->zero());
    return ok;
}

bool feasible_over(SearchCtx& ctx, JetMap& out) {
    const int m = ctx.m;
    TruncSeries<FFElem> zser(1, static_cast<unsigned>(m), ctx.field->one());
    TruncSeries<FFElem> zvar = TruncSeries<FFElem>::variable(1, static_cast<unsigned>(m),
                                                             ctx.field->one(), 0);
    // family A: phi = (z, b1 z + ... + bm z^m)
    {
        JetMap phi{m, {zvar, zser}};
        if (dfs(ctx, phi, 1, 1, static_cast<unsigned>(m), out)) return true;
    }
    // family B: phi = (a2 z^2 + ... + am z^m, z)
    {
        JetMap phi{m, {zser, zvar}};
        bool ok;
        if (m >= 2) {
            ok = dfs(ctx, phi, 0, 2, static_cast<unsigned>(m), out);
        } else {
            // no unknowns: the degree-0 conditions are pure checks
            ok = final_check(ctx, phi);
            if (ok) out = phi;
        }
        if (ok) return true;
    }
    return false;
}

PolyOneForm<FFElem> embed_form(const PolyOneForm<FFElem>& w, const FieldEmbedding& emb) {
    auto lift = [&](const TruncSeries<FFElem>& s) {
        TruncSeries<FFElem> r(s.nvars(), s.trunc_order(), emb.to()->one());
        for (const auto& [m, c] : s.terms()) r.add_term(m, emb(c));
        return r;
    };
    return PolyOneForm<FFElem>(lift(w.f1), lift(w.f2));
}

}  // namespace

JetSearchResult max_jet_order(const PolyOneForm<FFElem>& w1, const PolyOneForm<FFElem>& w2,
                              int m_cap, unsigned ext_cap, std::uint64_t node_budget) {
    if (m_cap < 0) throw usage_error("m_cap must be >= 0");
    if (ext_cap < 1) throw usage_error("ext_cap must be >= 1");
    FieldPtr base = w1.f1.proto().field();
    if (m_cap > 2 * (base->p() - 2))
        throw usage_error("m_cap exceeds the search window 2(p-2)");
    if (!base->same_field(*w2.f1.proto().field()))
        throw usage_error("the two forms live over different fields");

    JetSearchResult res;
    res.m = 0;
    for (unsigned s = 1; s <= ext_cap; ++s) {
        FieldPtr fs = base;
        PolyOneForm<FFElem> e1 = w1, e2 = w2;
        if (s > 1) {
            fs = FiniteField::extension_any(base->p(), base->s() * s);
            FieldEmbedding emb(base, fs);
            e1 = embed_form(w1, emb);
            e2 = embed_form(w2, emb);
        }
        int m_here = 0;
        std::optional<JetMap> witness;
        for (int m = 1; m <= m_cap; ++m) {
            SearchCtx ctx{&e1, &e2, fs, m, 0, node_budget};
            JetMap out;
            if (!feasible_over(ctx, out)) break;
            m_here = m;
            witness = out;
        }
        if (m_here > res.m || (s == 1 && m_here == 0)) {
            res.m = m_here;
            res.witness = witness;
            res.witness_ext_degree = s;
        }
    }
    res.status = (res.m >= m_cap && m_cap > 0) ? JetSearchResult::Status::AtCap
                                               : JetSearchResult::Status::Exact;
    return res;
}

}  // namespace ccb
