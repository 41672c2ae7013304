#include "ccb/presets.hpp"

namespace ccb {
namespace presets {

std::vector<std::vector<Int>> elliptic_pool() {
    return {
        {0, 0, 1, 0, 0},    // y^2 + y = x^3, disc -27
        {0, 0, 0, -1, 1},   // y^2 = x^3 - x + 1, disc -368
        {1, 0, 0, 0, -1},   // y^2 + xy = x^3 - 1, disc -431
    };
}

FormalGroupLaw product_e3(std::int64_t p, int prec, unsigned T) {
    auto pool = elliptic_pool();
    FormalGroupLaw e1 = FormalGroupLaw::elliptic(pool[0], p, prec, T);
    FormalGroupLaw e2 = FormalGroupLaw::elliptic(pool[1], p, prec, T);
    FormalGroupLaw e3 = FormalGroupLaw::elliptic(pool[2], p, prec, T);
    return FormalGroupLaw::product(FormalGroupLaw::product(e1, e2), e3);
}

std::pair<PolyOneForm<FFElem>, PolyOneForm<FFElem>> sharp_forms(const FieldPtr& field,
                                                                unsigned trunc) {
    FFElem one = field->one();
    TruncSeries<FFElem> c1 = TruncSeries<FFElem>::constant(2, trunc, one, one);
    TruncSeries<FFElem> s1 = TruncSeries<FFElem>::variable(2, trunc, one, 0);
    TruncSeries<FFElem> s2 = TruncSeries<FFElem>::variable(2, trunc, one, 1);
    PolyOneForm<FFElem> w1(c1, s1 * s1);
    PolyOneForm<FFElem> w2(c1, s2 * s2);
    return {w1, w2};
}

std::vector<BranchRecord> sharp_branches(const FieldPtr& field, unsigned tb) {
    auto [w1, w2] = sharp_forms(field, tb);
    FFElem one = field->one();
    TruncSeries<FFElem> t = TruncSeries<FFElem>::variable(1, tb, one, 0);
    std::vector<BranchRecord> out;
    for (int sign : {1, -1}) {
        BranchRecord br;
        br.a = 1;
        br.gg = 0;
        TruncSeries<FFElem> second = sign == 1 ? t : -t;
        BranchOrd bo = ord_on_branch(t, second, w1);
        br.param = {t, second};
        br.ord_finite = bo.finite;
        br.ord_w0 = bo.ord;
        out.push_back(std::move(br));
    }
    return out;
}

TruncSeries<FFElem> sqrt_one_plus(const FFElem& c, unsigned trunc) {
    auto field = c.field();
    if (field->p() == 2) throw usage_error("square-root series needs odd characteristic");
    FFElem one = field->one();
    FFElem two_inv = field->from_int(2).inverse();
    // s^2 = 1 + c t, s = 1 + sum s_k t^k solved coefficient by coefficient
    std::vector<FFElem> s{one};
    for (unsigned k = 1; k <= trunc; ++k) {
        FFElem target = (k == 1) ? c : field->zero();
        FFElem acc = field->zero();
        for (unsigned i = 1; i + 1 <= k; ++i) acc = acc + s[i] * s[k - i];
        s.push_back((target - acc) * two_inv);
    }
    TruncSeries<FFElem> out(1, trunc, one);
    for (unsigned k = 0; k <= trunc; ++k)
        out.add_term(Mono{static_cast<std::uint16_t>(k)}, s[k]);
    return out;
}

namespace {

TruncSeries<FFElem> poly3(const FieldPtr& field, unsigned trunc,
                          const std::vector<std::pair<Mono, std::int64_t>>& terms) {
    TruncSeries<FFElem> f(3, trunc, field->one());
    for (const auto& [m, c] : terms) f.add_term(m, field->from_int(Int(c)));
    return f;
}

}  // namespace

CurvePreset nodal_cubic(const FieldPtr& field, std::int64_t c, unsigned tb) {
    CurvePreset cp;
    // z y^2 - x^3 - c x^2 z = 0   (node at (0:0:1) with tangents y^2 = c x^2)
    cp.variety.ambient = VarietyPresentation::Ambient::Projective;
    cp.variety.ambient_dim = 2;
    cp.variety.field = field;
    cp.variety.polys = {poly3(field, 3,
                              {{Mono{0, 2, 1}, 1}, {Mono{3, 0, 0}, -1}, {Mono{2, 0, 1}, -c}})};
    FFElem cf = field->from_int(Int(c));
    bool split = field->chi(cf) == 1;
    FieldPtr fb = split ? field : FiniteField::extension_any(field->p(), field->s() * 2);
    FFElem cb = split ? cf : FieldEmbedding(field, fb)(cf);
    // branches y = +- sqrt(c) x sqrt(1 + x/c): parametrize x = t
    FFElem root_c = fb->zero();
    for (std::uint64_t k = 0; k < fb->q(); ++k) {
        FFElem cand = fb->element(k);
        if (cand * cand == cb) {
            root_c = cand;
            break;
        }
    }
    if (root_c.is_zero()) throw consistency_error("no square root of the tangent slope found");
    TruncSeries<FFElem> t = TruncSeries<FFElem>::variable(1, tb, fb->one(), 0);
    TruncSeries<FFElem> s = sqrt_one_plus(cb.inverse(), tb);  // sqrt(1 + t/c)
    TruncSeries<FFElem> y_of_t = (t * s).scaled(root_c);
    cp.branch_params = {{{t, y_of_t}, {t, -y_of_t}}};
    SingularPointData node;
    node.point_index = {0, 0, 1};  // (0 : 0 : 1) as element indices
    node.field_ext = 1;
    node.r_local = 2;
    cp.singular_data = {node};
    cp.r = 1;
    cp.genera = {Int(0)};
    return cp;
}

CurvePreset cuspidal_cubic(const FieldPtr& field, unsigned tb) {
    CurvePreset cp;
    // z y^2 - x^3 = 0 (cusp at (0:0:1))
    cp.variety.ambient = VarietyPresentation::Ambient::Projective;
    cp.variety.ambient_dim = 2;
    cp.variety.field = field;
    cp.variety.polys = {poly3(field, 3, {{Mono{0, 2, 1}, 1}, {Mono{3, 0, 0}, -1}})};
    TruncSeries<FFElem> t = TruncSeries<FFElem>::variable(1, tb, field->one(), 0);
    cp.branch_params = {{{t * t, t * t * t}}};
    SingularPointData cusp;
    cusp.point_index = {0, 0, 1};
    cusp.field_ext = 1;
    cusp.r_local = 1;
    cp.singular_data = {cusp};
    cp.r = 1;
    cp.genera = {Int(0)};
    return cp;
}

CurvePreset conic_pair(const FieldPtr& field, unsigned tb) {
    CurvePreset cp;
    // x y = 0: the conic that splits into the lines x = 0 and y = 0
    cp.variety.ambient = VarietyPresentation::Ambient::Projective;
    cp.variety.ambient_dim = 2;
    cp.variety.field = field;
    cp.variety.polys = {poly3(field, 2, {{Mono{1, 1, 0}, 1}})};
    TruncSeries<FFElem> t = TruncSeries<FFElem>::variable(1, tb, field->one(), 0);
    TruncSeries<FFElem> z = TruncSeries<FFElem>::zero(1, tb, field->one());
    cp.branch_params = {{{t, z}, {z, t}}};
    SingularPointData node;
    node.point_index = {0, 0, 1};
    node.field_ext = 1;
    node.r_local = 2;
    cp.singular_data = {node};
    cp.r = 2;
    cp.genera = {Int(0), Int(0)};
    return cp;
}

}  // namespace presets
}  // namespace ccb
