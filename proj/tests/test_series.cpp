#include <doctest.h>

#include <random>

#include "ccb/series.hpp"
#include "ccb/series_text.hpp"

using namespace ccb;

namespace {

PadicNum one5() { return PadicNum::one(5, 12); }

TruncSeries<FFElem> random_ff_series(const FieldPtr& F, unsigned nvars, unsigned trunc,
                                     std::mt19937_64& rng, bool zero_const) {
    TruncSeries<FFElem> s(nvars, trunc, F->one());
    for (int k = 0; k < 8; ++k) {
        Mono m(nvars, 0);
        unsigned total = 0;
        for (auto& e : m) {
            e = static_cast<std::uint16_t>(rng() % 3);
            total += e;
        }
        if (total > trunc) continue;
        if (zero_const && total == 0) continue;
        s.add_term(m, F->from_int(Int(static_cast<std::int64_t>(rng() % F->p()))));
    }
    return s;
}

}  // namespace

TEST_CASE("compose basics and truncation") {
    using S = TruncSeries<PadicNum>;
    PadicNum one = one5();
    S h(2, 6, one);
    h.add_term(Mono{1, 0}, one);
    h.add_term(Mono{0, 2}, one);
    S z = S::variable(1, 6, one, 0);
    CHECK((h.compose({z, z}) - (z + z * z)).is_weakly_zero());

    S prod(2, 4, one);
    prod.add_term(Mono{1, 1}, one);
    S z4 = S::variable(1, 4, one, 0);
    S got = prod.compose({z4, z4 * z4});
    CHECK(got.significant_terms() == 1);
    CHECK(got.coeff(Mono{3}).same_value(one));

    S bad = S::constant(1, 6, one, one);
    CHECK_THROWS_AS(h.compose({bad, z}), usage_error);
}

TEST_CASE("compose is associative up to truncation") {
    auto F = FiniteField::prime_field(7);
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        unsigned T = 6;
        TruncSeries<FFElem> H = random_ff_series(F, 2, T, rng, false);
        std::vector<TruncSeries<FFElem>> a, b;
        for (int i = 0; i < 2; ++i) a.push_back(random_ff_series(F, 2, T, rng, true));
        for (int i = 0; i < 2; ++i) b.push_back(random_ff_series(F, 2, T, rng, true));
        std::vector<TruncSeries<FFElem>> ab;
        for (const auto& s : a) ab.push_back(s.compose(b));
        TruncSeries<FFElem> lhs = H.compose(a).compose(b);
        TruncSeries<FFElem> rhs = H.compose(ab);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("homogeneous parts reconstruct and restriction matches") {
    auto F = FiniteField::prime_field(5);
    std::mt19937_64 rng(5);
    TruncSeries<FFElem> H = random_ff_series(F, 3, 5, rng, false);
    TruncSeries<FFElem> sum(3, 5, F->one());
    for (unsigned d = 0; d <= 5; ++d) sum = sum + H.homogeneous_part(d);
    CHECK((sum - H).is_zero());

    std::vector<FFElem> u{F->from_int(2), F->from_int(3), F->one()};
    TruncSeries<FFElem> line = H.restrict_to_line(u);
    for (unsigned d = 0; d <= 5; ++d) {
        FFElem via_part = H.homogeneous_part(d).eval(u);
        CHECK(line.coeff(Mono{static_cast<std::uint16_t>(d)}) == via_part);
    }
}

TEST_CASE("restriction tracks p-adic coefficient norms") {
    // H with coefficient 5 at x1^2 over Q_5: P_{H,2}(u) has norm <= 1/5 for u = (1, 0)
    PadicNum one = one5();
    TruncSeries<PadicNum> H(2, 4, one);
    H.add_term(Mono{2, 0}, PadicNum::from_int(5, 5, 12));
    H.add_term(Mono{0, 2}, one);
    auto line = H.restrict_to_line({one, PadicNum::zero(5)});
    CHECK(line.coeff(Mono{2}).norm() <= Rat(1, 5));
}

TEST_CASE("derivative: Leibniz rule and characteristic quirks") {
    auto f3 = FiniteField::prime_field(3);
    TruncSeries<FFElem> z = TruncSeries<FFElem>::variable(1, 5, f3->one(), 0);
    CHECK((z * z * z).derivative(0).is_zero());  // 3 = 0

    auto F = FiniteField::prime_field(7);
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        TruncSeries<FFElem> a = random_ff_series(F, 2, 6, rng, false);
        TruncSeries<FFElem> b = random_ff_series(F, 2, 6, rng, false);
        for (unsigned v = 0; v < 2; ++v) {
            TruncSeries<FFElem> lhs = (a * b).derivative(v);
            TruncSeries<FFElem> rhs = a.derivative(v) * b.truncated(5) + a.truncated(5) * b.derivative(v);
            CHECK((lhs - rhs).is_zero());
        }
    }
}

TEST_CASE("wedge: bilinearity, antisymmetry, the sharp pair") {
    auto F = FiniteField::prime_field(5);
    FFElem one = F->one();
    TruncSeries<FFElem> c1 = TruncSeries<FFElem>::constant(2, 6, one, one);
    TruncSeries<FFElem> s1 = TruncSeries<FFElem>::variable(2, 6, one, 0);
    TruncSeries<FFElem> s2 = TruncSeries<FFElem>::variable(2, 6, one, 1);
    PolyOneForm<FFElem> w1(c1, s1 * s1);
    PolyOneForm<FFElem> w2(c1, s2 * s2);
    TruncSeries<FFElem> expect(2, 6, one);
    expect.add_term(Mono{0, 2}, one);
    expect.add_term(Mono{2, 0}, -one);
    CHECK((wedge(w1, w2) - expect).is_zero());
    CHECK(wedge(w1, w1).is_zero());
    CHECK(wedge(w2, w2).is_zero());

    std::mt19937_64 rng(3);
    PolyOneForm<FFElem> wa(random_ff_series(F, 2, 6, rng, false),
                           random_ff_series(F, 2, 6, rng, false));
    PolyOneForm<FFElem> wb(random_ff_series(F, 2, 6, rng, false),
                           random_ff_series(F, 2, 6, rng, false));
    for (std::int64_t c = 0; c < 5; ++c) {
        FFElem fc = F->from_int(Int(c));
        PolyOneForm<FFElem> combo(wa.f1 + wb.f1.scaled(fc), wa.f2 + wb.f2.scaled(fc));
        TruncSeries<FFElem> lhs = wedge(combo, w1);
        TruncSeries<FFElem> rhs = wedge(wa, w1) + wedge(wb, w1).scaled(fc);
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("jet ring reduction follows the relation ideal") {
    auto f5 = FiniteField::prime_field(5);
    FFElem one = f5->one();
    TruncSeries<FFElem> g(1, 4, one);
    g.add_term(Mono{0}, one);
    g.add_term(Mono{1}, one);
    g.add_term(Mono{2}, one);
    JetRingForm r2 = jetring_reduce(g, 2);
    CHECK(r2.g.coeff(Mono{0}).is_one());
    CHECK(r2.g.coeff(Mono{1}).is_one());
    CHECK(r2.g.coeff(Mono{2}).is_zero());  // 3 invertible kills z^2

    TruncSeries<FFElem> z4(1, 4, one);
    z4.add_term(Mono{4}, one);
    CHECK(!jetring_reduce(z4, 4).is_zero());  // m + 1 = 5 = 0: the relation is vacuous

    TruncSeries<FFElem> cst = TruncSeries<FFElem>::constant(1, 2, one, one);
    CHECK(jetring_reduce(cst, 0).is_zero());  // Omega^1 of k[z]/(z) vanishes
}

TEST_CASE("text and JSON formats round-trip bit-exactly") {
    PadicNum one = one5();
    TruncSeries<PadicNum> H(2, 6, one);
    H.add_term(Mono{1, 0}, one);
    H.add_term(Mono{1, 1}, PadicNum::from_rat(5, Rat(1, 2), 12));
    H.add_term(Mono{0, 3}, PadicNum::from_int(5, -3, 12));
    std::string txt = series_to_text(H);
    TruncSeries<PadicNum> back = parse_padic_series(txt, 2, 6, one);
    REQUIRE(back.terms().size() == H.terms().size());
    for (const auto& [m, c] : H.terms()) {
        CHECK(back.coeff(m).same_value(c));
        CHECK(back.coeff(m).prec() == c.prec());
        CHECK(back.coeff(m).str() == c.str());
    }

    auto f9 = FiniteField::extension(3, 2);
    TruncSeries<FFElem> G(2, 4, f9->one());
    G.add_term(Mono{1, 0}, f9->gen());
    G.add_term(Mono{0, 2}, f9->gen() + f9->one());
    std::string gt = series_to_text(G);
    TruncSeries<FFElem> gback = parse_ff_series(gt, 2, 4, f9->one());
    CHECK((gback - G).is_zero());

    TruncSeries<FFElem> simple =
        parse_ff_series("1 + x1^2*x2", 2, 6, FiniteField::prime_field(5)->one());
    CHECK(series_to_text(simple) == "1 + x1^2*x2");
}

TEST_CASE("one-form text round-trip") {
    auto f5 = FiniteField::prime_field(5);
    PolyOneForm<FFElem> w = parse_ff_oneform("ds1 + s1^2*ds2", 6, f5->one());
    CHECK(w.f1.constant_term().is_one());
    CHECK(w.f2.coeff(Mono{2, 0}).is_one());
    PolyOneForm<FFElem> back = parse_ff_oneform(oneform_to_text(w), 6, f5->one());
    CHECK((back.f1 - w.f1).is_zero());
    CHECK((back.f2 - w.f2).is_zero());
    CHECK_THROWS_AS(parse_ff_oneform("s1 + s2", 6, f5->one()), usage_error);
}

TEST_CASE("series JSON round-trips bit-exactly") {
    PadicNum one = PadicNum::one(5, 12);
    TruncSeries<PadicNum> H(2, 6, one);
    H.add_term(Mono{1, 0}, one);
    H.add_term(Mono{2, 1}, PadicNum::from_rat(5, Rat(7, 2), 12));
    std::string js = series_to_json(H);
    TruncSeries<PadicNum> back = padic_series_from_json(js, 2, 6, one);
    REQUIRE(back.terms().size() == H.terms().size());
    for (const auto& [m, c] : H.terms()) CHECK(back.coeff(m).str() == c.str());
    CHECK(series_to_json(back) == js);

    auto f9 = FiniteField::extension(3, 2);
    TruncSeries<FFElem> G(1, 4, f9->one());
    G.add_term(Mono{2}, f9->gen());
    std::string gj = series_to_json(G);
    CHECK((ff_series_from_json(gj, 1, 4, f9->one()) - G).is_zero());
    CHECK_THROWS_AS(ff_series_from_json("[{\"exps\": [1]}]", 1, 4, f9->one()), usage_error);
}

TEST_CASE("the text parser never crashes on hostile input") {
    auto f5 = FiniteField::prime_field(5);
    std::mt19937_64 rng(0xBEEF);
    const std::string alphabet = "x12+-*^()[]/ sdtz";
    int parsed = 0, rejected = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::string text;
        unsigned len = 1 + rng() % 24;
        for (unsigned i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
        try {
            auto s = parse_ff_series(text, 2, 8, f5->one());
            // whatever parsed must survive a print/parse round trip
            auto back = parse_ff_series(series_to_text(s), 2, 8, f5->one());
            CHECK((back - s).is_zero());
            ++parsed;
        } catch (const usage_error&) {
            ++rejected;
        } catch (const std::invalid_argument&) {
            ++rejected;
        } catch (const std::out_of_range&) {
            ++rejected;
        }
    }
    CHECK(parsed + rejected == 400);
    CHECK(rejected > 0);  // the soup is mostly garbage
}
