// Acceptance suite: one line per criterion, exit 0 only if all pass.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "ccb/bounds.hpp"
#include "ccb/counting.hpp"
#include "ccb/formal_group.hpp"
#include "ccb/jets.hpp"
#include "ccb/oracles.hpp"
#include "ccb/presets.hpp"
#include "ccb/realcert.hpp"
#include "ccb/zero_est.hpp"
#include "ccb/zeta.hpp"

using namespace ccb;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int n, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", n, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// ---- criterion 1: axiom + Exp/Log suite, T = 10, under 60 s ----
void criterion1() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    try {
        const unsigned T = 10;
        for (std::int64_t p : {5, 7, 11, 13}) {
            FormalGroupLaw add = FormalGroupLaw::additive(2, p, T + 4, T);
            add.exp_series();
            FormalGroupLaw mult = FormalGroupLaw::multiplicative(p, T + 4, T);
            mult.exp_series();
            for (const auto& a : presets::elliptic_pool()) {
                FormalGroupLaw e = FormalGroupLaw::elliptic(a, p, T + 4, T);
                e.exp_series();  // identity/commutativity/associativity at
                                 // construction; Exp/Log inverses and the
                                 // homomorphism identity here
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double dt = seconds_since(t0);
    if (dt >= 60.0) ok = false;
    std::ostringstream os;
    os << "axioms + Exp/Log for additive, multiplicative, 3 elliptic laws, p in {5,7,11,13}, "
          "T=10 ("
       << dt << " s)" << (detail.empty() ? "" : "; " + detail);
    report(1, os.str(), ok);
}

// ---- criterion 2: convergence lemmas as data, m <= 12, exact ----
void criterion2() {
    bool ok = true;
    std::string detail;
    try {
        const unsigned T = 12;
        for (std::int64_t p : {5, 7, 11, 13}) {
            std::vector<FormalGroupLaw> laws;
            laws.push_back(FormalGroupLaw::additive(1, p, T + 4, T));
            laws.push_back(FormalGroupLaw::multiplicative(p, T + 4, T));
            for (const auto& a : presets::elliptic_pool())
                laws.push_back(FormalGroupLaw::elliptic(a, p, T + 4, T));
            if (p == 5)
                laws.push_back(FormalGroupLaw::product(laws[1], laws[2]));
            for (const auto& g : laws) {
                for (const auto& ej : g.exp_series())
                    for (const auto& [m, c] : ej.terms()) {
                        if (c.is_zeroish()) continue;
                        long deg = mono_degree(m);
                        long vf = p_valuation(factorial(static_cast<unsigned>(deg)), Int(p));
                        if (c.val_regular() + vf < 0) {
                            ok = false;
                            detail = "m! c not integral at p=" + std::to_string(p);
                        }
                    }
                for (const auto& lj : g.log_series())
                    for (const auto& [m, c] : lj.terms()) {
                        if (c.is_zeroish()) continue;
                        long deg = mono_degree(m);
                        if (c.val_regular() < 0 &&
                            pow_int(Int(p), static_cast<unsigned long>(-c.val_regular())) >
                                Int(deg)) {
                            ok = false;
                            detail = "|b_m| > m at p=" + std::to_string(p);
                        }
                    }
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(2, "exponential integrality (m! c in Z_p) and logarithm growth (|b_m| <= m), "
              "all constructors, m <= 12, exact",
           ok, detail);
}

// ---- criterion 3: Delta^[m] vanishing, m <= 10 ----
void criterion3() {
    bool ok = true;
    std::string detail;
    try {
        const unsigned T = 10;
        for (std::int64_t p : {5, 7, 11, 13}) {
            std::vector<FormalGroupLaw> laws;
            laws.push_back(FormalGroupLaw::additive(1, p, T + 4, T));
            laws.push_back(FormalGroupLaw::multiplicative(p, T + 4, T));
            for (const auto& a : presets::elliptic_pool())
                laws.push_back(FormalGroupLaw::elliptic(a, p, T + 4, T));
            for (const auto& g : laws)
                for (unsigned m = 1; m <= 10; ++m) {
                    auto d = g.iterated_difference(m);  // throws on violation
                    for (const auto& dj : d)
                        for (unsigned low = 0; low < m; ++low)
                            if (!dj.homogeneous_part(low).is_weakly_zero()) ok = false;
                }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(3, "degree-<m terms of the iterated difference vanish, all constructors, m <= 10",
           ok, detail);
}

// ---- criterion 4: zero-estimate oracle, 200 randoms ----
void criterion4() {
    bool ok = true;
    int violations = 0;
    std::mt19937_64 rng(0xC0FFEEull);
    const std::vector<std::int64_t> primes{5, 7, 11};
    for (int trial = 0; trial < 200; ++trial) {
        std::int64_t p = primes[trial % 3];
        std::vector<Int> coeffs(7, Int(0));
        bool nz = false;
        for (auto& c : coeffs) {
            c = static_cast<std::int64_t>(rng() % 101) - 50;
            if (c != 0) nz = true;
        }
        if (!nz) coeffs[0] = 1;
        long exact = roots_in_pzp_oracle(coeffs, p, 12);
        PadicNum one = PadicNum::one(p, 16);
        TruncSeries<PadicNum> h(1, 6, one);
        for (unsigned i = 0; i < coeffs.size(); ++i)
            h.add_term(Mono{static_cast<std::uint16_t>(i)}, PadicNum::from_int(p, coeffs[i], 16));
        long nu = zero_bound_1var(h, Rat(1), TailGuard::polynomial());
        if (exact > nu) ++violations;
    }
    ok = violations == 0;
    report(4, "Hensel-oracle root count <= nu(h, 1/p) on 200 random polynomials, p in {5,7,11}",
           ok, "violations: " + std::to_string(violations));
}

// ---- criterion 5: disk-bound formula identities ----
void criterion5() {
    bool ok = true;
    std::string detail;
    try {
        for (long N = 1; N <= 20; ++N)
            for (std::int64_t p : {5, 7, 11, 13})
                for (std::int64_t e = 1; e < p - 1; ++e) {
                    Rat lam(e, p - 1);
                    if (disk_bound_value(N, lam) != Rat(1) + Rat(N - 1) / (Rat(1) - lam))
                        ok = false;
                }
        if (disk_bound_value(3, Rat(1, 6)) != Rat(17, 5)) ok = false;
        if (disk_bound_value(1, Rat(1, 6)) != Rat(1)) ok = false;
        LocalFieldParams lf(7, 1, 1);
        if (lf.lambda() != Rat(1, 6)) ok = false;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(5, "(N-lambda)/(1-lambda) = 1 + (N-1)/(1-lambda) exactly; p=7,N=3 gives 17/5; N=1 "
              "gives 1",
           ok, detail);
}

// ---- criterion 6: the sharp example, m = 2 = bound, under 30 s ----
void criterion6() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    try {
        for (std::int64_t p : {5, 7, 11, 13}) {
            auto fp = FiniteField::prime_field(p);
            auto [w1, w2] = presets::sharp_forms(fp);
            JetSearchResult r = max_jet_order(w1, w2, 4, 2);
            Int bound = overdetermined_bound(presets::sharp_branches(fp));
            if (r.status != JetSearchResult::Status::Exact || r.m != 2 || bound != 2) {
                ok = false;
                detail = "p=" + std::to_string(p) + ": m=" + std::to_string(r.m) +
                         ", bound=" + bound.str();
            }
        }
        // the convention resolution must be documented in the repository
        std::ifstream doc(std::string(CCB_SOURCE_DIR) + "/docs/jet-integrality.md");
        if (!doc || doc.peek() == EOF) {
            ok = false;
            detail += " (docs/jet-integrality.md missing)";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    double dt = seconds_since(t0);
    if (dt >= 30.0) ok = false;
    std::ostringstream os;
    os << "sharp form pair: jet search m((0,0)) = 2 and branch bound = 2, p in {5,7,11,13} ("
       << dt << " s)";
    report(6, os.str(), ok, detail);
}

// ---- criterion 7: off-divisor rigidity ----
void criterion7() {
    std::mt19937_64 rng(0xABCDEFull);
    int bad = 0, done = 0;
    while (done < 50) {
        std::int64_t p = (done % 2 == 0) ? 5 : 7;
        auto fp = FiniteField::prime_field(p);
        FFElem one = fp->one();
        auto rnd_series = [&]() {
            TruncSeries<FFElem> f(2, 6, one);
            for (unsigned a = 0; a <= 2; ++a)
                for (unsigned b = 0; a + b <= 2; ++b)
                    f.add_term(Mono{static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b)},
                               fp->from_int(Int(static_cast<std::int64_t>(rng() % p))));
            return f;
        };
        PolyOneForm<FFElem> wa(rnd_series(), rnd_series());
        PolyOneForm<FFElem> wb(rnd_series(), rnd_series());
        if (wedge(wa, wb).coeff(Mono{0, 0}).is_zero()) continue;  // need a unit wedge
        JetSearchResult r = max_jet_order(wa, wb, 3, 1);
        if (r.m != 0) ++bad;
        ++done;
    }
    report(7, "50 random form pairs with unit wedge at the origin all give m = 0", bad == 0,
           "violations: " + std::to_string(bad));
}

// ---- criterion 8: Weil-type bound and delta invariants ----
void criterion8() {
    bool ok = true;
    std::string detail;
    try {
        for (std::int64_t q : {5, 7}) {
            auto fq = FiniteField::prime_field(q);
            for (int kind = 0; kind < 3; ++kind) {
                presets::CurvePreset cp = kind == 0   ? presets::nodal_cubic(fq, 1)
                                          : kind == 1 ? presets::cuspidal_cubic(fq)
                                                      : presets::conic_pair(fq);
                Int ad = a_d_count(cp.variety, cp.singular_data, 1);
                if (!weil_check(ad, cp.r, cp.genera, Int(q))) {
                    ok = false;
                    detail = "Weil bound fails at q=" + std::to_string(q);
                }
            }
        }
        auto f5 = FiniteField::prime_field(5);
        auto t = TruncSeries<FFElem>::variable(1, 10, f5->one(), 0);
        if (delta_invariant({{t * t, t * t * t}}).delta != semigroup_gap_count({2, 3})) ok = false;
        if (delta_invariant({{t * t * t, t * t * t * t}}).delta != semigroup_gap_count({3, 4}))
            ok = false;
        if (delta_invariant({{t, t * t}}).delta != 0) ok = false;
        if (semigroup_gap_count({2, 3}) != 1 || semigroup_gap_count({3, 4}) != 3) ok = false;
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(8, "enumerated A_D <= (q+1) r + 2 sqrt(q) sum(g) for nodal/cuspidal cubics and the "
              "two-line conic over F_5, F_7; delta = 1, 3, 0 via the gap oracle",
           ok, detail);
}

// ---- criterion 9: closed-form constants, exact ----
void criterion9() {
    bool ok = true;
    std::string detail;
    try {
        if (Rat(128, 9) * Rat(36) != Rat(512)) ok = false;
        std::int64_t least = 513;
        while (!is_prime_u64(static_cast<std::uint64_t>(least))) ++least;
        if (least != 521) ok = false;
        Sym2Invariants g3 = sym2_invariants(3);
        if (g3.c1sq != 6 || g3.theta_k != 6 || g3.deg_hg != 48 || g3.deg_h2x != 24 ||
            g3.deg_hkx != 12)
            ok = false;
        for (unsigned g = 2; g <= 12; ++g) {
            Sym2Invariants iv = sym2_invariants(g);
            if (hyp_ii_threshold(g, iv.deg_h2x, iv.deg_hkx, iv.deg_hg) != Rat(iv.threshold))
                ok = false;
        }
        Sym2Report s3 = sym2_bound(3, 521, 0);
        if (!s3.genus3_margin_ok || !*s3.genus3_margin_ok) ok = false;
        for (std::int64_t p = 7; p <= 10000; ++p) {
            if (!is_prime_u64(static_cast<std::uint64_t>(p))) continue;
            if (!coefficient_dominated_by_4p(p)) {
                ok = false;
                detail = "dominance fails at p=" + std::to_string(p);
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(9, "constants reproduced exactly: 512/521; genus-3 invariants 6,6,48,24,12; "
              "(8g-10)^g for g in [2,12]; the 7.1p margin at 521; 4p dominance to 10^4",
           ok, detail);
}

// ---- criterion 10: cross-module link ----
void criterion10() {
    bool ok = true;
    std::string detail;
    try {
        const std::int64_t p = 5;
        const unsigned T = 8;
        FormalGroupLaw e3 = presets::product_e3(p, T + 4, T);
        PadicNum one = PadicNum::one(p, T + 4);
        LocalFieldParams lf(p, 1, 1);
        std::vector<PadicNum> u{one, one, one};
        JetMap jm = e3.reduce_jet_mod_p(u, 3);
        int m_member = 0;
        for (int d = 1; d <= 3; ++d) {
            if (jm.coords[2].coeff(Mono{static_cast<std::uint16_t>(d)}).is_zero())
                m_member = d;
            else
                break;
        }
        auto rep = e3.disk_bound(u, {3}, lf, m_member);
        if (rep.status != FormalGroupLaw::DiskBoundReport::Status::Ok || rep.N != 1 ||
            m_member != 0 || rep.N > m_member + 1) {
            ok = false;
            detail = "unit-direction case: N=" + std::to_string(rep.N) +
                     ", m=" + std::to_string(m_member);
        }
        auto inc = e3.disk_bound({one, one, PadicNum::from_int(p, p, T + 4)}, {3}, lf);
        if (inc.status != FormalGroupLaw::DiskBoundReport::Status::Inconclusive) {
            ok = false;
            detail += " divisible-direction case not inconclusive";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(10, "product preset: u3 unit gives N = 1 with jointly-integral jet order m = 0 "
               "(N <= m+1); u3 = 0 mod p triggers the inconclusive path",
           ok, detail);
}

// ---- criterion 11: determinism of selftest --full, under 10 minutes ----
void criterion11() {
    auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    const std::string cli = CCB_CLI_PATH;
    const std::string out1 = "acceptance_selftest_1.json";
    const std::string out2 = "acceptance_selftest_2.json";
    auto run_once = [&](const std::string& out) {
        // identical argv both times; only the shell redirection differs
        std::string cmd = "\"" + cli + "\" selftest --full > " + out + " 2> /dev/null";
        return std::system(cmd.c_str());
    };
    int c1 = run_once(out1);
    int c2 = run_once(out2);
    if (c1 != 0 || c2 != 0) {
        ok = false;
        detail = "selftest exit codes " + std::to_string(c1) + ", " + std::to_string(c2);
    } else {
        std::ifstream f1(out1), f2(out2);
        std::stringstream s1, s2;
        s1 << f1.rdbuf();
        s2 << f2.rdbuf();
        if (s1.str().empty() || s1.str() != s2.str()) {
            ok = false;
            detail = "reports differ or are empty";
        }
    }
    std::remove(out1.c_str());
    std::remove(out2.c_str());
    double dt = seconds_since(t0);
    if (dt >= 600.0) ok = false;
    std::ostringstream os;
    os << "selftest --full twice produces byte-identical reports (" << dt << " s)";
    report(11, os.str(), ok, detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (g_failures == 0) {
        std::printf("acceptance: all 11 criteria pass\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
