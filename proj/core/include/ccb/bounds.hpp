#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccb/int.hpp"
#include "ccb/local_field.hpp"
#include "ccb/surd.hpp"

namespace ccb {

struct SurfaceBoundInputs {
    LocalFieldParams field;         // p, e, f
    unsigned ambient_dim = 3;       // n
    Int c1sq = 1;                   // first Chern number of the surface
    Int nxk = 0;                    // #X'(k), supplied or from rh_point_upper
    std::optional<Int> b1, b2, b3;  // Betti numbers
    std::optional<Int> deg_h2x;     // deg(H^2 . X)
    std::optional<Int> deg_hkx;     // deg(H . K_X)
    std::optional<Int> deg_hn;      // deg(H^n)
};

struct GuardCheck {
    std::string name;
    bool pass = false;
    std::string witness;
};

struct GuardReport {
    bool ramification = false;
    std::optional<bool> hyp_i;
    std::optional<bool> hyp_ii;
    std::vector<GuardCheck> checks;
    bool all_requested_pass() const;
};

// Ramification guard p > max(e+1, exp(e/exp(1))); hypothesis (i)
// p > (128/9) c1sq^2 (ambient dimension 3); hypothesis (ii)
// p > max(3 c1sq + 2, n! (3 deg(H^2.X) + deg(H.K_X))^n / (n^n deg(H^n))).
GuardReport guards(const SurfaceBoundInputs& in, bool want_i, bool want_ii);

struct MainBoundReport {
    QuadSurd bound;        // NXk + (1 - e/(p-1))^{-1} (q + 4 sqrt(q) + 3) c1sq
    Int bound_floor;       // cardinality bound, so floor
    Rat lambda;
    Int simplified;        // NXk + 4 p c1sq
    bool simplified_dominates;  // exact check, meaningful for e = f = 1, p >= 7
    GuardReport guard_report;
    bool hypotheses_met;
};

MainBoundReport main_bound(const SurfaceBoundInputs& in, bool formula_only = false);

// q^2 + b3 q^{3/2} + b2 q + b1 q^{1/2} + 1, rounded up.
Int rh_point_upper(std::int64_t p, std::int64_t f, const Int& b1, const Int& b2, const Int& b3);

struct Sym2Invariants {
    Int g;
    Int c1sq;       // (4g-9)(g-1)
    Int theta_k;    // 2g(g-2)
    Int deg_hg;     // 2^g g!
    Int deg_h2x;    // 4g(g-1)
    Int deg_hkx;    // 4g(g-2)
    Int threshold;  // (8g-10)^g
    Int v2 = 1;
    Int dv = 2;
    Int d2;         // 4 - 4g
    bool c1sq_positive;  // flags the g = 2 boundary case
};

Sym2Invariants sym2_invariants(const Int& g);

// n! (3 a + b)^n / (n^n c) as an exact rational.
Rat hyp_ii_threshold(unsigned n, const Int& a, const Int& b, const Int& c);

struct ColemanReport {
    Int bound;  // count + 2g - 2
    bool p_admissible;
};
ColemanReport coleman_bound(const Int& g, std::int64_t p, const Int& count);

struct Sym2Report {
    Sym2Invariants inv;
    QuadSurd bound;
    Int bound_floor;
    bool threshold_ok;       // p > (8g-10)^g
    bool hypotheses_met;
    // genus-3 extra: 6 (p-1)/(p-2) (p + 4 sqrt p + 3) < 7.1 p, exact
    std::optional<bool> genus3_margin_ok;
};
Sym2Report sym2_bound(const Int& g, std::int64_t p, const Int& count);

// (p-1)/(p-2) * (p + 4 sqrt(p) + 3) < 4p, exact; the RH-style dominance.
bool coefficient_dominated_by_4p(std::int64_t p);

}  // namespace ccb
