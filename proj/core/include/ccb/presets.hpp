#pragma once

#include <vector>

#include "ccb/counting.hpp"
#include "ccb/formal_group.hpp"
#include "ccb/jets.hpp"

namespace ccb {
namespace presets {

// Weierstrass coefficient pool (a1, a2, a3, a4, a6); all three curves have
// good reduction at 5, 7, 11, 13.
std::vector<std::vector<Int>> elliptic_pool();

// Product E1 x E2 x E3 of the pool curves.
FormalGroupLaw product_e3(std::int64_t p, int prec, unsigned T);

// The sharp two-form pair ds1 + s1^2 ds2, ds1 + s2^2 ds2 over F_p.
std::pair<PolyOneForm<FFElem>, PolyOneForm<FFElem>> sharp_forms(const FieldPtr& field,
                                                                unsigned trunc = 8);

// Branch data of div(w1 ^ w2) = {s1 = s2} + {s1 = -s2} at the origin, with
// the pullback order of w0 = w1 along each branch.
std::vector<BranchRecord> sharp_branches(const FieldPtr& field, unsigned tb = 8);

// Square root of (1 + c t) as a power series over F_q (odd q).
TruncSeries<FFElem> sqrt_one_plus(const FFElem& c, unsigned trunc);

struct CurvePreset {
    VarietyPresentation variety;
    std::vector<SingularPointData> singular_data;
    unsigned r = 1;                // geometric components
    std::vector<Int> genera;       // one per component
    // branch parametrizations at each singular point, for delta
    std::vector<std::vector<std::pair<TruncSeries<FFElem>, TruncSeries<FFElem>>>> branch_params;
};

// z y^2 = x^2 (x + c z) in P^2; node at (0:0:1), split when c is a square.
CurvePreset nodal_cubic(const FieldPtr& field, std::int64_t c = 1, unsigned tb = 10);
// z y^2 = x^3; cusp at (0:0:1).
CurvePreset cuspidal_cubic(const FieldPtr& field, unsigned tb = 10);
// x y = 0 in P^2; the degenerate conic splitting into two lines.
CurvePreset conic_pair(const FieldPtr& field, unsigned tb = 10);

}  // namespace presets
}  // namespace ccb
