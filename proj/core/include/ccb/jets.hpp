#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccb/series.hpp"
#include "ccb/series_text.hpp"

namespace ccb {

// Morphism Spec k[z]/(z^{m+1}) -> local chart: coordinate polynomials with
// zero constant term, degree <= m.
struct JetMap {
    int m = 0;
    std::vector<TruncSeries<FFElem>> coords;  // one-variable polys in z

    // Surjective onto E_m, i.e. some coordinate has a unit z-coefficient.
    bool closed_immersion() const {
        if (m == 0) return true;
        for (const auto& c : coords) {
            FFElem lin = c.coeff(Mono{1});
            if (!lin.is_zero()) return true;
        }
        return false;
    }

    std::string str() const {
        std::string out = "(";
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) out += ", ";
            out += series_to_text(coords[i]);
        }
        return out + ") mod z^" + std::to_string(m + 1);
    }
};

// Pullback of a one-form along a two-coordinate jet:
//   g = f1(phi1, phi2) * phi1' + f2(phi1, phi2) * phi2',
// truncated at z^{m+1} and reduced in Omega^1 of the jet ring.
JetRingForm pullback_form(const JetMap& phi, const PolyOneForm<FFElem>& w);

inline bool is_integral(const JetMap& phi, const PolyOneForm<FFElem>& w) {
    return pullback_form(phi, w).is_zero();
}

// Vanishing order in t of the pullback along a branch parametrization
// (phi1(t), phi2(t)); "at least T_b" when it vanishes to the truncation.
struct BranchOrd {
    bool finite = true;
    long ord = 0;  // when !finite: vanishes up to the parametrization order
};
BranchOrd ord_on_branch(const TruncSeries<FFElem>& phi1, const TruncSeries<FFElem>& phi2,
                        const PolyOneForm<FFElem>& w);

// One local branch of a component of the divisor: multiplicity, geometric
// genus bookkeeping, optional parametrization, and the vanishing order of
// the pulled-back reference form.
struct BranchRecord {
    Int a = 1;                      // multiplicity of the component in D
    Int gg = 0;                     // geometric genus of the component
    std::optional<std::pair<TruncSeries<FFElem>, TruncSeries<FFElem>>> param;
    bool ord_finite = true;
    long ord_w0 = 0;
};

// Sum over branches of a*(ord+1); errors if any branch is w0-integral.
Int overdetermined_bound(const std::vector<BranchRecord>& branches);

struct JetSearchResult {
    enum class Status { Exact, AtCap };
    Status status = Status::Exact;
    int m = 0;  // the computed m(x), or the cap when status == AtCap
    std::optional<JetMap> witness;     // a jointly integral jet of order m (m >= 1)
    unsigned witness_ext_degree = 1;   // s with the witness defined over F_{q^s}
};

// Largest m <= m_cap admitting a closed-immersion jet at the origin that is
// integral for both forms, searching over F_{q^s} for s <= ext_cap.
JetSearchResult max_jet_order(const PolyOneForm<FFElem>& w1, const PolyOneForm<FFElem>& w2,
                              int m_cap, unsigned ext_cap = 2,
                              std::uint64_t node_budget = 200000);

}  // namespace ccb
