#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ccb/finite_field.hpp"
#include "ccb/series.hpp"
#include "ccb/surd.hpp"

namespace ccb {

// Affine or projective presentation of a variety over F_q by polynomial
// equations. Polynomials use the sparse series type with the truncation
// order at (or above) their degree.
struct VarietyPresentation {
    enum class Ambient { Affine, Projective };
    Ambient ambient = Ambient::Affine;
    unsigned ambient_dim = 2;  // affine n or projective n (n+1 coordinates)
    std::vector<TruncSeries<FFElem>> polys;
    FieldPtr field;

    unsigned ncoords() const {
        return ambient == Ambient::Affine ? ambient_dim : ambient_dim + 1;
    }
    void validate() const;
};

inline constexpr std::uint64_t kDefaultEnumCap = 1000000;

// #V(F_{q^n}) by exhaustive enumeration, or by the per-column quadratic
// fast path for plane curves of y-degree <= 2 (exact either way).
Int count_points(const VarietyPresentation& v, unsigned n,
                 std::uint64_t cap = kDefaultEnumCap);

// A point over the scan field: coordinate vector (projective points are
// normalized representatives with first nonzero coordinate 1).
struct ScanPoint {
    std::vector<FFElem> coords;
    std::string str() const;
};

// All points of V(F_{q^s}) where the Jacobian criterion flags a singular
// point (all defining polynomials and all their partials vanish), s <= 2.
std::vector<ScanPoint> singular_points(const VarietyPresentation& v, unsigned s,
                                       std::uint64_t cap = kDefaultEnumCap);

// Branch bookkeeping at one singular point.
struct SingularPointData {
    std::vector<std::int64_t> point_index;  // element indices of the coordinates
    unsigned field_ext = 1;                 // the point lives in F_{q^field_ext}
    unsigned r_local = 1;                   // geometric branches above the point
    std::optional<long> delta;              // order of singularity, when computed
};

// A_D(F_{q^n}) = #D(F_{q^n}) + sum over L-rational singular points of
// (r_local - 1). Every discovered singular point must carry branch data.
Int a_d_count(const VarietyPresentation& v, const std::vector<SingularPointData>& branch_data,
              unsigned n, std::uint64_t cap = kDefaultEnumCap);

// (q+1) r + 2 sqrt(q) * sum(genera), as an exact surd.
QuadSurd weil_bound(unsigned r, const std::vector<Int>& genera, const Int& q);
bool weil_check(const Int& a_d_value, unsigned r, const std::vector<Int>& genera, const Int& q);

// Order of singularity from branch parametrizations: delta = dim of the
// cokernel of the local algebra inside the product of branch power series
// rings, computed by linear algebra over F_q with stabilization detection.
struct DeltaReport {
    long delta = 0;
    unsigned r_local = 1;
    unsigned stabilized_at = 0;  // truncation order where the value stabilized
};
DeltaReport delta_invariant(
    const std::vector<std::pair<TruncSeries<FFElem>, TruncSeries<FFElem>>>& branches,
    unsigned tb_start = 8, unsigned tb_cap = 64);

// Hironaka bookkeeping: g_a = g_g + sum(delta).
Int genus_bookkeeping(const Int& geometric_genus, const std::vector<long>& deltas);

// Multiplicity of a plane-curve local equation at the origin (least total
// degree of a term).
long plane_curve_multiplicity(const TruncSeries<FFElem>& local_eq);

}  // namespace ccb
