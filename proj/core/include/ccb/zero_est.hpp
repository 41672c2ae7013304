#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccb/local_field.hpp"
#include "ccb/series.hpp"

namespace ccb {

// Radii and growth constants are powers of p throughout: r = p^{-rho},
// M = p^{mu}; all norm comparisons then happen in exact rational exponent
// arithmetic. A general (M, r) entry point with certified log brackets is
// provided for completeness.

// Certificate controlling coefficients beyond the truncation order.
struct TailGuard {
    enum class Kind { Polynomial, Factorial };
    Kind kind = Kind::Polynomial;
    // Factorial-type: |c_alpha| <= M^{||alpha||-1} with M = p^mu.
    Rat mu = 0;

    static TailGuard polynomial() { return TailGuard{Kind::Polynomial, 0}; }
    static TailGuard factorial(const Rat& mu) { return TailGuard{Kind::Factorial, mu}; }
};

struct RadiusNormReport {
    long nu = 0;              // largest index attaining |h|_r
    Rat norm_exponent = 0;    // |h|_r = p^{-norm_exponent}
    std::vector<std::string> checks;
};

// |h|_r and nu(h, r) for a one-variable series over Q_p, r = p^{-rho}.
RadiusNormReport radius_norm(const TruncSeries<PadicNum>& h, const Rat& rho,
                             const TailGuard& guard);

// Bound on the number of zeros (with multiplicity) of h in the closed ball
// of radius r = p^{-rho}: returns nu(h, r).
long zero_bound_1var(const TruncSeries<PadicNum>& h, const Rat& rho, const TailGuard& guard);

struct MVZeroReport {
    long witness_degree = 0;    // N
    Rat lambda = 0;             // e/(p-1) when exact; else an upper bracket
    bool lambda_exact = true;
    Rat bound_real = 0;
    Int bound_floor = 0;
    std::vector<std::string> hypothesis_checks;
};

// Multivariable zero estimate with the canonical M = p^{ef/(p-1)}, r = 1/q.
// Verifies hypothesis (i) on every stored coefficient and (ii) at the given
// witness degree N, then returns (N - lambda)/(1 - lambda) and its floor.
MVZeroReport mv_zero_bound(const TruncSeries<PadicNum>& H, const std::vector<PadicNum>& u,
                           const LocalFieldParams& params, long N);

// General (M, r) variant: mu, rho are exponents when exact_powers is true,
// otherwise plain rational values for M and 1/r whose logs are bracketed
// with outward rounding (the returned bound is then still an upper bound).
MVZeroReport mv_zero_bound_general(const TruncSeries<PadicNum>& H, const std::vector<PadicNum>& u,
                                   const Rat& M_value, const Rat& r_value, long N);

// The disk-bound arithmetic both fgroup and the CLI share.
Rat disk_bound_value(long N, const Rat& lambda);

}  // namespace ccb
