#pragma once

#include <cstdint>

#include "ccb/errors.hpp"
#include "ccb/int.hpp"

namespace ccb {

// Symbolic parameters of a finite extension K/Q_p: ramification index e,
// residue degree f, q = p^f, and the loss factor lambda = e/(p-1).
struct LocalFieldParams {
    std::int64_t p = 5;
    std::int64_t e = 1;
    std::int64_t f = 1;

    LocalFieldParams() = default;
    LocalFieldParams(std::int64_t p_, std::int64_t e_, std::int64_t f_) : p(p_), e(e_), f(f_) {
        if (!is_prime_u64(static_cast<std::uint64_t>(p))) throw usage_error("p is not prime");
        if (e < 1 || f < 1) throw usage_error("need e >= 1 and f >= 1");
    }

    Int q() const { return pow_int(Int(p), static_cast<unsigned long>(f)); }

    // lambda = e/(p-1); this equals log M / log(r^{-1}) for the canonical
    // choices M = p^{ef/(p-1)}, r = 1/q, an identity the ctor-level data
    // makes exact: (e*f)/((p-1)*f) = e/(p-1).
    Rat lambda() const { return Rat(e, p - 1); }

    bool lambda_below_one() const { return p > e + 1; }

    // exponent mu with M = p^mu for the canonical growth constant.
    Rat growth_exponent() const { return Rat(e * f, p - 1); }

    // exponent rho with r = p^{-rho} for the canonical radius 1/q.
    Rat radius_exponent() const { return Rat(f); }
};

}  // namespace ccb
