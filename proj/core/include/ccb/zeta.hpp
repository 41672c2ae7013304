#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccb/int.hpp"

namespace ccb {

// Truncations of Z(T) = exp(sum N_n T^n / n) and of the modified zeta
// Z*(T) = Z(T)/(1-T)^{c_D}, in exact rational arithmetic.
struct ZetaTruncation {
    unsigned B = 0;
    std::vector<Int> counts;   // N_1..N_B
    Int c_d = 0;
    std::vector<Rat> z;        // coefficients 0..B of Z
    std::vector<Rat> zstar;    // coefficients 0..B of Z*
};

// Builds both truncations; asserts the integrality of the Z coefficients
// (a theorem for genuine count sequences) and that the log-derivative of
// Z* recovers N*_n = N_n + c_D for n <= B.
ZetaTruncation zeta_ops(const std::vector<Int>& counts, const Int& c_d);

// Counts recovered from a series truncation via n*z_n = sum N_j z_{n-j}.
std::vector<Rat> counts_from_series(const std::vector<Rat>& z);

// Rational reconstruction P/Q with deg P <= dp, deg Q <= dq, Q(0) = 1,
// matching the series through T^B. Returns nullopt when no such function
// exists for the given degrees.
struct RationalFit {
    std::vector<Rat> num;  // degree dp
    std::vector<Rat> den;  // degree dq, den[0] = 1
};
std::optional<RationalFit> pade_fit(const std::vector<Rat>& series, unsigned dp, unsigned dq);

// Series expansion of P/Q to order B.
std::vector<Rat> rational_series(const RationalFit& fit, unsigned B);

}  // namespace ccb
