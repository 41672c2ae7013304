#pragma once

#include <vector>

#include "ccb/int.hpp"

namespace ccb {

// Test-support oracles, deliberately independent of the estimation code
// they are used to check. Exact integer/rational arithmetic throughout.

// Number of roots of h (integer coefficients, constant first) in p*Z_p,
// counted with multiplicity: squarefree decomposition over Q, then
// digit-by-digit enumeration with Hensel termination for simple residues.
// `depth` caps the digit recursion (an error reports exhaustion).
long roots_in_pzp_oracle(const std::vector<Int>& coeffs, std::int64_t p, int depth = 12);

// Gap count of the numerical semigroup generated by the given positive
// integers (delta of a one-branch monomial singularity).
long semigroup_gap_count(const std::vector<long>& gens);

}  // namespace ccb
