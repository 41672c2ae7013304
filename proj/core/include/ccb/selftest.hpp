#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ccb {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The invariant suite behind `selftest`. Quick runs the closed-form and
// constant checks; full adds the formal-group axiom sweep, the randomized
// oracle suites, the jet searches, and the counting/zeta checks. Fully
// deterministic for a fixed seed.
std::vector<CheckResult> run_selftest(bool full, std::uint64_t seed);

}  // namespace ccb
