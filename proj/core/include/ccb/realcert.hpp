#pragma once

#include "ccb/int.hpp"

namespace ccb {

// Certified rational brackets for a few transcendental comparisons. Every
// bound is a partial Taylor sum with an explicit remainder estimate, so the
// returned interval is guaranteed to contain the true value.
struct RatInterval {
    Rat lo;
    Rat hi;
};

// exp(x) for rational x, bracket width shrinks as terms grows.
RatInterval exp_bracket(const Rat& x, unsigned terms = 24);

// Decides t < exp(x) / t > exp(x) for rational t, x (equality is impossible
// unless x == 0, t == 1, which is handled exactly). Refines until decided.
bool less_than_exp(const Rat& t, const Rat& x);
bool greater_than_exp(const Rat& t, const Rat& x);

// Bracket for exp(e/exp(1)), the ramification guard threshold.
RatInterval ramification_threshold_bracket(std::int64_t e);

// p > max(e+1, exp(e/exp(1))) — decided exactly.
bool ramification_guard(std::int64_t p, std::int64_t e);

// Bracket for log(y), y > 0 rational; width <= tol.
RatInterval log_bracket(const Rat& y, const Rat& tol);

}  // namespace ccb
