#include "ccb/realcert.hpp"

#include "ccb/errors.hpp"

namespace ccb {

namespace {

// Partial sum of exp on [0, x], x >= 0, plus a geometric tail majorant:
// sum_{k>K} x^k/k! <= x^{K+1}/(K+1)! * 1/(1 - x/(K+2)) for x < K+2.
RatInterval exp_bracket_nonneg(const Rat& x, unsigned terms) {
    Rat sum = 1, term = 1;
    for (unsigned k = 1; k <= terms; ++k) {
        term *= x / k;
        sum += term;
    }
    Rat next = term * x / (terms + 1);
    Rat ratio_den = Rat(1) - x / (terms + 2);
    if (ratio_den <= 0) throw usage_error("exp_bracket: increase term count for this argument");
    return {sum, sum + next / ratio_den};
}

}  // namespace

RatInterval exp_bracket(const Rat& x, unsigned terms) {
    if (x >= 0) return exp_bracket_nonneg(x, terms);
    RatInterval inv = exp_bracket_nonneg(-x, terms);
    return {Rat(1) / inv.hi, Rat(1) / inv.lo};
}

bool less_than_exp(const Rat& t, const Rat& x) {
    if (t <= 0) return true;
    if (x == 0) {
        if (t == 1) return false;
        return t < 1;
    }
    for (unsigned terms = 8;; terms *= 2) {
        RatInterval b = exp_bracket(x, terms);
        if (t < b.lo) return true;
        if (t > b.hi) return false;
        if (terms > 4096)
            throw precision_error("could not separate a rational from exp() after refinement");
    }
}

bool greater_than_exp(const Rat& t, const Rat& x) {
    if (t <= 0) return false;
    if (x == 0) {
        if (t == 1) return false;
        return t > 1;
    }
    return !less_than_exp(t, x);
}

RatInterval ramification_threshold_bracket(std::int64_t e) {
    // 1/exp(1) first, then exp(e * that) with the interval propagated upward.
    RatInterval inv_e = exp_bracket(Rat(-1), 30);
    RatInterval arg{Rat(e) * inv_e.lo, Rat(e) * inv_e.hi};
    RatInterval lo_b = exp_bracket(arg.lo, 40);
    RatInterval hi_b = exp_bracket(arg.hi, 40);
    return {lo_b.lo, hi_b.hi};
}

bool ramification_guard(std::int64_t p, std::int64_t e) {
    if (p <= e + 1) return false;
    // p > exp(e/exp(1))? p is an integer, the threshold is transcendental,
    // so the bracket always separates after enough refinement.
    for (unsigned terms = 16;; terms *= 2) {
        RatInterval inv_e = exp_bracket(Rat(-1), terms);
        RatInterval lo_b = exp_bracket(Rat(e) * inv_e.lo, terms);
        RatInterval hi_b = exp_bracket(Rat(e) * inv_e.hi, terms);
        if (Rat(p) > hi_b.hi) return true;
        if (Rat(p) < lo_b.lo) return false;
        if (terms > 4096)
            throw precision_error("ramification guard bracket failed to separate");
    }
}

RatInterval log_bracket(const Rat& y, const Rat& tol) {
    if (y <= 0) throw usage_error("log of a non-positive number");
    if (y == 1) return {0, 0};
    // binary search on x with the certified exp bracket as the oracle
    Rat lo = -1, hi = 1;
    while (!less_than_exp(y, hi)) hi *= 2;
    while (!greater_than_exp(y, lo)) lo *= 2;
    while (hi - lo > tol) {
        Rat mid = (lo + hi) / 2;
        if (less_than_exp(y, mid))
            hi = mid;
        else
            lo = mid;
    }
    return {lo, hi};
}

}  // namespace ccb
