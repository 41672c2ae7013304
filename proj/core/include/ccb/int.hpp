#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "ccb/errors.hpp"

namespace ccb {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow_int(const Int& base, unsigned long e) {
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rat pow_rat(const Rat& base, long e) {
    if (e < 0) {
        if (base == 0) throw usage_error("pow_rat: 0 to a negative power");
        Rat inv = Rat(1) / base;
        return pow_rat(inv, -e);
    }
    Rat r = 1, b = base;
    unsigned long k = static_cast<unsigned long>(e);
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
        if (n == d) return true;
        if (n % d == 0) return false;
    }
    for (std::uint64_t d = 11; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

inline Int factorial(unsigned n) {
    Int r = 1;
    for (unsigned k = 2; k <= n; ++k) r *= k;
    return r;
}

inline Int binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (unsigned i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);
    }
    return r;
}

// Largest s with s*s <= n.
inline Int isqrt(const Int& n) {
    if (n < 0) throw usage_error("isqrt of a negative number");
    if (n == 0) return 0;
    Int x = Int(1) << (msb(n) / 2 + 1);
    for (;;) {
        Int y = (x + n / x) / 2;
        if (y >= x) break;
        x = y;
    }
    return x;
}

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    Int s = isqrt(n);
    return s * s == n;
}

inline Int floor_rat(const Rat& x) {
    Int n = numerator(x), d = denominator(x);
    Int q = n / d, r = n % d;
    if (r != 0 && n < 0) --q;
    return q;
}

inline Int ceil_rat(const Rat& x) { return -floor_rat(-x); }

inline long p_valuation(Int n, const Int& p) {
    if (n == 0) throw usage_error("p_valuation of zero");
    long v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

inline Int mod_pow(Int base, Int e, const Int& m) {
    Int r = 1;
    base %= m;
    if (base < 0) base += m;
    while (e > 0) {
        if ((e & 1) != 0) r = r * base % m;
        base = base * base % m;
        e >>= 1;
    }
    return r;
}

// Inverse of a mod m, m >= 2, gcd(a, m) = 1.
inline Int mod_inverse(const Int& a, const Int& m) {
    Int r0 = a % m;
    if (r0 < 0) r0 += m;
    Int r1 = m, s0 = 1, s1 = 0;
    while (r1 != 0) {
        Int q = r0 / r1;
        Int r2 = r0 - q * r1;
        r0 = r1;
        r1 = r2;
        Int s2 = s0 - q * s1;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw usage_error("mod_inverse: argument is not invertible");
    Int inv = s0 % m;
    if (inv < 0) inv += m;
    return inv;
}

inline std::string int_str(const Int& n) { return n.str(); }

inline std::string rat_str(const Rat& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

}  // namespace ccb
