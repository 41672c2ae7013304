#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ccb/errors.hpp"
#include "ccb/int.hpp"

namespace ccb {

// Capped-precision p-adic number, |p| = 1/p in the base-field normalization.
//
// Three states:
//   exact zero          v = +infinity
//   regular             x = p^v * u with u a unit known modulo p^prec, prec >= 1
//   big-O               O(p^v): |x| <= p^{-v}, no digits known (prec = 0)
//
// prec counts known digits of the unit (relative precision); products keep
// min(prec), cancellation in sums converts known digits into valuation.
class PadicNum {
  public:
    static constexpr int kDefaultPrec = 32;

    PadicNum() : p_(2), state_(State::Zero), v_(0), unit_(0), prec_(0) {}

    static PadicNum zero(std::int64_t p);
    static PadicNum from_int(std::int64_t p, const Int& n, int prec = kDefaultPrec);
    static PadicNum from_rat(std::int64_t p, const Rat& x, int prec = kDefaultPrec);
    static PadicNum one(std::int64_t p, int prec = kDefaultPrec);
    // p^v * u with u given as an integer (its p-part moves into v).
    static PadicNum make(std::int64_t p, long v, const Int& u, int prec = kDefaultPrec);
    static PadicNum big_o(std::int64_t p, long v);

    std::int64_t p() const { return p_; }
    bool is_exact_zero() const { return state_ == State::Zero; }
    bool is_big_o() const { return state_ == State::BigO; }
    bool is_regular() const { return state_ == State::Regular; }
    // Indistinguishable from zero at the working precision.
    bool is_zeroish() const { return state_ != State::Regular; }
    // Certified |x| <= p^{-k}: exact zero, or a big-O with exponent >= k.
    // Regular values never qualify (they have a known nonzero digit).
    bool certified_small(long k = 1) const {
        if (state_ == State::Zero) return true;
        return state_ == State::BigO && v_ >= k;
    }

    // Valuation of a regular value; the O-exponent (a lower bound on the
    // valuation) for big-O; nullopt (read: +infinity) for exact zero.
    std::optional<long> val() const;
    long val_regular() const;  // requires a regular value
    const Int& unit() const { return unit_; }
    int prec() const { return prec_; }

    // |x| as p^{-val}; exact zero has norm 0. Errors on big-O with v <= 0
    // where the norm is not determined.
    Rat norm() const;

    PadicNum operator+(const PadicNum& o) const;
    PadicNum operator-(const PadicNum& o) const;
    PadicNum operator-() const;
    PadicNum operator*(const PadicNum& o) const;
    PadicNum operator/(const PadicNum& o) const;
    PadicNum inverse() const;
    PadicNum pow(unsigned long e) const;
    // Multiply by p^k (k may be negative).
    PadicNum shift(long k) const;

    bool same_value(const PadicNum& o) const;  // equal at the common precision

    // True when the value is certainly a p-adic integer (val >= 0).
    bool is_integral() const;
    // Residue mod p of an integral value.
    std::int64_t residue_mod_p() const;

    // "p^v * u mod p^N", "0", or "O(p^v)".
    std::string str() const;
    static PadicNum parse(std::int64_t p, const std::string& text, int prec = kDefaultPrec);

  private:
    enum class State { Zero, Regular, BigO };

    PadicNum(std::int64_t p, State st, long v, Int unit, int prec)
        : p_(p), state_(st), v_(v), unit_(std::move(unit)), prec_(prec) {}

    static PadicNum parse_impl(std::int64_t p, const std::string& text, int prec);

    void check_same_p(const PadicNum& o) const;
    Int pk(long k) const { return pow_int(Int(p_), static_cast<unsigned long>(k)); }

    std::int64_t p_;
    State state_;
    long v_;
    Int unit_;  // in [0, p^prec), not divisible by p when regular
    int prec_;
};

}  // namespace ccb
