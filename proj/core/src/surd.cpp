#include "ccb/surd.hpp"

#include "ccb/errors.hpp"

namespace ccb {

QuadSurd::QuadSurd(Rat a, Rat b, Int d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ < 0) throw usage_error("negative radicand");
    normalize();
}

void QuadSurd::normalize() {
    if (b_ == 0) {
        d_ = 0;
        return;
    }
    if (d_ == 0) {
        b_ = 0;
        return;
    }
    Int s = isqrt(d_);
    if (s * s == d_) {
        a_ += b_ * Rat(s);
        b_ = 0;
        d_ = 0;
        return;
    }
    // pull square factors out: keeps the radicand canonical for small d
    for (Int f = 2; f * f * f * f <= d_; ++f) {
        while (d_ % (f * f) == 0) {
            d_ /= f * f;
            b_ *= Rat(f);
        }
    }
}

void QuadSurd::check_compatible(const QuadSurd& o) const {
    if (b_ != 0 && o.b_ != 0 && d_ != o.d_)
        throw usage_error("mixed radicands " + d_.str() + " and " + o.d_.str());
}

QuadSurd QuadSurd::operator+(const QuadSurd& o) const {
    check_compatible(o);
    Int d = b_ != 0 ? d_ : o.d_;
    return QuadSurd(a_ + o.a_, b_ + o.b_, d);
}

QuadSurd QuadSurd::operator-(const QuadSurd& o) const { return *this + (-o); }

QuadSurd QuadSurd::operator-() const { return QuadSurd(-a_, -b_, d_); }

QuadSurd QuadSurd::operator*(const QuadSurd& o) const {
    check_compatible(o);
    Int d = b_ != 0 ? d_ : o.d_;
    return QuadSurd(a_ * o.a_ + b_ * o.b_ * Rat(d), a_ * o.b_ + b_ * o.a_, d);
}

QuadSurd QuadSurd::operator/(const QuadSurd& o) const {
    check_compatible(o);
    if (o.sign() == 0) throw usage_error("division by zero surd");
    if (o.b_ == 0) return QuadSurd(a_ / o.a_, b_ / o.a_, d_);
    // multiply by the conjugate
    QuadSurd conj(o.a_, -o.b_, o.d_);
    Rat denom = o.a_ * o.a_ - o.b_ * o.b_ * Rat(o.d_);
    QuadSurd num = *this * conj;
    return QuadSurd(num.a_ / denom, num.b_ / denom, num.d_);
}

int QuadSurd::sign() const {
    if (b_ == 0) return a_ == 0 ? 0 : (a_ > 0 ? 1 : -1);
    if (a_ == 0) return b_ > 0 ? 1 : -1;
    // sign of a + b*sqrt(d), both parts nonzero; sqrt(d) irrational here
    bool a_pos = a_ > 0, b_pos = b_ > 0;
    if (a_pos && b_pos) return 1;
    if (!a_pos && !b_pos) return -1;
    // opposite signs: compare a^2 vs b^2 d
    Rat lhs = a_ * a_, rhs = b_ * b_ * Rat(d_);
    if (lhs == rhs)
        throw consistency_error("surd comparison hit an impossible equality");
    bool abs_a_wins = lhs > rhs;
    return abs_a_wins == a_pos ? 1 : -1;
}

Int QuadSurd::floor() const {
    if (b_ == 0) return floor_rat(a_);
    // bracket sqrt(d) by dyadic rationals until the floor is pinned down;
    // terminates because the value is irrational
    for (unsigned k = 8;; k *= 2) {
        Int scale = Int(1) << k;
        Int lo_num = isqrt(d_ * scale * scale);
        Rat lo(lo_num, scale), hi(lo_num + 1, scale);
        Rat vlo = b_ > 0 ? a_ + b_ * lo : a_ + b_ * hi;
        Rat vhi = b_ > 0 ? a_ + b_ * hi : a_ + b_ * lo;
        Int flo = floor_rat(vlo), fhi = floor_rat(vhi);
        if (flo == fhi) return flo;
        if (k > (1u << 20)) throw precision_error("surd floor failed to converge");
    }
}

Int QuadSurd::ceil() const { return -(-*this).floor(); }

std::string QuadSurd::str() const {
    if (b_ == 0) return rat_str(a_);
    std::string rad = rat_str(b_) + "*sqrt(" + d_.str() + ")";
    if (a_ == 0) return rad;
    if (b_ > 0) return rat_str(a_) + " + " + rad;
    return rat_str(a_) + " - " + rat_str(-b_) + "*sqrt(" + d_.str() + ")";
}

}  // namespace ccb
