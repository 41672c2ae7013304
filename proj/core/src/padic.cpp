#include "ccb/padic.hpp"

#include <sstream>

namespace ccb {

PadicNum PadicNum::zero(std::int64_t p) { return PadicNum(p, State::Zero, 0, 0, 0); }

PadicNum PadicNum::big_o(std::int64_t p, long v) { return PadicNum(p, State::BigO, v, 0, 0); }

PadicNum PadicNum::make(std::int64_t p, long v, const Int& u, int prec) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw usage_error("p = " + std::to_string(p) + " is not prime");
    if (prec < 1) throw usage_error("precision must be >= 1");
    if (u == 0) return zero(p);
    Int uu = u;
    long extra = 0;
    while (uu % p == 0) {
        uu /= p;
        ++extra;
    }
    Int m = pow_int(Int(p), static_cast<unsigned long>(prec));
    uu %= m;
    if (uu < 0) uu += m;
    if (uu == 0) return big_o(p, v + extra + prec);
    return PadicNum(p, State::Regular, v + extra, uu, prec);
}

PadicNum PadicNum::from_int(std::int64_t p, const Int& n, int prec) {
    return make(p, 0, n, prec);
}

PadicNum PadicNum::from_rat(std::int64_t p, const Rat& x, int prec) {
    if (x == 0) return zero(p);
    Int num = numerator(x), den = denominator(x);
    long v = 0;
    while (num % p == 0) {
        num /= p;
        ++v;
    }
    while (den % p == 0) {
        den /= p;
        --v;
    }
    Int m = pow_int(Int(p), static_cast<unsigned long>(prec));
    Int u = num % m;
    if (u < 0) u += m;
    u = u * mod_inverse(den, m) % m;
    if (u == 0) return big_o(p, v + prec);
    return PadicNum(p, State::Regular, v, u, prec);
}

PadicNum PadicNum::one(std::int64_t p, int prec) { return from_int(p, 1, prec); }

std::optional<long> PadicNum::val() const {
    if (state_ == State::Zero) return std::nullopt;
    return v_;
}

long PadicNum::val_regular() const {
    if (state_ != State::Regular)
        throw precision_error("valuation requested of a value with no known digits");
    return v_;
}

Rat PadicNum::norm() const {
    switch (state_) {
        case State::Zero:
            return 0;
        case State::Regular:
            return pow_rat(Rat(1, p_), v_);
        case State::BigO:
            if (v_ >= 1) return pow_rat(Rat(1, p_), v_);  // an upper bound; see callers
            throw precision_error("norm undetermined: value known only as O(p^" +
                                  std::to_string(v_) + ")");
    }
    return 0;
}

void PadicNum::check_same_p(const PadicNum& o) const {
    if (p_ != o.p_) throw usage_error("p-adic arithmetic with mismatched primes");
}

PadicNum PadicNum::operator-() const {
    if (state_ != State::Regular) return *this;
    Int m = pk(prec_);
    Int u = (m - unit_) % m;
    return PadicNum(p_, State::Regular, v_, u, prec_);
}

PadicNum PadicNum::operator+(const PadicNum& o) const {
    check_same_p(o);
    if (state_ == State::Zero) return o;
    if (o.state_ == State::Zero) return *this;
    if (state_ == State::BigO && o.state_ == State::BigO)
        return big_o(p_, std::min(v_, o.v_));
    if (state_ == State::BigO || o.state_ == State::BigO) {
        const PadicNum& reg = (state_ == State::Regular) ? *this : o;
        const PadicNum& bo = (state_ == State::Regular) ? o : *this;
        if (bo.v_ <= reg.v_) return big_o(p_, bo.v_);
        int keep = static_cast<int>(std::min<long>(reg.prec_, bo.v_ - reg.v_));
        Int u = reg.unit_ % pk(keep);
        return PadicNum(p_, State::Regular, reg.v_, u, keep);
    }
    // both regular
    if (v_ > o.v_) return o + *this;
    if (v_ < o.v_) {
        long d = o.v_ - v_;
        int prec = static_cast<int>(std::min<long>(prec_, d + o.prec_));
        Int m = pk(prec);
        Int u = (unit_ + o.unit_ * pk(std::min<long>(d, prec))) % m;
        return PadicNum(p_, State::Regular, v_, u, prec);
    }
    // equal valuations: cancellation possible
    int prec = std::min(prec_, o.prec_);
    Int m = pk(prec);
    Int w = (unit_ + o.unit_) % m;
    if (w == 0) return big_o(p_, v_ + prec);
    long k = 0;
    while (w % p_ == 0) {
        w /= p_;
        ++k;
    }
    return PadicNum(p_, State::Regular, v_ + k, w, prec - static_cast<int>(k));
}

PadicNum PadicNum::operator-(const PadicNum& o) const { return *this + (-o); }

PadicNum PadicNum::operator*(const PadicNum& o) const {
    check_same_p(o);
    if (state_ == State::Zero || o.state_ == State::Zero) return zero(p_);
    if (state_ == State::BigO || o.state_ == State::BigO) {
        // |x*y| <= p^{-(vx+vy)}
        return big_o(p_, v_ + o.v_);
    }
    int prec = std::min(prec_, o.prec_);
    Int u = unit_ * o.unit_ % pk(prec);
    return PadicNum(p_, State::Regular, v_ + o.v_, u, prec);
}

PadicNum PadicNum::inverse() const {
    if (state_ != State::Regular)
        throw precision_error("division by a value indistinguishable from zero");
    Int m = pk(prec_);
    return PadicNum(p_, State::Regular, -v_, mod_inverse(unit_, m), prec_);
}

PadicNum PadicNum::operator/(const PadicNum& o) const {
    check_same_p(o);
    if (o.state_ != State::Regular)
        throw precision_error("division by a value indistinguishable from zero");
    if (state_ == State::Zero) return zero(p_);
    if (state_ == State::BigO) return big_o(p_, v_ - o.v_);
    return *this * o.inverse();
}

PadicNum PadicNum::pow(unsigned long e) const {
    PadicNum r = one(p_, state_ == State::Regular ? prec_ : kDefaultPrec);
    PadicNum b = *this;
    if (e == 0) return r;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

PadicNum PadicNum::shift(long k) const {
    if (state_ == State::Zero) return *this;
    return PadicNum(p_, state_, v_ + k, unit_, prec_);
}

bool PadicNum::same_value(const PadicNum& o) const {
    check_same_p(o);
    // Agreement modulo p^cut, where cut is the smaller of the two known
    // absolute precisions (v for big-O values, v + prec for regular ones).
    auto abs_prec = [](const PadicNum& x) -> std::optional<long> {
        if (x.state_ == State::Zero) return std::nullopt;
        if (x.state_ == State::BigO) return x.v_;
        return x.v_ + x.prec_;
    };
    std::optional<long> a = abs_prec(*this), b = abs_prec(o);
    if (!a && !b) return true;  // both exact zero
    long cut = a && b ? std::min(*a, *b) : (a ? *a : *b);
    long base = cut;
    if (state_ == State::Regular) base = std::min(base, v_);
    if (o.state_ == State::Regular) base = std::min(base, o.v_);
    auto lift = [&](const PadicNum& x) -> Int {
        if (x.state_ != State::Regular) return 0;
        long digits = cut - x.v_;
        if (digits <= 0) return 0;
        Int u = x.unit_ % pk(std::min<long>(digits, x.prec_));
        return u * pk(x.v_ - base) % pk(cut - base);
    };
    return lift(*this) == lift(o);
}

bool PadicNum::is_integral() const {
    if (state_ == State::Zero) return true;
    return v_ >= 0;
}

std::int64_t PadicNum::residue_mod_p() const {
    if (state_ == State::Zero) return 0;
    if (v_ >= 1) return 0;
    if (state_ == State::BigO)
        throw precision_error("residue mod p undetermined for O(p^" + std::to_string(v_) + ")");
    if (v_ < 0) throw usage_error("residue mod p of a non-integral value");
    return (unit_ % p_).convert_to<std::int64_t>();
}

std::string PadicNum::str() const {
    std::ostringstream os;
    switch (state_) {
        case State::Zero:
            return "0";
        case State::BigO:
            os << "O(" << p_ << "^" << v_ << ")";
            return os.str();
        case State::Regular:
            os << p_ << "^" << v_ << " * " << unit_.str() << " mod " << p_ << "^" << prec_;
            return os.str();
    }
    return "0";
}

PadicNum PadicNum::parse(std::int64_t p, const std::string& text, int prec) {
    try {
        return parse_impl(p, text, prec);
    } catch (const usage_error&) {
        throw;
    } catch (const std::exception&) {
        throw usage_error("malformed p-adic literal: " + text);
    }
}

PadicNum PadicNum::parse_impl(std::int64_t p, const std::string& text, int prec) {
    std::string s;
    for (char c : text)
        if (!isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw usage_error("empty p-adic literal");
    if (s == "0") return zero(p);
    if (s.rfind("O(", 0) == 0) {
        auto caret = s.find('^');
        auto close = s.find(')');
        if (caret == std::string::npos || close == std::string::npos)
            throw usage_error("malformed big-O p-adic literal: " + text);
        long v = std::stol(s.substr(caret + 1, close - caret - 1));
        return big_o(p, v);
    }
    auto star = s.find('*');
    auto modpos = s.find("mod");
    if (star != std::string::npos) {
        auto caret = s.find('^');
        if (caret == std::string::npos || caret > star)
            throw usage_error("malformed p-adic literal: " + text);
        long v = std::stol(s.substr(caret + 1, star - caret - 1));
        std::string upart = (modpos == std::string::npos) ? s.substr(star + 1)
                                                          : s.substr(star + 1, modpos - star - 1);
        int n = prec;
        if (modpos != std::string::npos) {
            auto caret2 = s.find('^', modpos);
            if (caret2 == std::string::npos) throw usage_error("malformed p-adic literal: " + text);
            n = std::stoi(s.substr(caret2 + 1));
        }
        return make(p, v, Int(upart), n);
    }
    // plain integer or rational
    auto slash = s.find('/');
    if (slash != std::string::npos)
        return from_rat(p, Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1))), prec);
    return from_int(p, Int(s), prec);
}

}  // namespace ccb
