#pragma once

#include <string>

#include "ccb/int.hpp"

namespace ccb {

// Exact number of the form a + b*sqrt(d) with a, b rational and d a
// non-negative integer. Comparisons are decided by sign analysis and
// squaring; no floating point anywhere. Square radicands fold into the
// rational part, so b != 0 implies sqrt(d) is irrational.
class QuadSurd {
  public:
    QuadSurd() : a_(0), b_(0), d_(0) {}
    QuadSurd(Rat a) : a_(std::move(a)), b_(0), d_(0) {}  // NOLINT: implicit wanted
    QuadSurd(Rat a, Rat b, Int d);

    static QuadSurd sqrt_of(const Int& d) { return QuadSurd(0, 1, d); }

    const Rat& rational_part() const { return a_; }
    const Rat& radical_coeff() const { return b_; }
    const Int& radicand() const { return d_; }
    bool is_rational() const { return b_ == 0; }

    QuadSurd operator+(const QuadSurd& o) const;
    QuadSurd operator-(const QuadSurd& o) const;
    QuadSurd operator-() const;
    QuadSurd operator*(const QuadSurd& o) const;
    QuadSurd operator/(const QuadSurd& o) const;

    int sign() const;  // -1, 0, +1
    bool operator<(const QuadSurd& o) const { return (*this - o).sign() < 0; }
    bool operator>(const QuadSurd& o) const { return (*this - o).sign() > 0; }
    bool operator<=(const QuadSurd& o) const { return (*this - o).sign() <= 0; }
    bool operator>=(const QuadSurd& o) const { return (*this - o).sign() >= 0; }
    bool operator==(const QuadSurd& o) const { return (*this - o).sign() == 0; }

    Int floor() const;
    Int ceil() const;

    // "a", "b*sqrt(d)", or "a + b*sqrt(d)" with exact rational pieces.
    std::string str() const;

  private:
    void normalize();
    void check_compatible(const QuadSurd& o) const;

    Rat a_;
    Rat b_;
    Int d_;  // 0 when the value is rational
};

}  // namespace ccb
