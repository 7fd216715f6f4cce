#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "pinwheel/rational.hpp"

namespace pinwheel {

// One recurrence requirement: the job must appear in every window of
// ceil(num/den) consecutive days, plus the tighter long-run constraints that
// fractional values impose. Stored reduced with value >= 1.
//
// Instance text only ever produces denominators 1, 2 and 3, but repeated
// pairwise folding can halve a half into quarters and beyond, so the type
// itself accepts any positive denominator. Contracts that genuinely need
// halves/thirds (the day-by-day solver, the ceiling-pattern check) enforce
// that at their own boundary.
class Period {
 public:
  Period() : num_(1), den_(1) {}
  explicit Period(long long n, long long d = 1) : num_(n), den_(d) {
    if (den_ <= 0) throw std::invalid_argument("period denominator must be positive");
    long long g = gcd_ll(num_, den_);
    num_ /= g;
    den_ /= g;
    if (num_ < den_) throw std::invalid_argument("period must be at least 1");
  }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  Rat value() const { return rat(num_, den_); }
  long long ceil() const { return (num_ + den_ - 1) / den_; }
  long long floor() const { return num_ / den_; }

  Period halved() const { return Period(num_, den_ * 2); }

  bool operator==(const Period& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Period& o) const {
    // Cross-multiplication; values fit comfortably in 64 bits.
    long long l = num_ * o.den_, r = o.num_ * den_;
    if (l != r) return l <=> r;
    return den_ <=> o.den_;
  }

  std::string str() const {
    std::string s = std::to_string(num_);
    if (den_ != 1) s += "/" + std::to_string(den_);
    return s;
  }

 private:
  static long long gcd_ll(long long a, long long b) {
    while (b != 0) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  long long num_;
  long long den_;
};

}  // namespace pinwheel
