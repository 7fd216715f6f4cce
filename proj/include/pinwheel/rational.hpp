#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace pinwheel {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational with arbitrary-precision integer parts. Always stored
// reduced, denominator positive. Arbitrary precision matters: density sums
// over random corpora overflow int64 lcm long before n = 15.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(long long n) : num_(n), den_(1) {}  // NOLINT: implicit by design
  Rat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { reduce(); }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_integer() const { return den_ == 1; }

  Rat operator+(const Rat& o) const { return {num_ * o.den_ + o.num_ * den_, den_ * o.den_}; }
  Rat operator-(const Rat& o) const { return {num_ * o.den_ - o.num_ * den_, den_ * o.den_}; }
  Rat operator*(const Rat& o) const { return {num_ * o.num_, den_ * o.den_}; }
  Rat operator/(const Rat& o) const {
    if (o.num_ == 0) throw std::domain_error("rational division by zero");
    return {num_ * o.den_, den_ * o.num_};
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  std::strong_ordering operator<=>(const Rat& o) const {
    BigInt l = num_ * o.den_, r = o.num_ * den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  // Smallest integer >= value.
  BigInt ceil() const {
    BigInt q = num_ / den_;
    if (num_ > 0 && num_ % den_ != 0) ++q;
    return q;
  }
  // Largest integer <= value.
  BigInt floor() const {
    BigInt q = num_ / den_;
    if (num_ < 0 && num_ % den_ != 0) --q;
    return q;
  }

  double to_double() const { return num_.convert_to<double>() / den_.convert_to<double>(); }

  // "p/q", or just "p" when integral.
  std::string str() const {
    std::string s = num_.str();
    if (den_ != 1) s += "/" + den_.str();
    return s;
  }

 private:
  void reduce() {
    if (den_ == 0) throw std::domain_error("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    BigInt g = boost::multiprecision::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (num_ == 0) den_ = 1;
  }

  BigInt num_;
  BigInt den_;
};

inline Rat rat(long long n, long long d) { return {BigInt(n), BigInt(d)}; }

}  // namespace pinwheel
