#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rq {

/// Exact rational number over 64-bit integers, always reduced to lowest terms
/// with a positive denominator. Arithmetic runs through 128-bit intermediates
/// and throws std::overflow_error if a reduced result does not fit.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long n, long long d);

  long long num() const { return num_; }
  long long den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool is_integer() const { return den_ == 1; }
  bool is_negative() const { return num_ < 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string str() const;

  Rational operator-() const;
  Rational reciprocal() const;  // throws on zero
  Rational pow(long long e) const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }

  /// Three-way compare: negative, zero, or positive.
  static int compare(const Rational& a, const Rational& b);

 private:
  static Rational reduced(__int128 n, __int128 d);
  long long num_;
  long long den_;
};

}  // namespace rq
