#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace polyprg {

/// Exact nonnegative-denominator rational with 64-bit parts, always reduced.
class Fraction {
 public:
  Fraction() = default;
  Fraction(std::int64_t num, std::int64_t den = 1);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "a/b", or "a" when the denominator is 1.
  std::string to_string() const;

  Fraction operator+(const Fraction& o) const;
  Fraction operator-(const Fraction& o) const;
  Fraction operator*(const Fraction& o) const;
  Fraction operator/(const Fraction& o) const;

  friend bool operator==(const Fraction& a, const Fraction& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend bool operator<(const Fraction& a, const Fraction& b) {
    return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
  }
  friend bool operator<=(const Fraction& a, const Fraction& b) { return !(b < a); }
  friend bool operator>(const Fraction& a, const Fraction& b) { return b < a; }
  friend bool operator>=(const Fraction& a, const Fraction& b) { return !(a < b); }

  /// Smallest integer not below the value.
  std::int64_t ceil() const;

  /// Reduces a wide quotient; throws BudgetError if it does not fit.
  static Fraction from_wide(__int128 num, __int128 den);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// Accepts "3", "-2/5" or a decimal such as "0.125".
Fraction parse_fraction(std::string_view text);

}  // namespace polyprg
