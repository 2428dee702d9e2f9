#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace hwb {

using BigInt = boost::multiprecision::cpp_int;

// Exact nonnegative fraction, always stored in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(BigInt numerator, BigInt denominator = 1);  // NOLINT: implicit from integers

  // Parses "num/den" or a bare integer "num".
  static Rational parse(std::string_view text);
  // 2^{-exponent}
  static Rational inverse_power_of_two(std::size_t exponent);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }
  bool is_zero() const { return num_ == 0; }

  std::string to_string() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  // Throws DomainError if the result would be negative.
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational& operator+=(const Rational& other) { return *this = *this + other; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  BigInt num_ = 0;
  BigInt den_ = 1;
};

inline Rational add(const Rational& a, const Rational& b) { return a + b; }
inline std::strong_ordering compare(const Rational& a, const Rational& b) { return a <=> b; }
Rational pow(const Rational& base, std::size_t exponent);
const Rational& min(const Rational& a, const Rational& b);

// Finite sequence of binary digits. Index 0 holds the first bit after the
// binary point when the string is read as a dyadic fraction.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::string_view digits);  // throws DomainError on non-0/1

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] == '1'; }
  void push_back(bool bit) { bits_.push_back(bit ? '1' : '0'); }
  void append(const BitString& other) { bits_ += other.bits_; }
  BitString prefix(std::size_t n) const { return BitString(std::string_view(bits_).substr(0, n)); }
  bool starts_with(const BitString& other) const { return std::string_view(bits_).starts_with(other.bits_); }

  const std::string& str() const { return bits_; }

  friend bool operator==(const BitString&, const BitString&) = default;
  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::string bits_;
};

// Closed interval [lo, hi] inside [0, 1].
class Interval {
 public:
  Interval(Rational lo, Rational hi);  // throws DomainError unless 0 <= lo <= hi <= 1

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational length() const { return hi_ - lo_; }
  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains(const Interval& other) const { return lo_ <= other.lo_ && other.hi_ <= hi_; }

 private:
  Rational lo_;
  Rational hi_;
};

// nth bit (1-based) after the binary point. Dyadic values use the
// terminating expansion. Requires 0 <= x < 1.
bool bit_at(const Rational& x, std::size_t n);
// First n bits of x's binary expansion. Requires 0 <= x < 1.
BitString leading_bits(const Rational& x, std::size_t n);
// Sum of bits[i] * 2^{-(i+1)}.
Rational dyadic_value(const BitString& bits);

}  // namespace hwb
