#include "hwb/rational.hpp"

#include <boost/integer/common_factor_rt.hpp>

#include "hwb/errors.hpp"

namespace hwb {

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  if (den_ <= 0) throw DomainError("rational denominator must be positive");
  if (num_ < 0) throw DomainError("rational must be nonnegative");
  BigInt g = boost::multiprecision::gcd(num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view digits) {
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string_view::npos) {
      throw DomainError("malformed rational: '" + std::string(text) + "'");
    }
    return BigInt(std::string(digits));
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  return Rational(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

Rational Rational::inverse_power_of_two(std::size_t exponent) {
  return Rational(1, BigInt(1) << exponent);
}

std::string Rational::to_string() const { return num_.str() + "/" + den_.str(); }

Rational operator+(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  BigInt num = a.num_ * b.den_ - b.num_ * a.den_;
  if (num < 0) throw DomainError("rational subtraction would go negative");
  return Rational(std::move(num), a.den_ * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.num_, a.den_ * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.is_zero()) throw DomainError("division by zero");
  return Rational(a.num_ * b.den_, a.den_ * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Rational pow(const Rational& base, std::size_t exponent) {
  return Rational(boost::multiprecision::pow(base.numerator(), static_cast<unsigned>(exponent)),
                  boost::multiprecision::pow(base.denominator(), static_cast<unsigned>(exponent)));
}

const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }

BitString::BitString(std::string_view digits) : bits_(digits) {
  if (bits_.find_first_not_of("01") != std::string::npos) {
    throw DomainError("bit string may contain only '0' and '1': '" + bits_ + "'");
  }
}

Interval::Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (!(lo_ <= hi_) || Rational(1) < hi_) {
    throw DomainError("interval [" + lo_.to_string() + ", " + hi_.to_string() +
                      "] is not inside [0, 1]");
  }
}

namespace {

void require_unit(const Rational& x) {
  if (!(x < Rational(1))) throw DomainError("binary expansion requires 0 <= x < 1, got " + x.to_string());
}

}  // namespace

bool bit_at(const Rational& x, std::size_t n) {
  require_unit(x);
  if (n == 0) throw DomainError("bit positions are 1-based");
  BigInt scaled = (x.numerator() << n) / x.denominator();
  return bit_test(scaled, 0);
}

BitString leading_bits(const Rational& x, std::size_t n) {
  require_unit(x);
  BigInt scaled = (x.numerator() << n) / x.denominator();
  BitString out;
  for (std::size_t i = n; i-- > 0;) out.push_back(bit_test(scaled, static_cast<unsigned>(i)));
  return out;
}

Rational dyadic_value(const BitString& bits) {
  BigInt num = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) num = (num << 1) + (bits[i] ? 1 : 0);
  return Rational(std::move(num), BigInt(1) << bits.size());
}

}  // namespace hwb
