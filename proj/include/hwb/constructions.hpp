#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hwb/errors.hpp"
#include "hwb/machine.hpp"
#include "hwb/rational.hpp"

namespace hwb {

// A real in [0, 1] handed out one decimal digit at a time. Digit k is the
// kth digit after the decimal point (1-based).
class DigitSource {
 public:
  // Finite digit string; digits past its end are 0.
  static DigitSource digits(std::string value);
  static DigitSource constant(int digit);
  // The program's output is the digit expansion; a halted program's real
  // terminates.
  static DigitSource program(Program program);

  // nullopt means not yet known at this fuel. Once a digit is returned for
  // some fuel, every larger fuel returns the same digit.
  std::optional<int> digit(std::size_t k, std::uint64_t fuel) const;

  std::string describe() const;

 private:
  struct Digits {
    std::string value;
  };
  struct Constant {
    int digit;
  };
  using Source = std::variant<Digits, Constant, Program>;
  explicit DigitSource(Source source) : source_(std::move(source)) {}

  Source source_;
};

struct DiagonalDigit {
  int digit = 3;        // always 3 or 4
  bool decided = true;  // false: defaulted to 3 because fuel ran out

  friend bool operator==(const DiagonalDigit&, const DiagonalDigit&) = default;
};

struct DiagonalResult {
  std::vector<DiagonalDigit> digits;

  std::string str() const;
  std::size_t provisional_count() const;
};

// Digit k is 4 where stream k's kth digit is 3, and 3 otherwise.
DiagonalResult cantor_diagonal(std::span<const DigitSource> streams, std::size_t n, std::uint64_t fuel);

enum class DiagonalOracle { None, ExactBounded };

// Diagonalizes over the raw bit-string enumeration, treating string k as
// the kth program. Invalid strings contribute a decided 3.
DiagonalResult turing_diagonal(std::size_t n, std::uint64_t fuel, DiagonalOracle oracle,
                               std::size_t tape_width = kDefaultBoundedWidth);

class LocalizationError : public ResourceError {
 public:
  using ResourceError::ResourceError;
};

struct CoverResult {
  std::vector<Interval> intervals;
  Rational total_length;  // sum of eps / 2^i before clipping to [0, 1]
};

// Interval i has length eps / 2^i, left-aligned at the real's decimal
// truncation to m_i digits, where m_i is least with 10^{-m_i} <= eps / 2^{i+1}.
CoverResult cover(const Rational& epsilon, std::span<const DigitSource> reals, std::size_t n,
                  std::uint64_t fuel);
// Least m with 10^{-m} <= eps / 2^{i+1}.
std::size_t cover_precision(const Rational& epsilon, std::size_t i);

// {"version":1,"streams":[...]} or a bare list of
// {"kind":"digits","value":"314159"} | {"kind":"constant","digit":0} |
// {"kind":"program","bits":"..."}.
std::vector<DigitSource> load_streams(std::string_view json_text);

// Answer i (1-based) becomes binary digit i.
Rational borel_encode(const BitString& answers);
bool borel_answer(const Rational& x, std::size_t n);

}  // namespace hwb
