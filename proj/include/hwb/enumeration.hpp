#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "hwb/machine.hpp"
#include "hwb/rational.hpp"

namespace hwb {

// 1-based position in a canonical (size, then lexicographic) enumeration.
struct EnumerationIndex {
  std::uint64_t value = 1;

  friend auto operator<=>(const EnumerationIndex&, const EnumerationIndex&) = default;
};

// All bit strings: "0", "1", "00", "01", ... Index of "000" is 7.
std::vector<BitString> bitstrings_canonical(std::uint64_t from_index, std::uint64_t count);
BitString bitstring_at(EnumerationIndex index);
EnumerationIndex bitstring_index(const BitString& bits);

// Valid programs only, in the same order. Index 1 is [END].
std::vector<std::pair<EnumerationIndex, Program>> valid_programs_canonical(std::uint64_t from_index,
                                                                           std::uint64_t count);
Program program_at(EnumerationIndex index);
EnumerationIndex program_index(const Program& program);

// Every valid program of exactly `token_length` tokens, in canonical order.
std::vector<Program> programs_of_length(std::size_t token_length);
// Every valid program of at most `max_tokens` tokens; element i has index i + 1.
std::vector<Program> programs_up_to(std::size_t max_tokens);

// Walks the valid programs of one token length in canonical order without
// materializing the whole length.
class ProgramCursor {
 public:
  // Starts at the rank-th (0-based) program of that length.
  ProgramCursor(std::size_t token_length, const BigInt& rank);
  const Program& program() const { return program_; }
  // Moves to the next program of the same length; false after the last.
  bool next();

 private:
  Program program_;
};

struct LengthCensus {
  std::size_t token_length = 0;
  BigInt valid_count;
  Rational mass;  // valid_count / 8^token_length
};

LengthCensus count_valid(std::size_t token_length);
// Number of valid programs with at most `max_tokens` tokens.
BigInt count_valid_up_to(std::size_t max_tokens);

// (7/8)^t: bounds the total mass of valid programs longer than t tokens.
// t = 0 gives 1, the whole Kraft budget.
Rational tail_mass_bound(std::size_t token_length);

}  // namespace hwb
