#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "hwb/enumeration.hpp"
#include "hwb/machine.hpp"
#include "hwb/rational.hpp"

namespace hwb {

enum class ComplexityMethod { ExhaustiveMinimal, ConstructiveLiteral };
std::string_view to_string(ComplexityMethod method);

// Upper bound on program-size complexity, with the program that proves it.
struct ComplexityEstimate {
  std::string target;
  std::uint64_t bound_bits = 0;
  Program witness;
  ComplexityMethod method = ComplexityMethod::ConstructiveLiteral;
  // Every valid program of at most this many tokens was tried and none
  // shorter than the witness produces the target.
  std::size_t search_exhausted_through = 0;
};

// Straight-line program printing `target`: per digit, the INC (or, near the
// 256 wrap, DEC) tokens that bring the cell to that digit mod 10, then OUT.
// At most 10 tokens per digit plus END.
Program literal_program(std::string_view target);

struct SearchHit {
  EnumerationIndex index;
  Program program;
};

// Canonical-first valid program of at most max_tokens tokens that halts
// within fuel (unbounded tape) with output exactly `target`.
std::optional<SearchHit> shortest_producer(std::string_view target, std::size_t max_tokens, std::uint64_t fuel,
                                           unsigned jobs = 1);

ComplexityEstimate h_upper(std::string_view target, std::size_t max_tokens, std::uint64_t fuel, unsigned jobs = 1);

struct ProbeReport {
  std::string digits;
  std::optional<std::uint64_t> shortest_found_bits;
  std::size_t exhausted_through = 0;
  std::uint64_t literal_bits = 0;
  // No program shorter than the literal one was found. Never a proof.
  bool consistent_with_incompressibility = true;
};

// Treats a bit string as a 0/1 digit string and looks for short producers.
ProbeReport incompressibility_probe(const BitString& bits, std::size_t max_tokens, std::uint64_t fuel,
                                    unsigned jobs = 1);

}  // namespace hwb
