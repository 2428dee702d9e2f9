#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hwb/rational.hpp"

namespace hwb {

// Opcode values double as the 3-bit encodings.
enum class Token : std::uint8_t {
  End = 0,
  Out = 1,
  Inc = 2,
  Dec = 3,
  Right = 4,
  Left = 5,
  LoopOpen = 6,
  LoopClose = 7,
};

inline constexpr int kTokenBits = 3;
inline constexpr int kCellModulus = 256;
inline constexpr std::size_t kDefaultBoundedWidth = 16;

std::string_view mnemonic(Token t);
std::optional<Token> token_from_mnemonic(std::string_view text);

enum class InvalidReason { NotMultipleOf3, NoEnd, EarlyEnd, UnbalancedLoop };
std::string_view to_string(InvalidReason reason);

class Program;
using ParseResult = std::variant<Program, InvalidReason>;

// A syntactically valid program: exactly one END, in last position, with
// properly nested loops. The set of valid encodings is prefix-free.
class Program {
 public:
  static ParseResult from_tokens(std::vector<Token> tokens);

  const std::vector<Token>& tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  std::size_t bit_length() const { return kTokenBits * tokens_.size(); }
  // Index of the bracket matching the loop token at pc.
  std::size_t match(std::size_t pc) const { return jumps_[pc]; }

  BitString bits() const;
  std::string mnemonics() const;
  // 2^{-bit_length}
  Rational mass() const { return Rational::inverse_power_of_two(bit_length()); }

  friend bool operator==(const Program& a, const Program& b) { return a.tokens_ == b.tokens_; }

 private:
  Program(std::vector<Token> tokens, std::vector<std::size_t> jumps)
      : tokens_(std::move(tokens)), jumps_(std::move(jumps)) {}

  std::vector<Token> tokens_;
  std::vector<std::size_t> jumps_;
};

ParseResult parse(const BitString& bits);
// Space-separated mnemonics, e.g. "INC INC OUT END". Unknown words throw DomainError.
ParseResult parse_mnemonics(std::string_view text);
// Unwraps a ParseResult, throwing DomainError carrying the invalid reason.
Program expect_valid(ParseResult result);

struct MachineConfig {
  // nullopt: two-way unbounded tape. Otherwise a circular tape of this width.
  std::optional<std::size_t> tape_width;
  // nullopt: unlimited. Only permitted with a bounded tape.
  std::optional<std::uint64_t> fuel;

  static MachineConfig unbounded(std::uint64_t fuel) { return {std::nullopt, fuel}; }
  static MachineConfig bounded(std::size_t width = kDefaultBoundedWidth,
                               std::optional<std::uint64_t> fuel = std::nullopt) {
    return {width, fuel};
  }
};

enum class RunKind { Halted, OutOfFuel, NeverHalts };
std::string_view to_string(RunKind kind);

struct RunOutcome {
  RunKind kind = RunKind::OutOfFuel;
  std::string output;  // decimal digits emitted so far
  std::uint64_t steps = 0;
  // NeverHalts only: the configuration seen at cycle_start recurs at cycle_step.
  std::optional<std::uint64_t> cycle_step;
  std::optional<std::uint64_t> cycle_start;
  // NeverHalts only: whether the repeating segment emits output.
  bool cycle_emits = false;
  // Extremes of the head position over the run (unwrapped coordinates).
  std::int64_t min_head = 0;
  std::int64_t max_head = 0;

  bool halted() const { return kind == RunKind::Halted; }
  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

// Plain step loop. Never yields NeverHalts.
RunOutcome run(const Program& program, const MachineConfig& config);

inline constexpr std::size_t kDefaultConfigurationBudget = std::size_t{1} << 22;

// Exact halting decision on a bounded tape by recording every visited
// configuration. With finite fuel it may also return OutOfFuel. Throws
// ResourceError if more than `max_configurations` are recorded.
RunOutcome decide_halting_exact(const Program& program, const MachineConfig& config,
                                std::size_t max_configurations = kDefaultConfigurationBudget);

// Runs until the output departs from `target` or the program halts. Returns
// the step count iff the program halts with output exactly `target`.
std::optional<std::uint64_t> produces(const Program& program, const MachineConfig& config,
                                      std::string_view target);

}  // namespace hwb
