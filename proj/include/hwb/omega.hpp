#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwb/dovetail.hpp"
#include "hwb/errors.hpp"
#include "hwb/machine.hpp"
#include "hwb/rational.hpp"

namespace hwb {

inline constexpr std::size_t kDefaultCertifiedBits = 64;

// Exact sandwich lower <= omega <= upper plus the leading bits it pins down.
struct OmegaBounds {
  Rational lower;
  Rational undecided;
  Rational tail_bound;
  Rational upper;  // min(1, lower + undecided + tail_bound)
  BitString certified_bits;
  std::size_t max_tokens = 0;
  std::uint64_t stage = 0;
};

// Longest b (up to max_bits) with dyadic_value(b) <= lower and
// upper < dyadic_value(b) + 2^{-|b|}.
BitString certify_bits(const Rational& lower, const Rational& upper, std::size_t max_bits);

OmegaBounds sandwich(Rational lower, Rational undecided, Rational tail_bound,
                     std::size_t max_bits = kDefaultCertifiedBits);

// The tail covers everything beyond the enumerated depth, so a session that
// has not yet reached max_tokens still gets a sound upper bound.
OmegaBounds omega_bounds(const Session& session, std::size_t max_bits = kDefaultCertifiedBits);

struct UniverseMember {
  Program program;
  bool halts = false;
  std::string output;
};

// Finite prefix-free set of programs with known halting behaviour.
class Universe {
 public:
  // Throws DomainError on duplicate or prefix-related members.
  explicit Universe(std::vector<UniverseMember> members, std::size_t tape_width = kDefaultBoundedWidth);

  // Ground truth from the exact bounded-tape oracle.
  static Universe from_oracle(const std::vector<Program>& programs,
                              std::size_t tape_width = kDefaultBoundedWidth);

  const std::vector<UniverseMember>& members() const { return members_; }
  std::size_t tape_width() const { return tape_width_; }
  std::size_t max_bit_length() const;
  std::optional<std::size_t> find(const Program& program) const;
  // Sum of 2^{-|p|} over halting members.
  Rational omega() const;

  // {"version":1,"programs":[{"bits","halts","output"}]}; a bare list is also accepted.
  std::string to_json() const;
  static Universe from_json(std::string_view text);

 private:
  std::vector<UniverseMember> members_;
  std::size_t tape_width_;
};

// Bounds after dovetailing the universe's members up to `stage` (fuel 4^s),
// without consulting ground truth. Tail is zero: nothing lies outside.
OmegaBounds universe_bounds(const Universe& universe, std::uint64_t stage,
                            std::size_t max_bits = kDefaultCertifiedBits);

// Claim: dyadic_value(bits) <= omega < dyadic_value(bits) + 2^{-n}.
class OmegaPrefix {
 public:
  explicit OmegaPrefix(BitString bits);  // requires at least one bit
  const BitString& bits() const { return bits_; }
  std::size_t size() const { return bits_.size(); }

 private:
  BitString bits_;
};

enum class Verdict { Halts, NeverHalts };
std::string_view to_string(Verdict verdict);

enum class DecodeResult { Halts, NeverHalts, PrefixInsufficient };
std::string_view to_string(DecodeResult result);

class InconsistentUniverseError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct DecodeOptions {
  std::uint64_t max_stage = 16;
};

// Dovetails the members until their halting mass reaches the prefix value;
// whatever has not halted by then never will. Uses only the member programs,
// never their recorded ground truth.
DecodeResult decode_halting_with_prefix(const OmegaPrefix& prefix, const Universe& universe,
                                        const Program& query, const DecodeOptions& options = {});

struct TheoremStatement {
  Program program;
  Verdict verdict;
};

class TheoremStream {
 public:
  virtual ~TheoremStream() = default;
  virtual std::optional<TheoremStatement> next() = 0;
};

// Oracle verdicts for valid programs in canonical order, optionally stopping
// after max_tokens.
class OracleTheoremStream final : public TheoremStream {
 public:
  explicit OracleTheoremStream(std::optional<std::size_t> max_tokens,
                               std::size_t tape_width = kDefaultBoundedWidth);
  std::optional<TheoremStatement> next() override;

 private:
  std::optional<std::size_t> max_tokens_;
  std::size_t tape_width_;
  std::size_t length_ = 0;
  std::vector<Program> batch_;
  std::size_t pos_ = 0;
};

class ListTheoremStream final : public TheoremStream {
 public:
  explicit ListTheoremStream(std::vector<TheoremStatement> statements) : statements_(std::move(statements)) {}
  std::optional<TheoremStatement> next() override;

 private:
  std::vector<TheoremStatement> statements_;
  std::size_t pos_ = 0;
};

class ContradictionError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct StreamDecision {
  std::optional<Verdict> verdict;  // nullopt: budget exhausted
  std::uint64_t examined = 0;
};

// First verdict about `query` among the first `budget` statements.
StreamDecision decide_via_theorem_stream(TheoremStream& stream, const Program& query, std::uint64_t budget);

}  // namespace hwb
