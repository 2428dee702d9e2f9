#include "hwb/enumeration.hpp"

#include <array>

#include "hwb/errors.hpp"

namespace hwb {

namespace {

constexpr std::array<Token, 5> kNeutral = {Token::Out, Token::Inc, Token::Dec, Token::Right, Token::Left};

// Sequences of `length` non-END tokens that take nesting depth `depth` back
// to 0 without going negative.
BigInt completions(std::size_t length, std::size_t depth) {
  // Rolling DP over depth; depth can never usefully exceed length.
  std::vector<BigInt> ways(length + depth + 2, 0);
  ways[0] = 1;  // zero tokens left: only depth 0 is complete
  for (std::size_t n = 1; n <= length; ++n) {
    std::vector<BigInt> next(ways.size(), 0);
    for (std::size_t d = 0; d + 1 < ways.size(); ++d) {
      next[d] = kNeutral.size() * ways[d] + ways[d + 1];
      if (d > 0) next[d] += ways[d - 1];
    }
    ways = std::move(next);
  }
  return ways[depth];
}

std::uint64_t to_u64(const BigInt& v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) throw DomainError("enumeration index overflow");
  return v.convert_to<std::uint64_t>();
}

// Unranks the rank-th (0-based) valid program of `token_length` tokens.
Program unrank(std::size_t token_length, BigInt rank) {
  std::vector<Token> tokens;
  std::size_t depth = 0;
  for (std::size_t pos = 0; pos + 1 < token_length; ++pos) {
    const std::size_t left = token_length - pos - 2;
    auto try_take = [&](Token t, std::size_t new_depth) {
      BigInt c = completions(left, new_depth);
      if (rank < c) {
        tokens.push_back(t);
        depth = new_depth;
        return true;
      }
      rank -= c;
      return false;
    };
    bool taken = false;
    for (Token t : kNeutral) {
      if ((taken = try_take(t, depth))) break;
    }
    if (!taken) taken = try_take(Token::LoopOpen, depth + 1);
    if (!taken && depth > 0) taken = try_take(Token::LoopClose, depth - 1);
    if (!taken) throw DomainError("program rank out of range");
  }
  tokens.push_back(Token::End);
  return expect_valid(Program::from_tokens(std::move(tokens)));
}

BigInt rank_within_length(const Program& program) {
  const auto& tokens = program.tokens();
  const std::size_t length = tokens.size();
  BigInt rank = 0;
  std::size_t depth = 0;
  for (std::size_t pos = 0; pos + 1 < length; ++pos) {
    const std::size_t left = length - pos - 2;
    const Token t = tokens[pos];
    // Everything with a smaller opcode at this position comes first.
    for (Token n : kNeutral) {
      if (n >= t) break;
      rank += completions(left, depth);
    }
    if (t == Token::LoopClose) rank += completions(left, depth + 1);
    if (t == Token::LoopOpen) {
      ++depth;
    } else if (t == Token::LoopClose) {
      --depth;
    }
  }
  return rank;
}

void extend(std::vector<Token>& prefix, std::size_t remaining, std::size_t depth,
            std::vector<Program>& out) {
  if (remaining == 0) {
    if (depth != 0) return;
    prefix.push_back(Token::End);
    out.push_back(expect_valid(Program::from_tokens(prefix)));
    prefix.pop_back();
    return;
  }
  // Prune prefixes that can no longer close their loops.
  if (depth > remaining) return;
  for (Token t : kNeutral) {
    prefix.push_back(t);
    extend(prefix, remaining - 1, depth, out);
    prefix.pop_back();
  }
  prefix.push_back(Token::LoopOpen);
  extend(prefix, remaining - 1, depth + 1, out);
  prefix.pop_back();
  if (depth > 0) {
    prefix.push_back(Token::LoopClose);
    extend(prefix, remaining - 1, depth - 1, out);
    prefix.pop_back();
  }
}

int depth_delta(Token t) { return t == Token::LoopOpen ? 1 : t == Token::LoopClose ? -1 : 0; }

}  // namespace

ProgramCursor::ProgramCursor(std::size_t token_length, const BigInt& rank)
    : program_(unrank(token_length, rank)) {}

bool ProgramCursor::next() {
  std::vector<Token> body(program_.tokens().begin(), program_.tokens().end() - 1);
  const int n = static_cast<int>(body.size());
  std::vector<int> before(n + 1, 0);
  for (int i = 0; i < n; ++i) before[i + 1] = before[i] + depth_delta(body[i]);
  // Depth after position j must stay within what the remaining slots can close.
  auto fits = [n](int depth, int j) { return depth >= 0 && depth <= n - 1 - j; };
  for (int i = n - 1; i >= 0; --i) {
    for (int v = static_cast<int>(body[i]) + 1; v <= static_cast<int>(Token::LoopClose); ++v) {
      const Token t = static_cast<Token>(v);
      int depth = before[i] + depth_delta(t);
      if (!fits(depth, i)) continue;
      body[i] = t;
      for (int j = i + 1; j < n; ++j) {
        body[j] = fits(depth, j) ? Token::Out : Token::LoopClose;
        depth += depth_delta(body[j]);
      }
      body.push_back(Token::End);
      program_ = expect_valid(Program::from_tokens(std::move(body)));
      return true;
    }
  }
  return false;
}

BitString bitstring_at(EnumerationIndex index) {
  if (index.value == 0) throw DomainError("enumeration indices are 1-based");
  // Strings of length L occupy indices [2^L - 1, 2^{L+1} - 2].
  std::size_t length = 1;
  while (length < 63 && index.value > (std::uint64_t{1} << (length + 1)) - 2) ++length;
  std::uint64_t offset = index.value - ((std::uint64_t{1} << length) - 1);
  BitString out;
  for (std::size_t i = length; i-- > 0;) out.push_back((offset >> i) & 1U);
  return out;
}

EnumerationIndex bitstring_index(const BitString& bits) {
  if (bits.empty()) throw DomainError("the empty string is not enumerated");
  if (bits.size() >= 63) throw DomainError("bit string too long to index");
  std::uint64_t offset = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) offset = (offset << 1) | (bits[i] ? 1U : 0U);
  return {(std::uint64_t{1} << bits.size()) - 1 + offset};
}

std::vector<BitString> bitstrings_canonical(std::uint64_t from_index, std::uint64_t count) {
  std::vector<BitString> out;
  out.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(bitstring_at({from_index + i}));
  return out;
}

Program program_at(EnumerationIndex index) {
  if (index.value == 0) throw DomainError("enumeration indices are 1-based");
  BigInt rank = index.value - 1;
  for (std::size_t length = 1;; ++length) {
    BigInt c = count_valid(length).valid_count;
    if (rank < c) return unrank(length, rank);
    rank -= c;
  }
}

EnumerationIndex program_index(const Program& program) {
  BigInt before = count_valid_up_to(program.size() - 1);
  return {to_u64(before + rank_within_length(program) + 1)};
}

std::vector<std::pair<EnumerationIndex, Program>> valid_programs_canonical(std::uint64_t from_index,
                                                                           std::uint64_t count) {
  if (from_index == 0) throw DomainError("enumeration indices are 1-based");
  std::vector<std::pair<EnumerationIndex, Program>> out;
  if (count == 0) return out;
  out.reserve(count);
  // Locate the starting length, then unrank sequentially within each length.
  BigInt rank = from_index - 1;
  std::size_t length = 1;
  BigInt in_length = count_valid(length).valid_count;
  while (rank >= in_length) {
    rank -= in_length;
    in_length = count_valid(++length).valid_count;
  }
  for (std::uint64_t i = 0; i < count; ++i) {
    out.emplace_back(EnumerationIndex{from_index + i}, unrank(length, rank));
    if (++rank == in_length) {
      rank = 0;
      in_length = count_valid(++length).valid_count;
    }
  }
  return out;
}

std::vector<Program> programs_of_length(std::size_t token_length) {
  std::vector<Program> out;
  if (token_length == 0) return out;
  std::vector<Token> prefix;
  extend(prefix, token_length - 1, 0, out);
  return out;
}

std::vector<Program> programs_up_to(std::size_t max_tokens) {
  std::vector<Program> out;
  for (std::size_t t = 1; t <= max_tokens; ++t) {
    auto batch = programs_of_length(t);
    out.insert(out.end(), std::make_move_iterator(batch.begin()), std::make_move_iterator(batch.end()));
  }
  return out;
}

LengthCensus count_valid(std::size_t token_length) {
  if (token_length == 0) throw DomainError("token length must be >= 1");
  BigInt count = completions(token_length - 1, 0);
  Rational mass(count, BigInt(1) << (kTokenBits * token_length));
  return {token_length, std::move(count), std::move(mass)};
}

BigInt count_valid_up_to(std::size_t max_tokens) {
  BigInt total = 0;
  for (std::size_t t = 1; t <= max_tokens; ++t) total += count_valid(t).valid_count;
  return total;
}

Rational tail_mass_bound(std::size_t token_length) { return pow(Rational(7, 8), token_length); }

}  // namespace hwb
