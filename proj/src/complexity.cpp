#include "hwb/complexity.hpp"

#include "hwb/errors.hpp"
#include "parallel.hpp"

namespace hwb {

std::string_view to_string(ComplexityMethod method) {
  return method == ComplexityMethod::ExhaustiveMinimal ? "exhaustive-minimal" : "constructive-literal";
}

Program literal_program(std::string_view target) {
  std::vector<Token> tokens;
  int cell = 0;
  for (char c : target) {
    if (c < '0' || c > '9') throw DomainError("target must contain only decimal digits");
    const int d = c - '0';
    const int up = ((d - cell) % 10 + 10) % 10;
    if (cell + up < kCellModulus) {
      tokens.insert(tokens.end(), up, Token::Inc);
      cell += up;
    } else {
      // Counting up would wrap past 255 and break the mod-10 walk.
      const int down = ((cell - d) % 10 + 10) % 10;
      tokens.insert(tokens.end(), down, Token::Dec);
      cell -= down;
    }
    tokens.push_back(Token::Out);
  }
  tokens.push_back(Token::End);
  return expect_valid(Program::from_tokens(std::move(tokens)));
}

std::optional<SearchHit> shortest_producer(std::string_view target, std::size_t max_tokens, std::uint64_t fuel,
                                           unsigned jobs) {
  const MachineConfig cfg = MachineConfig::unbounded(fuel);
  std::uint64_t before = 0;
  for (std::size_t t = 1; t <= max_tokens; ++t) {
    const auto total = count_valid(t).valid_count.convert_to<std::uint64_t>();
    // Each chunk reports its own first hit; the smallest rank wins.
    const std::uint64_t chunks = std::max<std::uint64_t>(1, std::min<std::uint64_t>(total, jobs * 8ULL));
    const std::uint64_t per_chunk = (total + chunks - 1) / chunks;
    std::vector<std::optional<SearchHit>> first(chunks);
    detail::parallel_for(chunks, jobs, [&](std::size_t c) {
      const std::uint64_t begin = c * per_chunk;
      const std::uint64_t end = std::min(total, begin + per_chunk);
      if (begin >= end) return;
      ProgramCursor cursor(t, begin);
      for (std::uint64_t rank = begin;; ++rank) {
        if (produces(cursor.program(), cfg, target)) {
          first[c] = SearchHit{{before + rank + 1}, cursor.program()};
          return;
        }
        if (rank + 1 == end) return;
        cursor.next();
      }
    });
    for (auto& hit : first) {
      if (hit) return std::move(hit);
    }
    before += total;
  }
  return std::nullopt;
}

ComplexityEstimate h_upper(std::string_view target, std::size_t max_tokens, std::uint64_t fuel, unsigned jobs) {
  if (max_tokens < 1) throw DomainError("max_tokens must be >= 1");
  if (auto hit = shortest_producer(target, max_tokens, fuel, jobs)) {
    const std::uint64_t bits = hit->program.bit_length();
    const std::size_t through = hit->program.size() - 1;
    return {std::string(target), bits, std::move(hit->program), ComplexityMethod::ExhaustiveMinimal, through};
  }
  Program literal = literal_program(target);
  const std::uint64_t bits = literal.bit_length();
  return {std::string(target), bits, std::move(literal), ComplexityMethod::ConstructiveLiteral, max_tokens};
}

ProbeReport incompressibility_probe(const BitString& bits, std::size_t max_tokens, std::uint64_t fuel,
                                    unsigned jobs) {
  ProbeReport report;
  report.digits = bits.str();
  report.literal_bits = literal_program(report.digits).bit_length();
  report.exhausted_through = max_tokens;
  if (auto hit = shortest_producer(report.digits, max_tokens, fuel, jobs)) {
    report.shortest_found_bits = hit->program.bit_length();
    report.exhausted_through = hit->program.size() - 1;
    report.consistent_with_incompressibility = *report.shortest_found_bits >= report.literal_bits;
  }
  return report;
}

}  // namespace hwb
