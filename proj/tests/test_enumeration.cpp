#include <doctest.h>

#include "hwb/enumeration.hpp"
#include "hwb/errors.hpp"
#include "oracles.hpp"

using namespace hwb;

TEST_CASE("bitstrings_canonical") {
  auto first = bitstrings_canonical(1, 3);
  CHECK(first[0].str() == "0");
  CHECK(first[1].str() == "1");
  CHECK(first[2].str() == "00");
  auto later = bitstrings_canonical(7, 2);
  CHECK(later[0].str() == "000");
  CHECK(later[1].str() == "001");
  CHECK(bitstring_index(BitString("000")).value == 7);
  CHECK(bitstring_index(BitString("11")).value == 6);
  CHECK_THROWS_AS(bitstring_at({0}), DomainError);
  CHECK_THROWS_AS(bitstring_index(BitString("")), DomainError);
}

TEST_CASE("bit string enumeration is a bijection") {
  std::uint64_t index = 1;
  for (std::size_t len = 1; len <= 10; ++len) {
    for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v, ++index) {
      BitString b(oracle::to_binary(v, len));
      CHECK(bitstring_index(b).value == index);
      CHECK(bitstring_at({index}) == b);
    }
  }
}

TEST_CASE("valid_programs_canonical") {
  auto first = valid_programs_canonical(1, 6);
  CHECK(first[0].first.value == 1);
  CHECK(first[0].second.mnemonics() == "END");
  CHECK(first[1].second.mnemonics() == "OUT END");
  CHECK(first[2].second.mnemonics() == "INC END");
  CHECK(first[3].second.mnemonics() == "DEC END");
  CHECK(first[4].second.mnemonics() == "RIGHT END");
  CHECK(first[5].second.mnemonics() == "LEFT END");
  CHECK(programs_of_length(3).size() == 26);
  CHECK(programs_of_length(3).back().mnemonics() == "LOOP_OPEN LOOP_CLOSE END");
}

TEST_CASE("program enumeration matches the filtered raw enumeration") {
  // Walk raw bit strings in canonical order, keep the valid ones.
  std::vector<Program> filtered;
  for (std::uint64_t i = 1; i <= (std::uint64_t{1} << 16) - 2; ++i) {
    auto parsed = parse(bitstring_at({i}));
    if (auto* p = std::get_if<Program>(&parsed)) filtered.push_back(*p);
  }
  const auto listed = programs_up_to(5);
  REQUIRE(listed.size() == filtered.size());
  for (std::size_t i = 0; i < listed.size(); ++i) CHECK(listed[i] == filtered[i]);

  auto ranged = valid_programs_canonical(1, listed.size());
  for (std::size_t i = 0; i < listed.size(); ++i) {
    CHECK(ranged[i].first.value == i + 1);
    CHECK(ranged[i].second == listed[i]);
    CHECK(program_index(listed[i]).value == i + 1);
  }
  // Ranges starting mid-length line up too.
  auto mid = valid_programs_canonical(100, 50);
  for (std::size_t i = 0; i < mid.size(); ++i) CHECK(mid[i].second == listed[99 + i]);
}

TEST_CASE("program_at and program_index invert each other deep in the enumeration") {
  for (std::uint64_t k : {1ULL, 7ULL, 33ULL, 173ULL, 5000ULL, 123456ULL, 9999999ULL}) {
    CHECK(program_index(program_at({k})).value == k);
  }
  CHECK_THROWS_AS(program_at({0}), DomainError);
}

TEST_CASE("count_valid") {
  CHECK(count_valid(1).valid_count == 1);
  CHECK(count_valid(1).mass == Rational(1, 8));
  CHECK(count_valid(2).valid_count == 5);
  CHECK(count_valid(2).mass == Rational(5, 64));
  CHECK(count_valid(3).valid_count == 26);
  CHECK(count_valid(4).valid_count == 140);
  CHECK(count_valid(4).mass == Rational(140, 4096));
  CHECK_THROWS_AS(count_valid(0), DomainError);
}

TEST_CASE("count_valid agrees with brute force through 6 tokens") {
  for (std::size_t t = 1; t <= 6; ++t) {
    CHECK(count_valid(t).valid_count == oracle::brute_force_valid_count(t));
    CHECK(programs_of_length(t).size() == oracle::brute_force_valid_count(t));
  }
}

TEST_CASE("Kraft partial sums rise strictly and stay below 1") {
  Rational sum;
  for (std::size_t t = 1; t <= 16; ++t) {
    Rational next = sum + count_valid(t).mass;
    CHECK(sum < next);
    CHECK(next < Rational(1));
    sum = next;
  }
}

TEST_CASE("tail_mass_bound") {
  CHECK(tail_mass_bound(1) == Rational(7, 8));
  CHECK(tail_mass_bound(4) == Rational(2401, 4096));
  CHECK(tail_mass_bound(0) == Rational(1));
  for (std::size_t t = 1; t <= 8; ++t) {
    Rational tail;
    for (std::size_t s = t + 1; s <= t + 6; ++s) tail += count_valid(s).mass;
    CHECK(tail <= tail_mass_bound(t));
  }
}

TEST_CASE("ProgramCursor walks a length in canonical order") {
  for (std::size_t t = 1; t <= 6; ++t) {
    const auto all = oracle::brute_force_programs(t);
    ProgramCursor cursor(t, 0);
    std::size_t i = 0;
    do {
      REQUIRE(i < all.size());
      CHECK(cursor.program() == all[i]);
      ++i;
    } while (cursor.next());
    CHECK(i == all.size());
    ProgramCursor mid(t, all.size() / 2);
    CHECK(mid.program() == all[all.size() / 2]);
  }
}
