#include "hwb/constructions.hpp"

#include <nlohmann/json.hpp>

#include "hwb/enumeration.hpp"

namespace hwb {

namespace {

int digit_of(char c) { return c - '0'; }

}  // namespace

DigitSource DigitSource::digits(std::string value) {
  if (value.find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("digit stream may contain only decimal digits: '" + value + "'");
  }
  return DigitSource(Digits{std::move(value)});
}

DigitSource DigitSource::constant(int digit) {
  if (digit < 0 || digit > 9) throw DomainError("constant digit must be in 0..9");
  return DigitSource(Constant{digit});
}

DigitSource DigitSource::program(Program program) { return DigitSource(std::move(program)); }

std::optional<int> DigitSource::digit(std::size_t k, std::uint64_t fuel) const {
  if (k == 0) throw DomainError("digit positions are 1-based");
  if (const auto* d = std::get_if<Digits>(&source_)) {
    return k <= d->value.size() ? digit_of(d->value[k - 1]) : 0;
  }
  if (const auto* c = std::get_if<Constant>(&source_)) return c->digit;
  const RunOutcome o = run(std::get<Program>(source_), MachineConfig::unbounded(fuel));
  if (o.output.size() >= k) return digit_of(o.output[k - 1]);
  if (o.halted()) return 0;
  return std::nullopt;
}

std::string DigitSource::describe() const {
  if (const auto* d = std::get_if<Digits>(&source_)) return "digits " + d->value;
  if (const auto* c = std::get_if<Constant>(&source_)) return "constant " + std::to_string(c->digit);
  return "program " + std::get<Program>(source_).bits().str();
}

std::string DiagonalResult::str() const {
  std::string out;
  for (const auto& d : digits) out.push_back(static_cast<char>('0' + d.digit));
  return out;
}

std::size_t DiagonalResult::provisional_count() const {
  std::size_t count = 0;
  for (const auto& d : digits) count += d.decided ? 0 : 1;
  return count;
}

DiagonalResult cantor_diagonal(std::span<const DigitSource> streams, std::size_t n, std::uint64_t fuel) {
  if (n > streams.size()) throw DomainError("diagonal needs at least n streams");
  DiagonalResult r;
  r.digits.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    auto d = streams[k - 1].digit(k, fuel);
    if (!d) {
      r.digits.push_back({3, false});
    } else {
      r.digits.push_back({*d == 3 ? 4 : 3, true});
    }
  }
  return r;
}

namespace {

DiagonalDigit diagonal_from_output(const std::string& output, std::size_t k) {
  return {output[k - 1] == '3' ? 4 : 3, true};
}

DiagonalDigit turing_digit(const Program& p, std::size_t k, std::uint64_t fuel, DiagonalOracle oracle,
                           std::size_t width) {
  if (oracle == DiagonalOracle::None) {
    RunOutcome o = run(p, MachineConfig::unbounded(fuel));
    if (o.output.size() >= k) return diagonal_from_output(o.output, k);
    return {3, o.halted()};
  }
  RunOutcome o = decide_halting_exact(p, MachineConfig::bounded(width));
  if (o.output.size() >= k) return diagonal_from_output(o.output, k);
  if (o.halted() || !o.cycle_emits) return {3, true};
  // The cycle repeats forever and emits at least one digit per lap.
  const std::uint64_t lap = *o.cycle_step - *o.cycle_start;
  RunOutcome longer = run(p, MachineConfig::bounded(width, *o.cycle_step + lap * k));
  return diagonal_from_output(longer.output, k);
}

}  // namespace

DiagonalResult turing_diagonal(std::size_t n, std::uint64_t fuel, DiagonalOracle oracle, std::size_t tape_width) {
  DiagonalResult r;
  r.digits.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) {
    ParseResult parsed = parse(bitstring_at({k}));
    if (auto* p = std::get_if<Program>(&parsed)) {
      r.digits.push_back(turing_digit(*p, k, fuel, oracle, tape_width));
    } else {
      r.digits.push_back({3, true});
    }
  }
  return r;
}

std::size_t cover_precision(const Rational& epsilon, std::size_t i) {
  const Rational width = epsilon * Rational::inverse_power_of_two(i + 1);
  std::size_t m = 0;
  BigInt scale = 1;
  while (Rational(1, scale) > width) {
    ++m;
    scale *= 10;
  }
  return m;
}

CoverResult cover(const Rational& epsilon, std::span<const DigitSource> reals, std::size_t n, std::uint64_t fuel) {
  if (epsilon.is_zero() || Rational(1) < epsilon) throw DomainError("epsilon must satisfy 0 < eps <= 1");
  if (n > reals.size()) throw DomainError("cover count exceeds the number of listed reals");
  CoverResult result;
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t m = cover_precision(epsilon, i);
    BigInt truncated = 0;
    for (std::size_t k = 1; k <= m; ++k) {
      auto d = reals[i - 1].digit(k, fuel);
      if (!d) {
        throw LocalizationError("real " + std::to_string(i) + " did not produce digit " + std::to_string(k) +
                                " within fuel " + std::to_string(fuel));
      }
      truncated = truncated * 10 + *d;
    }
    const Rational lo(truncated, boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(m)));
    const Rational length = epsilon * Rational::inverse_power_of_two(i);
    result.intervals.emplace_back(lo, min(Rational(1), lo + length));
    result.total_length += length;
  }
  return result;
}

std::vector<DigitSource> load_streams(std::string_view json_text) {
  using nlohmann::json;
  try {
    json doc = json::parse(json_text);
    const json* list = &doc;
    if (doc.is_object()) {
      if (doc.value("version", 0) != 1) throw VersionError("streams file must have version 1");
      list = &doc.at("streams");
    }
    if (!list->is_array()) throw DomainError("streams file must hold a list of streams");
    std::vector<DigitSource> streams;
    for (const auto& entry : *list) {
      const auto kind = entry.at("kind").get<std::string>();
      if (kind == "digits") {
        streams.push_back(DigitSource::digits(entry.at("value").get<std::string>()));
      } else if (kind == "constant") {
        streams.push_back(DigitSource::constant(entry.at("digit").get<int>()));
      } else if (kind == "program") {
        streams.push_back(DigitSource::program(expect_valid(parse(BitString(entry.at("bits").get<std::string>())))));
      } else {
        throw DomainError("unknown stream kind '" + kind + "'");
      }
    }
    return streams;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed streams file: ") + e.what());
  }
}

Rational borel_encode(const BitString& answers) { return dyadic_value(answers); }

bool borel_answer(const Rational& x, std::size_t n) { return bit_at(x, n); }

}  // namespace hwb
