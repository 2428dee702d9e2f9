#include "hwb/omega.hpp"

#include <set>

#include <nlohmann/json.hpp>

#include "hwb/enumeration.hpp"
#include "hwb/errors.hpp"

namespace hwb {

using nlohmann::json;

BitString certify_bits(const Rational& lower, const Rational& upper, std::size_t max_bits) {
  BitString bits;
  if (!(lower < Rational(1))) return bits;
  // Bins nest, so the first length that fails ends the search.
  for (std::size_t n = 1; n <= max_bits; ++n) {
    BitString candidate = leading_bits(lower, n);
    if (!(upper < dyadic_value(candidate) + Rational::inverse_power_of_two(n))) break;
    bits = std::move(candidate);
  }
  return bits;
}

OmegaBounds sandwich(Rational lower, Rational undecided, Rational tail_bound, std::size_t max_bits) {
  OmegaBounds b;
  b.upper = min(Rational(1), lower + undecided + tail_bound);
  b.certified_bits = certify_bits(lower, b.upper, max_bits);
  b.lower = std::move(lower);
  b.undecided = std::move(undecided);
  b.tail_bound = std::move(tail_bound);
  return b;
}

OmegaBounds omega_bounds(const Session& session, std::size_t max_bits) {
  OmegaBounds b = sandwich(session.discovered_mass(), session.undecided_mass(),
                           tail_mass_bound(session.enumerated_depth()), max_bits);
  b.max_tokens = session.config().max_tokens;
  b.stage = session.stage();
  return b;
}

Universe::Universe(std::vector<UniverseMember> members, std::size_t tape_width)
    : members_(std::move(members)), tape_width_(tape_width) {
  if (tape_width_ == 0) throw DomainError("universe tape width must be >= 1");
  std::set<BitString> encodings;
  for (const auto& m : members_) {
    if (!encodings.insert(m.program.bits()).second) {
      throw DomainError("universe lists program '" + m.program.bits().str() + "' twice");
    }
  }
  // In lexicographic order a prefix sorts immediately before some string it prefixes.
  const BitString* previous = nullptr;
  for (const auto& bits : encodings) {
    if (previous && bits.starts_with(*previous)) {
      throw DomainError("universe is not prefix-free: '" + previous->str() + "' prefixes '" + bits.str() + "'");
    }
    previous = &bits;
  }
}

Universe Universe::from_oracle(const std::vector<Program>& programs, std::size_t tape_width) {
  std::vector<UniverseMember> members;
  members.reserve(programs.size());
  for (const auto& p : programs) {
    RunOutcome o = decide_halting_exact(p, MachineConfig::bounded(tape_width));
    members.push_back({p, o.halted(), o.halted() ? o.output : std::string()});
  }
  return Universe(std::move(members), tape_width);
}

std::size_t Universe::max_bit_length() const {
  std::size_t longest = 0;
  for (const auto& m : members_) longest = std::max(longest, m.program.bit_length());
  return longest;
}

std::optional<std::size_t> Universe::find(const Program& program) const {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i].program == program) return i;
  }
  return std::nullopt;
}

Rational Universe::omega() const {
  Rational total;
  for (const auto& m : members_) {
    if (m.halts) total += m.program.mass();
  }
  return total;
}

std::string Universe::to_json() const {
  json programs = json::array();
  for (const auto& m : members_) {
    programs.push_back({{"bits", m.program.bits().str()}, {"halts", m.halts}, {"output", m.output}});
  }
  json doc = {{"version", 1}, {"tape_width", tape_width_}, {"programs", std::move(programs)}};
  return doc.dump(2) + "\n";
}

Universe Universe::from_json(std::string_view text) {
  try {
    json doc = json::parse(text);
    std::size_t width = kDefaultBoundedWidth;
    const json* list = &doc;
    if (doc.is_object()) {
      if (doc.value("version", 0) != 1) throw VersionError("universe file must have version 1");
      width = doc.value("tape_width", kDefaultBoundedWidth);
      list = &doc.at("programs");
    }
    if (!list->is_array()) throw DomainError("universe file must hold a list of programs");
    std::vector<UniverseMember> members;
    for (const auto& entry : *list) {
      Program p = expect_valid(parse(BitString(entry.at("bits").get<std::string>())));
      members.push_back({std::move(p), entry.at("halts").get<bool>(), entry.value("output", std::string())});
    }
    return Universe(std::move(members), width);
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed universe file: ") + e.what());
  }
}

OmegaBounds universe_bounds(const Universe& universe, std::uint64_t stage, std::size_t max_bits) {
  Rational lower;
  Rational undecided;
  for (const auto& m : universe.members()) {
    RunKind kind = RunKind::OutOfFuel;
    if (stage > 0) {
      kind = decide_halting_exact(m.program, MachineConfig::bounded(universe.tape_width(), stage_fuel(stage))).kind;
    }
    if (kind == RunKind::Halted) {
      lower += m.program.mass();
    } else if (kind == RunKind::OutOfFuel) {
      undecided += m.program.mass();
    }
  }
  OmegaBounds b = sandwich(std::move(lower), std::move(undecided), Rational(0), max_bits);
  b.stage = stage;
  return b;
}

OmegaPrefix::OmegaPrefix(BitString bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw DomainError("an omega prefix needs at least one bit");
}

std::string_view to_string(Verdict verdict) {
  return verdict == Verdict::Halts ? "halts" : "never-halts";
}

std::string_view to_string(DecodeResult result) {
  switch (result) {
    case DecodeResult::Halts: return "halts";
    case DecodeResult::NeverHalts: return "never-halts";
    case DecodeResult::PrefixInsufficient: return "prefix-insufficient";
  }
  return "unknown";
}

DecodeResult decode_halting_with_prefix(const OmegaPrefix& prefix, const Universe& universe,
                                        const Program& query, const DecodeOptions& options) {
  const auto query_at = universe.find(query);
  if (!query_at) throw DomainError("query program is not a member of the universe");
  if (query.bit_length() > prefix.size()) return DecodeResult::PrefixInsufficient;

  const Rational target = dyadic_value(prefix.bits());
  const Rational ceiling = target + Rational::inverse_power_of_two(prefix.size());
  const auto& members = universe.members();
  std::vector<bool> halted(members.size(), false);
  Rational found;

  for (std::uint64_t s = 1;; ++s) {
    if (found >= ceiling) {
      throw InconsistentUniverseError("halting mass " + found.to_string() + " contradicts the omega prefix " +
                                      prefix.bits().str());
    }
    if (halted[*query_at]) return DecodeResult::Halts;
    // Any further halt of a program no longer than n bits would push the
    // mass to at least target + 2^{-n}.
    if (found >= target) return DecodeResult::NeverHalts;
    if (s > options.max_stage) {
      throw ResourceError("omega prefix decoding did not converge within " + std::to_string(options.max_stage) +
                          " stages");
    }
    const MachineConfig cfg = MachineConfig::bounded(universe.tape_width(), stage_fuel(s));
    for (std::size_t i = 0; i < members.size(); ++i) {
      if (halted[i]) continue;
      if (run(members[i].program, cfg).halted()) {
        halted[i] = true;
        found += members[i].program.mass();
      }
    }
  }
}

OracleTheoremStream::OracleTheoremStream(std::optional<std::size_t> max_tokens, std::size_t tape_width)
    : max_tokens_(max_tokens), tape_width_(tape_width) {}

std::optional<TheoremStatement> OracleTheoremStream::next() {
  while (pos_ == batch_.size()) {
    if (max_tokens_ && length_ >= *max_tokens_) return std::nullopt;
    batch_ = programs_of_length(++length_);
    pos_ = 0;
  }
  const Program& p = batch_[pos_++];
  RunOutcome o = decide_halting_exact(p, MachineConfig::bounded(tape_width_));
  return TheoremStatement{p, o.halted() ? Verdict::Halts : Verdict::NeverHalts};
}

std::optional<TheoremStatement> ListTheoremStream::next() {
  if (pos_ == statements_.size()) return std::nullopt;
  return statements_[pos_++];
}

StreamDecision decide_via_theorem_stream(TheoremStream& stream, const Program& query, std::uint64_t budget) {
  std::map<BitString, Verdict> seen;
  StreamDecision decision;
  while (decision.examined < budget) {
    auto statement = stream.next();
    if (!statement) break;
    ++decision.examined;
    auto [it, inserted] = seen.try_emplace(statement->program.bits(), statement->verdict);
    if (!inserted && it->second != statement->verdict) {
      throw ContradictionError("theorem stream asserts both verdicts for '" + statement->program.mnemonics() + "'");
    }
    if (statement->program == query) {
      decision.verdict = statement->verdict;
      return decision;
    }
  }
  return decision;
}

}  // namespace hwb
