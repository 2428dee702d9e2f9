#include "hwb/dovetail.hpp"

#include <algorithm>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "hwb/errors.hpp"
#include "parallel.hpp"

namespace hwb {

using nlohmann::json;

namespace {

void validate(const DovetailConfig& config) {
  if (config.max_tokens < 1) throw DomainError("max_tokens must be >= 1");
  if (config.max_stage < 1 || config.max_stage > kMaxDovetailStage) {
    throw DomainError("max_stage must be in [1, " + std::to_string(kMaxDovetailStage) + "]");
  }
  if (config.tape_width && *config.tape_width == 0) throw DomainError("tape width must be >= 1");
}

std::string fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json config_json(const DovetailConfig& c) {
  json j = {{"max_tokens", c.max_tokens},
            {"max_stage", c.max_stage},
            {"tape", c.tape_width ? "bounded" : "unbounded"},
            {"step_budget", c.step_budget}};
  if (c.tape_width) j["width"] = *c.tape_width;
  return j;
}

DovetailConfig config_from_json(const json& j) {
  DovetailConfig c;
  c.max_tokens = j.at("max_tokens").get<std::size_t>();
  c.max_stage = j.at("max_stage").get<std::uint64_t>();
  c.step_budget = j.at("step_budget").get<std::uint64_t>();
  const auto tape = j.at("tape").get<std::string>();
  if (tape == "bounded") {
    c.tape_width = j.at("width").get<std::size_t>();
  } else if (tape != "unbounded") {
    throw CorruptionError("unknown tape mode '" + tape + "'");
  }
  return c;
}

ProgramStatus status_from_string(const std::string& s) {
  if (s == "undecided") return ProgramStatus::Undecided;
  if (s == "halted") return ProgramStatus::Halted;
  if (s == "never-halts") return ProgramStatus::NeverHalts;
  throw CorruptionError("unknown program status '" + s + "'");
}

}  // namespace

std::uint64_t stage_fuel(std::uint64_t stage) {
  if (stage > kMaxDovetailStage) throw DomainError("stage fuel overflows 64 bits");
  return std::uint64_t{1} << (2 * stage);
}

std::string_view to_string(ProgramStatus status) {
  switch (status) {
    case ProgramStatus::Undecided: return "undecided";
    case ProgramStatus::Halted: return "halted";
    case ProgramStatus::NeverHalts: return "never-halts";
  }
  return "unknown";
}

Session::Session(DovetailConfig config) : config_(std::move(config)) { validate(config_); }

std::size_t Session::enumerated_depth() const {
  return static_cast<std::size_t>(std::min<std::uint64_t>(stage_, config_.max_tokens));
}

const std::vector<Program>& Session::programs_through(std::size_t depth) {
  while (programs_depth_ < depth) {
    auto batch = programs_of_length(++programs_depth_);
    programs_.insert(programs_.end(), std::make_move_iterator(batch.begin()),
                     std::make_move_iterator(batch.end()));
  }
  return programs_;
}

Rational Session::undecided_mass() const {
  Rational total;
  for (const auto& [index, entry] : statuses_) {
    if (entry.status == ProgramStatus::Undecided) total += programs_[index - 1].mass();
  }
  return total;
}

void Session::set_max_stage(std::uint64_t max_stage) {
  DovetailConfig c = config_;
  c.max_stage = max_stage;
  validate(c);
  if (max_stage < stage_) throw DomainError("max_stage is below the session's current stage");
  config_ = c;
}

std::vector<HaltingEvent> Session::advance(std::uint64_t stages, unsigned jobs) {
  if (stages < 1) throw DomainError("advance requires at least one stage");
  if (stage_ + stages > config_.max_stage) {
    throw DomainError("advancing to stage " + std::to_string(stage_ + stages) + " exceeds max_stage " +
                      std::to_string(config_.max_stage));
  }
  std::vector<HaltingEvent> events;
  std::uint64_t steps_spent = 0;
  const std::uint64_t last = stage_ + stages;
  for (std::uint64_t s = stage_ + 1; s <= last; ++s) {
    const std::size_t depth = static_cast<std::size_t>(std::min<std::uint64_t>(s, config_.max_tokens));
    const auto& programs = programs_through(depth);
    const std::uint64_t enumerated = count_valid_up_to(depth).convert_to<std::uint64_t>();

    std::vector<std::uint64_t> pending;
    for (std::uint64_t index = 1; index <= enumerated; ++index) {
      auto it = statuses_.find(index);
      if (it == statuses_.end() || it->second.status == ProgramStatus::Undecided) pending.push_back(index);
    }

    const std::uint64_t fuel = stage_fuel(s);
    std::vector<RunOutcome> outcomes(pending.size());
    detail::parallel_for(pending.size(), jobs, [&](std::size_t i) {
      const Program& p = programs[pending[i] - 1];
      outcomes[i] = config_.tape_width
                        ? decide_halting_exact(p, MachineConfig::bounded(*config_.tape_width, fuel))
                        : run(p, MachineConfig::unbounded(fuel));
    });

    for (const auto& o : outcomes) steps_spent += o.steps;
    if (steps_spent > config_.step_budget) {
      throw ResourceError("dovetailing exceeded the step budget of " + std::to_string(config_.step_budget) +
                          " at stage " + std::to_string(s));
    }

    // Commit the stage.
    for (std::uint64_t index = 1; index <= enumerated; ++index) statuses_.try_emplace(index);
    for (std::size_t i = 0; i < pending.size(); ++i) {
      const RunOutcome& o = outcomes[i];
      StatusEntry& entry = statuses_[pending[i]];
      if (o.kind == RunKind::Halted) {
        const Program& p = programs[pending[i] - 1];
        entry = {ProgramStatus::Halted, o.steps};
        mass_ += p.mass();
        events.push_back({{pending[i]}, p, o.steps, o.output, s});
      } else if (o.kind == RunKind::NeverHalts) {
        entry = {ProgramStatus::NeverHalts, 0};
      }
    }
    stage_ = s;
  }
  return events;
}

std::vector<HaltingEvent> Session::halting_events() const {
  std::vector<HaltingEvent> events;
  for (const auto& [index, entry] : statuses_) {
    if (entry.status != ProgramStatus::Halted) continue;
    const Program& p = programs_[index - 1];
    // A program first runs at the stage equal to its length and is detected
    // at the first stage whose fuel covers its step count.
    std::uint64_t stage = p.size();
    while (stage_fuel(stage) < entry.steps) ++stage;
    const MachineConfig cfg = config_.tape_width ? MachineConfig::bounded(*config_.tape_width, entry.steps)
                                                 : MachineConfig::unbounded(entry.steps);
    events.push_back({{index}, p, entry.steps, run(p, cfg).output, stage});
  }
  std::stable_sort(events.begin(), events.end(),
                   [](const HaltingEvent& a, const HaltingEvent& b) { return a.stage_detected < b.stage_detected; });
  return events;
}

std::string Session::checkpoint() const {
  json statuses = json::array();
  for (const auto& [index, entry] : statuses_) {
    json row = {index, to_string(entry.status)};
    if (entry.status == ProgramStatus::Halted) row.push_back(entry.steps);
    statuses.push_back(std::move(row));
  }
  json doc = {{"version", kCheckpointVersion},
              {"config", config_json(config_)},
              {"stage", stage_},
              {"statuses", std::move(statuses)},
              {"mass", mass_.to_string()}};
  doc["checksum"] = fnv1a64(doc.dump());
  return doc.dump(2) + "\n";
}

Session Session::restore(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw CorruptionError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("version")) throw CorruptionError("checkpoint has no version field");
  if (doc["version"] != kCheckpointVersion) {
    throw VersionError("unsupported checkpoint version " + doc["version"].dump());
  }
  try {
    const std::string checksum = doc.at("checksum").get<std::string>();
    json body = doc;
    body.erase("checksum");
    if (fnv1a64(body.dump()) != checksum) throw CorruptionError("checkpoint checksum mismatch");

    Session session(config_from_json(doc.at("config")));
    session.stage_ = doc.at("stage").get<std::uint64_t>();
    if (session.stage_ > session.config_.max_stage) throw CorruptionError("checkpoint stage exceeds max_stage");
    const auto& programs = session.programs_through(session.enumerated_depth());
    for (const auto& row : doc.at("statuses")) {
      const auto index = row.at(0).get<std::uint64_t>();
      StatusEntry entry{status_from_string(row.at(1).get<std::string>()), 0};
      if (entry.status == ProgramStatus::Halted) {
        entry.steps = row.at(2).get<std::uint64_t>();
        if (index >= 1 && index <= programs.size()) session.mass_ += programs[index - 1].mass();
      }
      if (!session.statuses_.emplace(index, entry).second) throw CorruptionError("duplicate status entry");
    }
    // Statuses must cover exactly the enumerated programs.
    if (session.statuses_.size() != programs.size() ||
        (!programs.empty() && session.statuses_.rbegin()->first != programs.size())) {
      throw CorruptionError("checkpoint statuses do not match the enumerated programs");
    }
    if (session.mass_ != Rational::parse(doc.at("mass").get<std::string>())) {
      throw CorruptionError("checkpoint mass disagrees with its statuses");
    }
    return session;
  } catch (const json::exception& e) {
    throw CorruptionError(std::string("malformed checkpoint: ") + e.what());
  } catch (const CorruptionError&) {
    throw;
  } catch (const DomainError& e) {
    throw CorruptionError(std::string("invalid checkpoint: ") + e.what());
  }
}

}  // namespace hwb
