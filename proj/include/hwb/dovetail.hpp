#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwb/enumeration.hpp"
#include "hwb/machine.hpp"
#include "hwb/rational.hpp"

namespace hwb {

inline constexpr int kCheckpointVersion = 1;
// 4^31 is the largest stage fuel that fits in 64 bits.
inline constexpr std::uint64_t kMaxDovetailStage = 31;

struct DovetailConfig {
  std::size_t max_tokens = 1;
  std::uint64_t max_stage = 1;
  // Set: programs run on a bounded tape of this width under the exact
  // cycle-detecting oracle, so never-halts verdicts can be recorded.
  std::optional<std::size_t> tape_width;
  // Wall on the total steps executed by a single advance() call.
  std::uint64_t step_budget = 20'000'000'000ULL;

  friend bool operator==(const DovetailConfig&, const DovetailConfig&) = default;
};

// Stage s runs every undecided program of at most min(s, max_tokens) tokens
// from scratch with this much fuel.
std::uint64_t stage_fuel(std::uint64_t stage);

enum class ProgramStatus { Undecided, Halted, NeverHalts };
std::string_view to_string(ProgramStatus status);

struct StatusEntry {
  ProgramStatus status = ProgramStatus::Undecided;
  std::uint64_t steps = 0;  // halted only

  friend bool operator==(const StatusEntry&, const StatusEntry&) = default;
};

struct HaltingEvent {
  EnumerationIndex index;
  Program program;
  std::uint64_t steps = 0;
  std::string output;
  std::uint64_t stage_detected = 0;
};

// Single-writer dovetailing session over the canonical program enumeration.
class Session {
 public:
  explicit Session(DovetailConfig config);

  const DovetailConfig& config() const { return config_; }
  std::uint64_t stage() const { return stage_; }
  // Keyed by enumeration index; holds every program enumerated so far.
  const std::map<std::uint64_t, StatusEntry>& statuses() const { return statuses_; }
  // Sum of 2^{-|p|} over halted programs.
  const Rational& discovered_mass() const { return mass_; }
  // Sum of 2^{-|p|} over enumerated programs still undecided.
  Rational undecided_mass() const;
  // Token length reached by the enumeration: min(stage, max_tokens).
  std::size_t enumerated_depth() const;

  // Runs the next `stages` stages. Events come out ordered by stage, then by
  // program index, independent of `jobs`. On error the session keeps the
  // state of the last completed stage.
  std::vector<HaltingEvent> advance(std::uint64_t stages, unsigned jobs = 1);

  // Every halting event so far, in emission order, rebuilt from the status
  // map by replaying each halted program. Works on restored sessions too.
  std::vector<HaltingEvent> halting_events() const;

  // Raises max_stage, e.g. when resuming a checkpoint with a larger target.
  void set_max_stage(std::uint64_t max_stage);

  std::string checkpoint() const;
  // Throws VersionError, or CorruptionError for unreadable or inconsistent documents.
  static Session restore(std::string_view document);

  friend bool operator==(const Session& a, const Session& b) {
    return a.config_ == b.config_ && a.stage_ == b.stage_ && a.statuses_ == b.statuses_ &&
           a.mass_ == b.mass_;
  }

 private:
  const std::vector<Program>& programs_through(std::size_t depth);

  DovetailConfig config_;
  std::uint64_t stage_ = 0;
  std::map<std::uint64_t, StatusEntry> statuses_;
  Rational mass_;
  std::vector<Program> programs_;  // canonical, index i + 1
  std::size_t programs_depth_ = 0;
};

}  // namespace hwb
