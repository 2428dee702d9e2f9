#include <doctest.h>

#include "hwb/dovetail.hpp"
#include "hwb/errors.hpp"
#include "oracles.hpp"

using namespace hwb;

namespace {

bool same_events(const std::vector<HaltingEvent>& a, const std::vector<HaltingEvent>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].index != b[i].index || !(a[i].program == b[i].program) || a[i].steps != b[i].steps ||
        a[i].output != b[i].output || a[i].stage_detected != b[i].stage_detected) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("one stage over [END]") {
  Session s({1, 1});
  auto events = s.advance(1);
  REQUIRE(events.size() == 1);
  CHECK(events[0].program.mnemonics() == "END");
  CHECK(events[0].steps == 1);
  CHECK(events[0].stage_detected == 1);
  CHECK(s.discovered_mass() == Rational(1, 8));
}

TEST_CASE("max_tokens 3 runs to completion") {
  Session s({3, 6});
  auto events = s.advance(6);
  CHECK(events.size() == 32);
  CHECK(s.discovered_mass() == Rational(65, 256));
  CHECK(s.undecided_mass() == Rational(0));
  for (std::size_t i = 1; i < events.size(); ++i) {
    const bool ordered = events[i - 1].stage_detected < events[i].stage_detected ||
                         (events[i - 1].stage_detected == events[i].stage_detected &&
                          events[i - 1].index < events[i].index);
    CHECK(ordered);
  }
}

TEST_CASE("max_tokens 4: 170 events in either tape mode") {
  for (bool bounded : {false, true}) {
    DovetailConfig cfg{4, 8};
    if (bounded) cfg.tape_width = kDefaultBoundedWidth;
    Session s(cfg);
    auto events = s.advance(8);
    CHECK(events.size() == 170);
    CHECK(s.discovered_mass() == Rational(589, 2048));
    std::size_t never = 0;
    for (const auto& [index, entry] : s.statuses()) never += entry.status == ProgramStatus::NeverHalts;
    CHECK(never == (bounded ? 2U : 0U));
    CHECK(s.undecided_mass() == (bounded ? Rational(0) : Rational(2, 4096)));
  }
}

TEST_CASE("soundness, stability and monotone mass") {
  Session s({5, 7, kDefaultBoundedWidth});
  Rational previous;
  std::map<std::uint64_t, StatusEntry> seen;
  for (int stage = 1; stage <= 7; ++stage) {
    for (const auto& e : s.advance(1)) {
      CHECK(e.steps <= stage_fuel(e.stage_detected));
      // Replays with exactly that fuel.
      auto replay = run(e.program, MachineConfig::bounded(kDefaultBoundedWidth, e.steps));
      CHECK(replay.halted());
      CHECK(replay.output == e.output);
      CHECK(replay.steps == e.steps);
    }
    CHECK(previous <= s.discovered_mass());
    previous = s.discovered_mass();
    for (const auto& [index, entry] : seen) {
      if (entry.status != ProgramStatus::Undecided) CHECK(s.statuses().at(index) == entry);
    }
    seen = s.statuses();
  }
}

TEST_CASE("events are independent of the worker count") {
  Session one({5, 6});
  Session four({5, 6});
  auto a = one.advance(6, 1);
  auto b = four.advance(6, 4);
  CHECK(same_events(a, b));
  CHECK(one == four);
}

TEST_CASE("halting_events rebuilds the emitted log") {
  Session s({4, 7, kDefaultBoundedWidth});
  auto emitted = s.advance(3);
  auto more = s.advance(4);
  emitted.insert(emitted.end(), more.begin(), more.end());
  CHECK(same_events(emitted, s.halting_events()));
}

TEST_CASE("checkpoint and restore") {
  SUBCASE("round trip then advance equals uninterrupted") {
    Session straight({4, 6});
    auto all = straight.advance(6);

    Session first({4, 6});
    auto head = first.advance(2);
    Session resumed = Session::restore(first.checkpoint());
    CHECK(resumed == first);
    auto tail = resumed.advance(4);
    head.insert(head.end(), tail.begin(), tail.end());
    CHECK(same_events(all, head));
    CHECK(resumed == straight);
    CHECK(resumed.checkpoint() == straight.checkpoint());
  }
  SUBCASE("stage 0") {
    Session fresh({3, 4});
    Session back = Session::restore(fresh.checkpoint());
    CHECK(back.statuses().empty());
    CHECK(back.stage() == 0);
  }
  SUBCASE("truncated document") {
    Session s({3, 4});
    s.advance(2);
    std::string doc = s.checkpoint();
    CHECK_THROWS_AS(Session::restore(doc.substr(0, doc.size() / 2)), CorruptionError);
  }
  SUBCASE("tampered document") {
    Session s({3, 4});
    s.advance(2);
    std::string doc = s.checkpoint();
    auto at = doc.find("\"halted\"");
    REQUIRE(at != std::string::npos);
    doc.replace(at, 8, "\"undecided\"");
    CHECK_THROWS_AS(Session::restore(doc), CorruptionError);
  }
  SUBCASE("version mismatch") {
    Session s({3, 4});
    std::string doc = s.checkpoint();
    doc.replace(doc.find("\"version\": 1"), 12, "\"version\": 2");
    CHECK_THROWS_AS(Session::restore(doc), VersionError);
  }
}

TEST_CASE("preconditions and budget") {
  CHECK_THROWS_AS(Session({0, 1}), DomainError);
  CHECK_THROWS_AS(Session({1, 0}), DomainError);
  CHECK_THROWS_AS(Session({1, 40}), DomainError);
  Session s({2, 3});
  CHECK_THROWS_AS(s.advance(4), DomainError);

  DovetailConfig tight{4, 10};
  tight.step_budget = 5000;
  Session limited(tight);
  limited.advance(4);
  // Two non-halting programs burn 2 * 4^s steps per stage.
  CHECK_THROWS_AS(limited.advance(3), ResourceError);
  CHECK(limited.stage() == 5);
  CHECK(limited.discovered_mass() == Rational(589, 2048));
}
