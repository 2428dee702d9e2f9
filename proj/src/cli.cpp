#include "hwb/cli.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hwb/complexity.hpp"
#include "hwb/constructions.hpp"
#include "hwb/dovetail.hpp"
#include "hwb/enumeration.hpp"
#include "hwb/errors.hpp"
#include "hwb/machine.hpp"
#include "hwb/omega.hpp"

namespace hwb::cli {

using nlohmann::json;

namespace {

struct Globals {
  std::string format = "json";
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;  // reserved; nothing is randomized
  std::uint64_t fuel = 1000;
  std::string program_format = "bits";
};

Program read_program(const std::string& text, const std::string& format) {
  if (format == "tokens") return expect_valid(parse_mnemonics(text));
  return expect_valid(parse(BitString(text)));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << content)) throw DomainError("cannot write '" + path + "'");
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

json outcome_json(const RunOutcome& o) {
  json j = {{"kind", to_string(o.kind)}, {"output", o.output}, {"steps", o.steps}};
  if (o.cycle_step) j["cycle_step"] = *o.cycle_step;
  return j;
}

json bounds_json(const OmegaBounds& b) {
  return {{"lower", b.lower.to_string()},
          {"undecided", b.undecided.to_string()},
          {"tail_bound", b.tail_bound.to_string()},
          {"upper", b.upper.to_string()},
          {"certified_bits", b.certified_bits.str()},
          {"max_tokens", b.max_tokens},
          {"stage", b.stage}};
}

json event_json(const HaltingEvent& e) {
  return {{"index", e.index.value},
          {"bits", e.program.bits().str()},
          {"tokens", e.program.mnemonics()},
          {"steps", e.steps},
          {"output", e.output},
          {"stage", e.stage_detected}};
}

json diagonal_json(const DiagonalResult& r) {
  json provisional = json::array();
  for (std::size_t i = 0; i < r.digits.size(); ++i) {
    if (!r.digits[i].decided) provisional.push_back(i + 1);
  }
  return {{"digits", r.str()}, {"provisional", std::move(provisional)}};
}

std::string raw_tokens(const BitString& bits) {
  if (bits.size() % kTokenBits != 0) return "";
  std::string out;
  for (std::size_t i = 0; i < bits.size(); i += kTokenBits) {
    unsigned code = (bits[i] ? 4U : 0U) | (bits[i + 1] ? 2U : 0U) | (bits[i + 2] ? 1U : 0U);
    if (!out.empty()) out += ' ';
    out += mnemonic(static_cast<Token>(code));
  }
  return out;
}

class Usage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::optional<std::size_t> width_for(const std::string& tape, std::size_t width) {
  if (tape == "bounded") return width;
  return std::nullopt;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Halting-probability and computability workbench", "hwb"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", g.jobs, "Worker threads (never changes output)")->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Reserved; no command is randomized");
  app.add_option("--fuel", g.fuel, "Step limit per program run");
  app.add_option("--program-format", g.program_format, "How --program is written")
      ->check(CLI::IsMember({"bits", "tokens"}));

  std::string program_text;
  std::string tape = "unbounded";
  std::size_t width = kDefaultBoundedWidth;
  std::size_t max_tokens = 0;
  std::string output_path;

  auto* enumerate_cmd = app.add_subcommand("enumerate", "List bit strings or valid programs in canonical order");
  bool valid_only = false;
  enumerate_cmd->add_option("--max-tokens", max_tokens, "Longest bit string, in tokens")->required()->check(CLI::PositiveNumber);
  enumerate_cmd->add_flag("--valid-only", valid_only);

  auto* run_cmd = app.add_subcommand("run", "Run one program under fuel");
  run_cmd->add_option("--program", program_text, "Program as bits or mnemonics")->required();
  run_cmd->add_option("--tape", tape, "Tape kind (default unbounded)")->check(CLI::IsMember({"bounded", "unbounded"}));
  run_cmd->add_option("--width", width, "Circular tape width")->check(CLI::PositiveNumber);

  auto* oracle_cmd = app.add_subcommand("oracle", "Exact halting decision on a bounded tape");
  oracle_cmd->add_option("--program", program_text, "Single program to decide");
  oracle_cmd->add_option("--max-tokens", max_tokens, "Decide every program up to this length (universe file)")
      ->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--width", width, "Circular tape width")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--output", output_path, "Write the universe file here");

  auto* omega_cmd = app.add_subcommand("omega", "Dovetail programs and bound the halting probability");
  std::uint64_t stages = 0;
  std::string checkpoint_path;
  std::string resume_path;
  std::uint64_t step_budget = DovetailConfig{}.step_budget;
  std::size_t max_bits = kDefaultCertifiedBits;
  bool with_events = false;
  auto* omega_max_tokens = omega_cmd->add_option("--max-tokens", max_tokens, "Longest program enumerated, in tokens")->check(CLI::PositiveNumber);
  omega_cmd->add_option("--stages", stages, "Target stage")->required()->check(CLI::PositiveNumber);
  omega_cmd->add_option("--checkpoint", checkpoint_path, "Write a checkpoint here after running");
  omega_cmd->add_option("--resume", resume_path, "Continue from this checkpoint");
  auto* omega_tape = omega_cmd->add_option("--tape", tape, "bounded uses the exact oracle")->check(CLI::IsMember({"bounded", "unbounded"}));
  omega_cmd->add_option("--width", width, "Circular tape width")->check(CLI::PositiveNumber);
  omega_cmd->add_option("--step-budget", step_budget, "Most steps per invocation");
  omega_cmd->add_option("--bits", max_bits, "Most leading bits to certify");
  omega_cmd->add_flag("--events", with_events, "Include every halting event");

  auto* decode_cmd = app.add_subcommand("decode", "Decide halting from a prefix of a universe's omega");
  std::string universe_path;
  std::string prefix_bits;
  std::uint64_t decode_stages = DecodeOptions{}.max_stage;
  decode_cmd->add_option("--universe", universe_path, "Universe JSON file")->required();
  decode_cmd->add_option("--omega-prefix", prefix_bits, "Claimed leading bits of omega")->required();
  decode_cmd->add_option("--program", program_text, "Program to decide")->required();
  decode_cmd->add_option("--max-stage", decode_stages, "Give up after this stage");

  auto* theorem_cmd = app.add_subcommand("theorem-stream", "Decide halting by scanning oracle verdicts");
  std::uint64_t budget = 1'000'000;
  theorem_cmd->add_option("--program", program_text, "Program to decide")->required();
  theorem_cmd->add_option("--max-tokens", max_tokens, "Stop the stream after this program length");
  theorem_cmd->add_option("--budget", budget, "Most statements to examine")->check(CLI::PositiveNumber);
  theorem_cmd->add_option("--width", width, "Circular tape width")->check(CLI::PositiveNumber);

  auto* diagonal_cmd = app.add_subcommand("diagonal", "Diagonal constructions");
  diagonal_cmd->require_subcommand(1);
  std::size_t digits = 0;
  std::string streams_path;
  auto* cantor_cmd = diagonal_cmd->add_subcommand("cantor", "Diagonalize over listed digit streams");
  cantor_cmd->add_option("--streams", streams_path, "Streams JSON file")->required();
  cantor_cmd->add_option("--digits", digits, "Number of digits")->required();
  auto* turing_cmd = diagonal_cmd->add_subcommand("turing", "Diagonalize over the program enumeration");
  std::string oracle_kind = "none";
  turing_cmd->add_option("--digits", digits, "Number of digits")->required();
  turing_cmd->add_option("--oracle", oracle_kind, "Halting oracle for looping programs")->check(CLI::IsMember({"none", "bounded"}));
  turing_cmd->add_option("--width", width, "Circular tape width")->check(CLI::PositiveNumber);

  auto* cover_cmd = app.add_subcommand("cover", "Cover listed reals with intervals of total length < epsilon");
  std::string epsilon_text;
  std::size_t count = 0;
  cover_cmd->add_option("--epsilon", epsilon_text, "Total length bound, e.g. 1/64")->required();
  cover_cmd->add_option("--streams", streams_path, "Streams JSON file")->required();
  cover_cmd->add_option("--count", count, "Number of reals to cover")->required();

  auto* borel_cmd = app.add_subcommand("borel", "Pack yes/no answers into one real and read them back");
  borel_cmd->require_subcommand(1);
  std::string answers;
  std::string value_text;
  std::size_t question = 0;
  auto* encode_cmd = borel_cmd->add_subcommand("encode", "Answers (1 = yes) to a rational");
  encode_cmd->add_option("--answers", answers, "Answer bits, e.g. 101")->required();
  auto* ask_cmd = borel_cmd->add_subcommand("ask", "Answer question n from a rational");
  ask_cmd->add_option("--value", value_text, "Encoded real, e.g. 5/8")->required();
  ask_cmd->add_option("--index", question, "Question number (1-based)")->required()->check(CLI::PositiveNumber);

  auto* complexity_cmd = app.add_subcommand("complexity", "Upper-bound the program-size complexity of a digit string");
  std::string target;
  bool probe = false;
  complexity_cmd->add_option("--target", target, "Decimal digit string")->required();
  complexity_cmd->add_option("--max-tokens", max_tokens, "Search horizon in tokens")->required()->check(CLI::PositiveNumber);
  complexity_cmd->add_flag("--probe", probe, "Treat the target as omega bits and report compressibility");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    err << app.help();
    return kUsage;
  }

  const bool csv = g.format == "csv";
  auto emit = [&](const json& payload) {
    if (csv) throw Usage("--format csv is only available for enumerate and omega --events");
    out << payload.dump() << "\n";
  };

  try {
    if (*enumerate_cmd) {
      json records = json::array();
      std::ostringstream table;
      table << "index,bits,tokens,valid,invalid_reason\n";
      auto record = [&](std::uint64_t index, const BitString& bits, const std::string& tokens,
                        std::optional<InvalidReason> reason) {
        json r = {{"index", index}, {"bits", bits.str()}, {"tokens", tokens}, {"valid", !reason}};
        if (reason) r["invalid_reason"] = to_string(*reason);
        table << index << ',' << bits.str() << ',' << csv_field(tokens) << ',' << (reason ? "false" : "true")
              << ',' << (reason ? to_string(*reason) : "") << "\n";
        records.push_back(std::move(r));
      };
      if (valid_only) {
        std::uint64_t index = 0;
        for (const auto& p : programs_up_to(max_tokens)) record(++index, p.bits(), p.mnemonics(), std::nullopt);
      } else {
        const std::uint64_t total = (std::uint64_t{1} << (kTokenBits * max_tokens + 1)) - 2;
        for (std::uint64_t i = 1; i <= total; ++i) {
          BitString bits = bitstring_at({i});
          ParseResult parsed = parse(bits);
          auto* reason = std::get_if<InvalidReason>(&parsed);
          record(i, bits, raw_tokens(bits), reason ? std::optional(*reason) : std::nullopt);
        }
      }
      if (csv) {
        out << table.str();
      } else {
        out << records.dump() << "\n";
      }
      return kSuccess;
    }

    if (*run_cmd) {
      const Program p = read_program(program_text, g.program_format);
      emit(outcome_json(run(p, MachineConfig{width_for(tape, width), g.fuel})));
      return kSuccess;
    }

    if (*oracle_cmd) {
      if (program_text.empty() == (max_tokens == 0)) throw Usage("oracle needs exactly one of --program or --max-tokens");
      if (!program_text.empty()) {
        emit(outcome_json(decide_halting_exact(read_program(program_text, g.program_format),
                                               MachineConfig::bounded(width))));
        return kSuccess;
      }
      const Universe universe = Universe::from_oracle(programs_up_to(max_tokens), width);
      if (output_path.empty()) {
        if (csv) throw Usage("--format csv is not available for universe files");
        out << universe.to_json();
      } else {
        write_file(output_path, universe.to_json());
        emit({{"programs", universe.members().size()}, {"omega", universe.omega().to_string()}});
      }
      return kSuccess;
    }

    if (*omega_cmd) {
      std::optional<Session> session;
      if (!resume_path.empty()) {
        session = Session::restore(read_file(resume_path));
        if (omega_max_tokens->count() > 0 && max_tokens != session->config().max_tokens) {
          throw DomainError("--max-tokens disagrees with the checkpoint");
        }
        if (omega_tape->count() > 0 && width_for(tape, width) != session->config().tape_width) {
          throw DomainError("--tape disagrees with the checkpoint");
        }
      } else {
        if (max_tokens == 0) throw Usage("omega needs --max-tokens unless resuming");
        session.emplace(DovetailConfig{max_tokens, stages, width_for(tape, width), step_budget});
      }
      if (stages < session->stage()) throw DomainError("--stages is below the checkpoint's stage");
      if (stages > session->config().max_stage) session->set_max_stage(stages);
      try {
        if (stages > session->stage()) session->advance(stages - session->stage(), g.jobs);
      } catch (const ResourceError&) {
        // Keep the completed stages.
        if (!checkpoint_path.empty()) write_file(checkpoint_path, session->checkpoint());
        throw;
      }
      if (!checkpoint_path.empty()) write_file(checkpoint_path, session->checkpoint());

      if (csv) {
        if (!with_events) throw Usage("--format csv for omega requires --events");
        out << "index,bits,tokens,steps,output,stage\n";
        for (const auto& e : session->halting_events()) {
          out << e.index.value << ',' << e.program.bits().str() << ',' << e.program.mnemonics() << ','
              << e.steps << ',' << e.output << ',' << e.stage_detected << "\n";
        }
        return kSuccess;
      }
      json payload = bounds_json(omega_bounds(*session, max_bits));
      if (with_events) {
        json events = json::array();
        for (const auto& e : session->halting_events()) events.push_back(event_json(e));
        payload["events"] = std::move(events);
      }
      emit(payload);
      return kSuccess;
    }

    if (*decode_cmd) {
      const Universe universe = Universe::from_json(read_file(universe_path));
      const Program query = read_program(program_text, g.program_format);
      DecodeResult r = decode_halting_with_prefix(OmegaPrefix(BitString(prefix_bits)), universe, query,
                                                  DecodeOptions{decode_stages});
      emit({{"verdict", to_string(r)}});
      return kSuccess;
    }

    if (*theorem_cmd) {
      const Program query = read_program(program_text, g.program_format);
      OracleTheoremStream stream(max_tokens ? std::optional(max_tokens) : std::nullopt, width);
      StreamDecision d = decide_via_theorem_stream(stream, query, budget);
      emit({{"verdict", d.verdict ? std::string(to_string(*d.verdict)) : "budget-exhausted"},
            {"examined", d.examined}});
      return kSuccess;
    }

    if (*cantor_cmd) {
      const auto streams = load_streams(read_file(streams_path));
      emit(diagonal_json(cantor_diagonal(streams, digits, g.fuel)));
      return kSuccess;
    }

    if (*turing_cmd) {
      const auto oracle = oracle_kind == "bounded" ? DiagonalOracle::ExactBounded : DiagonalOracle::None;
      emit(diagonal_json(turing_diagonal(digits, g.fuel, oracle, width)));
      return kSuccess;
    }

    if (*cover_cmd) {
      const auto streams = load_streams(read_file(streams_path));
      const Rational epsilon = Rational::parse(epsilon_text);
      CoverResult r = cover(epsilon, streams, count, g.fuel);
      json intervals = json::array();
      for (const auto& iv : r.intervals) intervals.push_back({{"lo", iv.lo().to_string()}, {"hi", iv.hi().to_string()}});
      emit({{"epsilon", epsilon.to_string()},
            {"intervals", std::move(intervals)},
            {"total_length", r.total_length.to_string()}});
      return kSuccess;
    }

    if (*encode_cmd) {
      emit({{"value", borel_encode(BitString(answers)).to_string()}});
      return kSuccess;
    }

    if (*ask_cmd) {
      const bool yes = borel_answer(Rational::parse(value_text), question);
      emit({{"index", question}, {"answer", yes ? "yes" : "no"}});
      return kSuccess;
    }

    if (*complexity_cmd) {
      if (probe) {
        ProbeReport r = incompressibility_probe(BitString(target), max_tokens, g.fuel, g.jobs);
        json j = {{"bits", r.digits},
                  {"shortest_found_bits", nullptr},
                  {"exhausted_through", r.exhausted_through},
                  {"literal_bits", r.literal_bits},
                  {"consistent_with_incompressibility", r.consistent_with_incompressibility}};
        if (r.shortest_found_bits) j["shortest_found_bits"] = *r.shortest_found_bits;
        emit(j);
        return kSuccess;
      }
      ComplexityEstimate e = h_upper(target, max_tokens, g.fuel, g.jobs);
      emit({{"target", e.target},
            {"bound_bits", e.bound_bits},
            {"witness", {{"bits", e.witness.bits().str()}, {"tokens", e.witness.mnemonics()}}},
            {"method", to_string(e.method)},
            {"search_exhausted_through", e.search_exhausted_through}});
      return kSuccess;
    }
  } catch (const Usage& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource budget exceeded: " << e.what() << "\n";
    return kResource;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
  err << app.help();
  return kUsage;
}

}  // namespace hwb::cli
