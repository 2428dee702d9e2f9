#include "hwb/machine.hpp"

#include <array>
#include <sstream>
#include <unordered_map>

#include "hwb/errors.hpp"

namespace hwb {

namespace {

constexpr std::array<std::string_view, 8> kMnemonics = {"END", "OUT",  "INC",       "DEC",
                                                        "RIGHT", "LEFT", "LOOP_OPEN", "LOOP_CLOSE"};

// Tape, head and program counter for one execution.
class Machine {
 public:
  Machine(const Program& program, const MachineConfig& config)
      : program_(program), width_(config.tape_width.value_or(0)) {
    if (config.tape_width && *config.tape_width == 0) throw DomainError("bounded tape width must be >= 1");
    cells_.assign(width_ ? width_ : 1, 0);
  }

  bool halted() const { return halted_; }
  std::uint64_t steps() const { return steps_; }
  std::int64_t min_head() const { return min_head_; }
  std::int64_t max_head() const { return max_head_; }

  // Executes one token. Returns the emitted digit, or -1.
  int step() {
    ++steps_;
    const Token t = program_.tokens()[pc_];
    std::uint8_t& cell = cells_[slot()];
    int emitted = -1;
    switch (t) {
      case Token::End:
        halted_ = true;
        return -1;
      case Token::Out:
        emitted = cell % 10;
        break;
      case Token::Inc:
        ++cell;
        break;
      case Token::Dec:
        --cell;
        break;
      case Token::Right:
        move(+1);
        break;
      case Token::Left:
        move(-1);
        break;
      case Token::LoopOpen:
        if (cell == 0) {
          pc_ = program_.match(pc_) + 1;
          return -1;
        }
        break;
      case Token::LoopClose:
        if (cell != 0) {
          pc_ = program_.match(pc_) + 1;
          return -1;
        }
        break;
    }
    ++pc_;
    return emitted;
  }

  // Bounded tape only: program counter, head slot and cell contents.
  std::string configuration() const {
    std::string key;
    key.reserve(16 + cells_.size());
    auto put = [&key](std::uint64_t v) {
      for (int i = 0; i < 8; ++i) key.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    };
    put(pc_);
    put(slot());
    key.append(reinterpret_cast<const char*>(cells_.data()), cells_.size());
    return key;
  }

 private:
  std::size_t slot() const {
    if (width_) {
      auto w = static_cast<std::int64_t>(width_);
      return static_cast<std::size_t>(((head_ % w) + w) % w);
    }
    return static_cast<std::size_t>(head_ - base_);
  }

  void move(int delta) {
    head_ += delta;
    if (head_ < min_head_) min_head_ = head_;
    if (head_ > max_head_) max_head_ = head_;
    if (width_) return;
    if (head_ < base_) {
      std::size_t grow = cells_.size();
      cells_.insert(cells_.begin(), grow, 0);
      base_ -= static_cast<std::int64_t>(grow);
    } else if (head_ - base_ >= static_cast<std::int64_t>(cells_.size())) {
      cells_.resize(cells_.size() * 2, 0);
    }
  }

  const Program& program_;
  std::size_t width_;
  std::vector<std::uint8_t> cells_;
  std::int64_t base_ = 0;
  std::int64_t head_ = 0;
  std::int64_t min_head_ = 0;
  std::int64_t max_head_ = 0;
  std::size_t pc_ = 0;
  std::uint64_t steps_ = 0;
  bool halted_ = false;
};

void require_fuel_or_bound(const MachineConfig& config) {
  if (!config.tape_width && !config.fuel) {
    throw DomainError("unbounded tape requires finite fuel");
  }
}

RunOutcome finish(const Machine& m, RunKind kind, std::string output) {
  RunOutcome out;
  out.kind = kind;
  out.output = std::move(output);
  out.steps = m.steps();
  out.min_head = m.min_head();
  out.max_head = m.max_head();
  return out;
}

}  // namespace

std::string_view mnemonic(Token t) { return kMnemonics[static_cast<std::size_t>(t)]; }

std::optional<Token> token_from_mnemonic(std::string_view text) {
  for (std::size_t i = 0; i < kMnemonics.size(); ++i) {
    if (kMnemonics[i] == text) return static_cast<Token>(i);
  }
  return std::nullopt;
}

std::string_view to_string(InvalidReason reason) {
  switch (reason) {
    case InvalidReason::NotMultipleOf3: return "not-multiple-of-3";
    case InvalidReason::NoEnd: return "no-end";
    case InvalidReason::EarlyEnd: return "early-end";
    case InvalidReason::UnbalancedLoop: return "unbalanced-loop";
  }
  return "unknown";
}

std::string_view to_string(RunKind kind) {
  switch (kind) {
    case RunKind::Halted: return "halted";
    case RunKind::OutOfFuel: return "out-of-fuel";
    case RunKind::NeverHalts: return "never-halts";
  }
  return "unknown";
}

ParseResult Program::from_tokens(std::vector<Token> tokens) {
  std::size_t end_at = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == Token::End) {
      end_at = i;
      break;
    }
  }
  if (end_at == tokens.size()) return InvalidReason::NoEnd;
  if (end_at + 1 != tokens.size()) return InvalidReason::EarlyEnd;

  std::vector<std::size_t> jumps(tokens.size(), 0);
  std::vector<std::size_t> open;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == Token::LoopOpen) {
      open.push_back(i);
    } else if (tokens[i] == Token::LoopClose) {
      if (open.empty()) return InvalidReason::UnbalancedLoop;
      jumps[i] = open.back();
      jumps[open.back()] = i;
      open.pop_back();
    }
  }
  if (!open.empty()) return InvalidReason::UnbalancedLoop;
  return Program(std::move(tokens), std::move(jumps));
}

BitString Program::bits() const {
  BitString out;
  for (Token t : tokens_) {
    auto code = static_cast<unsigned>(t);
    for (int b = kTokenBits - 1; b >= 0; --b) out.push_back((code >> b) & 1U);
  }
  return out;
}

std::string Program::mnemonics() const {
  std::string out;
  for (Token t : tokens_) {
    if (!out.empty()) out += ' ';
    out += mnemonic(t);
  }
  return out;
}

ParseResult parse(const BitString& bits) {
  if (bits.size() % kTokenBits != 0) return InvalidReason::NotMultipleOf3;
  std::vector<Token> tokens;
  tokens.reserve(bits.size() / kTokenBits);
  for (std::size_t i = 0; i < bits.size(); i += kTokenBits) {
    unsigned code = (bits[i] ? 4U : 0U) | (bits[i + 1] ? 2U : 0U) | (bits[i + 2] ? 1U : 0U);
    tokens.push_back(static_cast<Token>(code));
  }
  return Program::from_tokens(std::move(tokens));
}

ParseResult parse_mnemonics(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Token> tokens;
  std::string word;
  while (in >> word) {
    auto t = token_from_mnemonic(word);
    if (!t) throw DomainError("unknown token mnemonic '" + word + "'");
    tokens.push_back(*t);
  }
  return Program::from_tokens(std::move(tokens));
}

Program expect_valid(ParseResult result) {
  if (auto* reason = std::get_if<InvalidReason>(&result)) {
    throw DomainError("invalid program: " + std::string(to_string(*reason)));
  }
  return std::get<Program>(std::move(result));
}

RunOutcome run(const Program& program, const MachineConfig& config) {
  require_fuel_or_bound(config);
  Machine m(program, config);
  std::string output;
  while (!m.halted()) {
    if (config.fuel && m.steps() >= *config.fuel) return finish(m, RunKind::OutOfFuel, std::move(output));
    int digit = m.step();
    if (digit >= 0) output.push_back(static_cast<char>('0' + digit));
  }
  return finish(m, RunKind::Halted, std::move(output));
}

RunOutcome decide_halting_exact(const Program& program, const MachineConfig& config,
                                std::size_t max_configurations) {
  if (!config.tape_width) throw DomainError("exact halting decision requires a bounded tape");
  Machine m(program, config);
  std::string output;
  struct Visit {
    std::uint64_t step;
    std::size_t output_length;
  };
  std::unordered_map<std::string, Visit> visited;
  while (!m.halted()) {
    auto [it, inserted] = visited.try_emplace(m.configuration(), Visit{m.steps(), output.size()});
    if (!inserted) {
      RunOutcome out = finish(m, RunKind::NeverHalts, std::move(output));
      out.cycle_start = it->second.step;
      out.cycle_step = m.steps();
      out.cycle_emits = out.output.size() != it->second.output_length;
      return out;
    }
    if (visited.size() > max_configurations) {
      throw ResourceError("exact halting decision exceeded its configuration budget of " +
                          std::to_string(max_configurations));
    }
    if (config.fuel && m.steps() >= *config.fuel) return finish(m, RunKind::OutOfFuel, std::move(output));
    int digit = m.step();
    if (digit >= 0) output.push_back(static_cast<char>('0' + digit));
  }
  return finish(m, RunKind::Halted, std::move(output));
}

std::optional<std::uint64_t> produces(const Program& program, const MachineConfig& config,
                                      std::string_view target) {
  require_fuel_or_bound(config);
  Machine m(program, config);
  std::size_t emitted = 0;
  while (!m.halted()) {
    if (config.fuel && m.steps() >= *config.fuel) return std::nullopt;
    int digit = m.step();
    if (digit >= 0) {
      if (emitted >= target.size() || target[emitted] != '0' + digit) return std::nullopt;
      ++emitted;
    }
  }
  if (emitted != target.size()) return std::nullopt;
  return m.steps();
}

}  // namespace hwb
