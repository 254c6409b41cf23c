#include <algorithm>

#include "itrm/iteration.hpp"
#include "itrm/pairing.hpp"

namespace itrm {

namespace {

Ordinal position_of(const Ordinal& level) { return mul(level, Ordinal(2)); }

// The level whose digits sit at `pos`, if pos = level * 2 for some level.
std::optional<Ordinal> level_at(const Ordinal& pos) {
  if (auto n = pos.finite_value()) {
    if (*n % 2 != 0) return std::nullopt;
    return Ordinal(Natural(*n / 2));
  }
  std::vector<Term> t = pos.terms();
  if (t[0].coefficient % 2 != 0) return std::nullopt;
  t[0].coefficient /= 2;
  Ordinal level = Ordinal::from_terms(std::move(t));
  if (position_of(level) != pos) return std::nullopt;
  return level;
}

void require_closure(const Ordinal& alpha, const Ordinal& eta) {
  if (alpha < Ordinal::omega() || !is_multiplicatively_closed(alpha)) {
    throw ClosureError("alpha = " + format_ordinal(alpha) + " is not closed under multiplication");
  }
  if (eta.is_zero() || !is_additively_closed(eta)) {
    throw ClosureError("eta = " + format_ordinal(eta) + " is not closed under addition");
  }
}

std::size_t next_line(const Program& prog, std::size_t line) { return line == prog.size() ? 1 : line + 1; }

std::size_t line_number(const Ordinal& v) {
  auto n = v.finite_value();
  if (!n || *n < 1) throw EncodingCorruptionError("line digit " + format_ordinal(v) + " is not a line number");
  return static_cast<std::size_t>(*n);
}

const Program& program_for(const OperatorProgram& op, const Ordinal& level) {
  return level.is_successor() ? op.program : passthrough_program();
}

}  // namespace

const Program& passthrough_program() {
  static const Program p = [] {
    Program q;
    q.name = "passthrough";
    q.register_count = 1;
    q.lines = {OracleQuery{1}, Halt{}};
    return q;
  }();
  return p;
}

EncodedState encode_state(const LevelStack& stack, const Ordinal& alpha, const Ordinal& eta) {
  require_closure(alpha, eta);
  if (stack.frames.empty()) throw RangeError("cannot encode an empty stack");
  const std::size_t n = stack.frames.front().registers.size();
  if (n == 0) throw RangeError("frames need at least one register");
  BaseDigits line{alpha, {}};
  std::vector<BaseDigits> regs(n, BaseDigits{alpha, {}});
  for (std::size_t f = 0; f < stack.frames.size(); ++f) {
    const LevelFrame& frame = stack.frames[f];
    if (frame.level >= eta) {
      throw RangeError("level " + format_ordinal(frame.level) + " is not below eta = " + format_ordinal(eta));
    }
    if (f > 0 && !(frame.level < stack.frames[f - 1].level)) throw RangeError("frame levels must decrease");
    if (frame.line < 1) throw RangeError("frame lines start at 1");
    if (frame.registers.size() != n) throw RangeError("frames disagree on the register count");
    const Ordinal pos = position_of(frame.level);
    line.digits.push_back(Digit{pos, Ordinal(static_cast<std::uint64_t>(frame.line))});
    for (std::size_t i = 0; i < n; ++i) {
      if (frame.registers[i] >= alpha) {
        throw RangeError("register value " + format_ordinal(frame.registers[i]) + " is not below alpha");
      }
      if (!frame.registers[i].is_zero()) regs[i].digits.push_back(Digit{pos, frame.registers[i]});
    }
  }
  EncodedState out{base_compose(line), {}, alpha, eta};
  for (const auto& r : regs) out.work_registers.push_back(base_compose(r));
  return out;
}

LevelStack decode_state(const EncodedState& s) {
  require_closure(s.alpha, s.eta);
  LevelStack stack;
  const BaseDigits line = base_decompose(s.line_register, s.alpha);
  if (line.digits.empty()) throw EncodingCorruptionError("line register is 0");
  for (const auto& d : line.digits) {
    auto level = level_at(d.position);
    if (!level) throw EncodingCorruptionError("line digit at odd position " + format_ordinal(d.position));
    if (*level >= s.eta) throw EncodingCorruptionError("level " + format_ordinal(*level) + " is not below eta");
    stack.frames.push_back(LevelFrame{*level, line_number(d.value), {}});
  }
  for (const auto& r : s.work_registers) {
    const BaseDigits digits = base_decompose(r, s.alpha);
    std::size_t f = 0;
    for (auto& frame : stack.frames) frame.registers.emplace_back();
    for (const auto& d : digits.digits) {
      while (f < stack.frames.size() && position_of(stack.frames[f].level) > d.position) ++f;
      if (f == stack.frames.size() || position_of(stack.frames[f].level) != d.position) {
        throw EncodingCorruptionError("register digit at " + format_ordinal(d.position) + " belongs to no frame");
      }
      stack.frames[f].registers.back() = d.value;
    }
  }
  return stack;
}

IterateResult iterate_step(const EncodedState& s, const OperatorProgram& op, const Oracle& x, const Ordinal& iota_top) {
  const Ordinal& alpha = s.alpha;
  BaseDigits line = base_decompose(s.line_register, alpha);
  if (line.digits.empty()) throw EncodingCorruptionError("line register is 0");

  // The active level is the one with the least power of alpha in L.
  const Ordinal pos = line.digits.back().position;
  const auto level_opt = level_at(pos);
  if (!level_opt) throw EncodingCorruptionError("active line digit at odd position " + format_ordinal(pos));
  const Ordinal level = *level_opt;
  const std::size_t l = line_number(line.digits.back().value);
  const Program& prog = program_for(op, level);
  if (l > prog.size()) throw EncodingCorruptionError("active line " + std::to_string(l) + " outside the program");

  std::vector<BaseDigits> regs;
  for (const auto& r : s.work_registers) regs.push_back(base_decompose(r, alpha));

  // Overflow cleanup: a trailing alpha^(level*2+1) is what an overflowing
  // digit of the active level leaves behind at a limit; drop it. For infinite
  // levels level*2+1 is the position of level+1, where it cannot be told
  // apart from a real digit, so only positions owned by no frame are cleaned.
  const Ordinal overflow = add(pos, Ordinal(1));
  const bool overflow_is_free =
      std::none_of(line.digits.begin(), line.digits.end(), [&](const Digit& d) { return d.position == overflow; });
  for (auto& r : regs) {
    if (overflow_is_free && !r.digits.empty() && r.digits.back().position == overflow &&
        r.digits.back().value == Ordinal(1)) {
      r.digits.pop_back();
    }
    if (!r.digits.empty() && r.digits.back().position < pos) {
      throw EncodingCorruptionError("register digit below the active level");
    }
  }

  auto digit = [&](std::size_t i) { return digit_at(regs.at(i - 1), pos); };
  auto advance = [&] { set_digit(line, pos, Ordinal(static_cast<std::uint64_t>(next_line(prog, l)))); };
  auto push = [&](const Ordinal& callee, const Ordinal& input) {
    const Ordinal callee_pos = position_of(callee);
    set_digit(regs[0], callee_pos, input);
    set_digit(line, callee_pos, Ordinal(1));
  };

  std::optional<bool> finished;
  std::visit(
      [&](const auto& ins) {
        using T = std::decay_t<decltype(ins)>;
        if constexpr (std::is_same_v<T, Inc>) {
          set_digit(regs.at(ins.reg - 1), pos, add(digit(ins.reg), Ordinal(1)));
          advance();
        } else if constexpr (std::is_same_v<T, Copy>) {
          set_digit(regs.at(ins.dst - 1), pos, digit(ins.src));
          advance();
        } else if constexpr (std::is_same_v<T, JumpEq>) {
          const std::size_t to = digit(ins.lhs) == digit(ins.rhs) ? ins.target : next_line(prog, l);
          set_digit(line, pos, Ordinal(static_cast<std::uint64_t>(to)));
        } else if constexpr (std::is_same_v<T, OracleQuery>) {
          if (ins.reg != 1) throw ValidationError("operator programs may only query register 1");
          const Ordinal query = digit(1);
          if (level.is_zero()) {
            set_digit(regs[0], pos, Ordinal(x(query) ? 1 : 0));
            advance();
          } else if (level.is_successor()) {
            push(predecessor(level), query);
          } else {
            auto [inner, arg] = godel_unpair(query, alpha);
            if (inner >= level) {
              set_digit(regs[0], pos, Ordinal{});
              advance();
            } else {
              push(inner, arg);
            }
          }
        } else {
          const Ordinal result = digit(1);
          if (line.digits.size() == 1) {
            if (level != iota_top) throw EncodingCorruptionError("outermost frame is not at the top level");
            if (result != Ordinal(0) && result != Ordinal(1)) {
              throw OutputNotBitError("iteration halted with output " + format_ordinal(result));
            }
            finished = result == Ordinal(1);
            return;
          }
          // Pass the result down to the caller and resume it after its
          // oracle call.
          const Digit caller = line.digits[line.digits.size() - 2];
          const auto caller_level = level_at(caller.position);
          if (!caller_level) throw EncodingCorruptionError("caller line digit at odd position");
          const Program& caller_prog = program_for(op, *caller_level);
          set_digit(regs[0], pos, Ordinal{});
          set_digit(regs[0], caller.position, result);
          for (std::size_t i = 1; i < regs.size(); ++i) set_digit(regs[i], pos, Ordinal{});
          line.digits.pop_back();
          set_digit(line, caller.position,
                    Ordinal(static_cast<std::uint64_t>(next_line(caller_prog, line_number(caller.value)))));
        }
      },
      prog.at(l));
  if (finished) return IterateFinished{*finished};

  EncodedState out{base_compose(line), {}, alpha, s.eta};
  for (const auto& r : regs) out.work_registers.push_back(base_compose(r));
  return out;
}

EncodedState initial_state(const OperatorProgram& op, const Ordinal& eta, const Ordinal& iota, const Ordinal& xi) {
  require_closure(op.alpha, eta);
  if (iota >= eta) throw RangeError("iteration index " + format_ordinal(iota) + " is not below eta");
  if (xi >= op.alpha) throw RangeError("argument " + format_ordinal(xi) + " is not below alpha");
  LevelFrame top{iota, 1, std::vector<Ordinal>(op.program.register_count)};
  top.registers[0] = xi;
  return encode_state(LevelStack{{top}}, op.alpha, eta);
}

bool run_iterate(const OperatorProgram& op, const Ordinal& eta, const Ordinal& iota, const Ordinal& xi, const Oracle& x,
                 const IterateOptions& options) {
  validate(op.program);
  for (const auto& ins : op.program.lines) {
    if (const auto* q = std::get_if<OracleQuery>(&ins); q && q->reg != 1) {
      throw ValidationError("operator programs may only query register 1");
    }
  }
  EncodedState s = initial_state(op, eta, iota, xi);
  for (std::uint64_t n = 0; n < options.budget; ++n) {
    IterateResult r = iterate_step(s, op, x, iota);
    if (auto* done = std::get_if<IterateFinished>(&r)) return done->bit;
    s = std::move(std::get<EncodedState>(r));
    if (options.observer) options.observer(s);
  }
  throw UndecidedError("iteration did not finish within " + std::to_string(options.budget) + " transitions");
}

}  // namespace itrm
