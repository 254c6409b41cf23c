#include "itrm/machine.hpp"

#include <deque>
#include <sstream>

#include <json.hpp>

#include "itrm/accelerator.hpp"

namespace itrm {

Oracle empty_oracle() {
  return [](const Ordinal&) { return false; };
}

Oracle finite_oracle(std::set<Ordinal> members) {
  auto shared = std::make_shared<const std::set<Ordinal>>(std::move(members));
  return [shared](const Ordinal& x) { return shared->contains(x); };
}

MachineSpec::MachineSpec(Ordinal alpha, Oracle oracle) : alpha_(std::move(alpha)), oracle_(std::move(oracle)) {
  if (!alpha_.is_limit()) {
    throw ValidationError("machine bound alpha must be a limit ordinal >= w, got " + format_ordinal(alpha_));
  }
  if (!oracle_) oracle_ = empty_oracle();
}

std::string canonical_form(const Configuration& c) {
  std::string out = c.halted ? "H" : std::to_string(c.line);
  out += '|';
  for (std::size_t i = 0; i < c.registers.size(); ++i) {
    if (i > 0) out += ',';
    std::string r = format_ordinal(c.registers[i]);
    r.erase(std::remove(r.begin(), r.end(), ' '), r.end());
    out += r;
  }
  return out;
}

Configuration initial_configuration(const Program& prog, const std::vector<Ordinal>& inputs) {
  if (inputs.size() > prog.register_count) {
    throw ValidationError("program '" + prog.name + "' has " + std::to_string(prog.register_count) +
                          " registers but got " + std::to_string(inputs.size()) + " inputs");
  }
  Configuration c;
  c.registers.assign(prog.register_count, Ordinal{});
  std::copy(inputs.begin(), inputs.end(), c.registers.begin());
  return c;
}

// Moving past the last line wraps to line 1, so a program only stops at HALT.
static std::size_t next_line(const Program& prog, std::size_t line) {
  return line == prog.size() ? 1 : line + 1;
}

Configuration step(const MachineSpec& spec, const Program& prog, const Configuration& c) {
  if (c.halted) throw InvariantViolationError("step on a halted configuration");
  if (c.line < 1 || c.line > prog.size()) {
    throw InvariantViolationError("active line " + std::to_string(c.line) + " outside the program");
  }
  Configuration out = c;
  std::visit(
      [&](const auto& ins) {
        using T = std::decay_t<decltype(ins)>;
        if constexpr (std::is_same_v<T, Inc>) {
          Ordinal& r = out.reg(ins.reg);
          r = add(r, Ordinal(1));
          if (r >= spec.alpha()) throw InvariantViolationError("register reached alpha at a successor step");
          out.line = next_line(prog, c.line);
        } else if constexpr (std::is_same_v<T, Copy>) {
          out.reg(ins.dst) = c.reg(ins.src);
          out.line = next_line(prog, c.line);
        } else if constexpr (std::is_same_v<T, JumpEq>) {
          out.line = c.reg(ins.lhs) == c.reg(ins.rhs) ? ins.target : next_line(prog, c.line);
        } else if constexpr (std::is_same_v<T, OracleQuery>) {
          out.reg(ins.reg) = Ordinal(spec.query(c.reg(ins.reg)) ? 1 : 0);
          out.line = next_line(prog, c.line);
        } else {
          out.halted = true;
        }
      },
      prog.at(c.line));
  return out;
}

Configuration limit_config(const MachineSpec& spec, const Program& prog, const LimitHistory& h) {
  if (h.registers.size() != prog.register_count) {
    throw MalformedDescriptorError("limit history has " + std::to_string(h.registers.size()) +
                                   " register descriptors for " + std::to_string(prog.register_count) +
                                   " registers");
  }
  Configuration out;
  const Ordinal line = liminf(h.line);
  const auto n = line.finite_value();
  if (!n || *n < 1 || *n > prog.size()) {
    throw MalformedDescriptorError("limit line " + format_ordinal(line) + " is not a program line");
  }
  out.line = static_cast<std::size_t>(*n);
  for (const auto& d : h.registers) {
    Ordinal v = liminf(d);
    if (v >= spec.alpha()) v = Ordinal{};
    out.registers.push_back(std::move(v));
  }
  return out;
}

std::string trace_record(const TraceEvent& e) {
  nlohmann::ordered_json j;
  j["kind"] = e.kind == TraceEvent::Kind::Start ? "start" : e.kind == TraceEvent::Kind::Step ? "step" : "limit";
  j["time"] = format_ordinal(e.time);
  j["steps"] = e.successor_steps;
  j["line"] = e.config->line;
  j["halted"] = e.config->halted;
  auto regs = nlohmann::ordered_json::array();
  for (const auto& r : e.config->registers) regs.push_back(format_ordinal(r));
  j["registers"] = std::move(regs);
  return j.dump();
}

RunOutcome run(const MachineSpec& spec, const Program& prog, const std::vector<Ordinal>& inputs,
               const RunOptions& options) {
  validate(prog);
  RunOutcome out;
  Configuration c = initial_configuration(prog, inputs);
  for (const auto& r : c.registers) {
    if (r >= spec.alpha()) throw ValidationError("input " + format_ordinal(r) + " is not below alpha");
  }

  Ordinal last_limit;          // time of the most recent limit (0 at start)
  std::uint64_t since_limit = 0;
  auto now = [&] { return add(last_limit, Ordinal(since_limit)); };
  auto emit = [&](TraceEvent::Kind kind) {
    if (options.trace) options.trace(TraceEvent{kind, now(), out.successor_steps, &c});
  };

  const std::size_t window_cap = std::max<std::size_t>(options.accel.window, 4);
  std::deque<Configuration> window;
  std::size_t next_check = 16;
  auto reset_window = [&] {
    window.clear();
    window.push_back(c);
    next_check = 16;
  };
  reset_window();
  emit(TraceEvent::Kind::Start);

  for (;;) {
    if (c.halted) {
      out.status = RunStatus::Halted;
      out.output = c.reg(1);
      break;
    }
    if (out.successor_steps >= options.budget) {
      out.status = RunStatus::BudgetExhausted;
      break;
    }
    c = step(spec, prog, c);
    ++out.successor_steps;
    ++since_limit;
    emit(TraceEvent::Kind::Step);
    if (!options.accelerate || c.halted) continue;

    window.push_back(c);
    if (window.size() > window_cap) window.pop_front();
    if (--next_check > 0) continue;
    // Check often while the window fills, then every quarter window.
    next_check = window.size() < window_cap ? window.size() : std::max<std::size_t>(16, window_cap / 4);

    const std::vector<Configuration> snapshot(window.begin(), window.end());
    auto cert = detect_cycle(prog, snapshot, options.accel);
    if (!cert) continue;
    LimitCrossing crossing = apply_certificate(spec, prog, *cert, cert->start);
    last_limit = add(now(), crossing.time_increment);
    since_limit = 0;
    c = std::move(crossing.config);
    ++out.limit_jumps;
    emit(TraceEvent::Kind::Limit);
    if (out.limit_jumps >= options.limit_cap) {
      out.status = RunStatus::AcceleratedTo;
      break;
    }
    reset_window();
  }
  out.time = now();
  out.config = std::move(c);
  return out;
}

bool decide(const MachineSpec& spec, const Program& prog, const Ordinal& iota, const RunOptions& options) {
  RunOptions opts = options;
  opts.limit_cap = std::numeric_limits<std::uint64_t>::max();
  const RunOutcome r = run(spec, prog, {iota}, opts);
  if (r.status != RunStatus::Halted) {
    throw UndecidedError("program '" + prog.name + "' did not halt on " + format_ordinal(iota) + " within " +
                         std::to_string(opts.budget) + " steps");
  }
  if (r.output == Ordinal(0)) return false;
  if (r.output == Ordinal(1)) return true;
  throw OutputNotBitError("program '" + prog.name + "' halted with output " + format_ordinal(r.output));
}

}  // namespace itrm
