#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "itrm/digits.hpp"
#include "itrm/program.hpp"

namespace itrm {

// Membership predicate; must be safe to call concurrently.
using Oracle = std::function<bool(const Ordinal&)>;

Oracle empty_oracle();
Oracle finite_oracle(std::set<Ordinal> members);

class MachineSpec {
 public:
  // Registers hold ordinals below alpha; alpha must be a limit >= w
  // (ValidationError otherwise).
  explicit MachineSpec(Ordinal alpha, Oracle oracle = empty_oracle());

  const Ordinal& alpha() const { return alpha_; }
  bool query(const Ordinal& x) const { return oracle_(x); }
  const Oracle& oracle() const { return oracle_; }

 private:
  Ordinal alpha_;
  Oracle oracle_;
};

struct Configuration {
  std::size_t line = 1;
  bool halted = false;
  std::vector<Ordinal> registers;

  const Ordinal& reg(std::size_t i) const { return registers.at(i - 1); }
  Ordinal& reg(std::size_t i) { return registers.at(i - 1); }

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

// Canonical text form, e.g. "3|w+1,0" or "H|5".
std::string canonical_form(const Configuration& c);

// Inputs go to registers 1..k, the rest start at 0 (ValidationError when
// there are more inputs than registers).
Configuration initial_configuration(const Program& prog, const std::vector<Ordinal>& inputs);

Configuration step(const MachineSpec& spec, const Program& prog, const Configuration& c);

// Eventual behavior of each register and of the line along a limit. Register
// descriptors use base w; the line descriptor describes a natural (position 0).
struct LimitHistory {
  SequenceDescriptor line;
  std::vector<SequenceDescriptor> registers;
};

// liminf of every component; a register whose liminf reaches alpha is reset to 0.
Configuration limit_config(const MachineSpec& spec, const Program& prog, const LimitHistory& h);

struct TraceEvent {
  enum class Kind { Start, Step, Limit };
  Kind kind;
  Ordinal time;  // time of the configuration below
  std::uint64_t successor_steps;
  const Configuration* config;
};
using TraceSink = std::function<void(const TraceEvent&)>;

// JSON object (one line) for a trace event.
std::string trace_record(const TraceEvent& e);

struct AcceleratorConfig {
  std::size_t window = 10000;
  std::size_t max_period = 1000;
};

struct RunOptions {
  std::uint64_t budget = 1'000'000;  // successor steps
  bool accelerate = true;
  // Stop with AcceleratedTo once this many limits have been crossed.
  std::uint64_t limit_cap = std::numeric_limits<std::uint64_t>::max();
  AcceleratorConfig accel;
  TraceSink trace;
};

enum class RunStatus { Halted, BudgetExhausted, AcceleratedTo };

struct RunOutcome {
  RunStatus status = RunStatus::BudgetExhausted;
  Ordinal output;  // register 1 when halted
  // Halting time, the reached limit time, or the time of `config` when the
  // budget ran out. Exact, since limits are only crossed with a certificate.
  Ordinal time;
  Configuration config;
  std::uint64_t successor_steps = 0;
  std::uint64_t limit_jumps = 0;
};

RunOutcome run(const MachineSpec& spec, const Program& prog, const std::vector<Ordinal>& inputs,
               const RunOptions& options = {});

// Runs with iota in register 1. UndecidedError when the run does not halt
// within the options, OutputNotBitError when register 1 ends outside {0, 1}.
bool decide(const MachineSpec& spec, const Program& prog, const Ordinal& iota, const RunOptions& options = {});

}  // namespace itrm
