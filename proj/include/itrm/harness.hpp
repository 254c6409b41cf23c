#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "itrm/accelerator.hpp"
#include "itrm/operators.hpp"

namespace itrm {

// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUndecided = 3;
inline constexpr int kExitDisagreement = 4;

// Everything a command needs. Ordinals stay as literals until the command
// runs so that the config hash covers exactly what the user wrote.
struct JobConfig {
  std::string command;
  std::vector<std::string> programs;  // paths (run, iterate)
  std::vector<std::string> args;      // positional operands (pair, ordcalc)
  std::string op;                     // named operator (iterate)
  std::string alpha;                  // empty: the program's .alpha, else w
  std::string eta;                    // empty: least additively closed above iota
  std::string iota = "0";
  std::string xi = "0";
  std::vector<std::string> inputs;  // run: registers 1..k
  std::string oracle;               // comma separated literals; empty set by default
  std::uint64_t budget = 1'000'000;
  std::uint64_t limit_cap = 0;  // 0: no cap
  bool accel = true;
  bool check = false;
  std::size_t registers = 2;  // census
  std::size_t max_lines = 3;  // census
  std::size_t samples = 100;  // suite: arguments per (operator, index)
  std::string out;            // structured (JSON) report path
  std::string trace;          // run: JSON-lines trace path
  std::uint64_t seed = 0;
};

// FNV-1a over a fixed key=value rendering of the config.
std::string canonical_config(const JobConfig& cfg);
std::uint64_t config_hash(const JobConfig& cfg);
std::string hash_hex(std::uint64_t h);

// Literal list like "0, 5, w+1"; whitespace and empty items are ignored.
std::set<Ordinal> parse_ordinal_list(const std::string& text);

// Expression calculator: + * ^ with parentheses, pair(a, b), unpair(z),
// `a cmp b` (prints <, = or >) and an optional trailing `@ alpha` that sets
// the pairing base (w by default).
std::string ordcalc(const std::string& expression);

struct CensusEntry {
  std::uint64_t index;
  Program program;
  RunStatus status;
  Ordinal time;
  std::uint64_t steps;
  RepetitionCensus repetitions;  // over the recorded configurations
};

struct CensusResult {
  std::vector<CensusEntry> entries;  // in enumeration order
  std::map<Ordinal, std::uint64_t> halting_times;
  std::uint64_t halted = 0;
  std::uint64_t max_repetition_halting = 0;
};

// Every program with `registers` registers and 1..max_lines lines, run from
// all-zero registers with the empty oracle.
CensusResult census(std::size_t registers, std::size_t max_lines, const Ordinal& alpha, const RunOptions& options);

// Each command prints its human-readable report to `out`, writes the
// structured report to cfg.out when set, and returns an exit code. Errors are
// mapped to exit codes, with the message on `err`.
int cmd_run(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_iterate(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_census(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_pair(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_ordcalc(const JobConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_suite(const JobConfig& cfg, std::ostream& out, std::ostream& err);
// Dispatch on cfg.command.
int run_command(const JobConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace itrm
