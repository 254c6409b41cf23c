#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "itrm/machine.hpp"

namespace itrm {

// A register value inside a certified cycle, as a function of the period
// count k >= 0: either a constant, or (register j at the start of period k) + n.
struct SymbolicValue {
  std::size_t source = 0;  // 0 for a constant
  Ordinal constant;        // used when source == 0
  std::uint64_t offset = 0;

  friend bool operator==(const SymbolicValue&, const SymbolicValue&) = default;
};

struct ConstantBehavior {
  Ordinal value;
  friend bool operator==(const ConstantBehavior&, const ConstantBehavior&) = default;
};
struct IncreasingBehavior {
  Ordinal delta;  // > 0, added once per period
  friend bool operator==(const IncreasingBehavior&, const IncreasingBehavior&) = default;
};
using RegisterBehavior = std::variant<ConstantBehavior, IncreasingBehavior>;

// A run that, from `start` on, repeats the same line sequence forever with
// each register growing by a fixed amount per period.
struct LoopCertificate {
  std::uint64_t start_step = 0;  // index of `start` within the window
  std::size_t period = 0;
  Configuration start;
  std::vector<RegisterBehavior> registers;
  std::vector<std::size_t> line_cycle;  // lines at phases 0..period-1
  // phases[p][i]: register i+1 at phase p of period k.
  std::vector<std::vector<SymbolicValue>> phases;
  // Every oracle query in the cycle reads a value that is the same in every
  // period, so its answer repeats.
  bool oracle_stable = false;
};

// Looks for a cycle ending at the last configuration of `window` (a run of
// consecutive successor steps). Returns a certificate only when the cycle
// provably repeats forever: lines, deltas and jump outcomes are checked for
// every period, not just the ones in the window.
std::optional<LoopCertificate> detect_cycle(const Program& prog, const std::vector<Configuration>& window,
                                            const AcceleratorConfig& config = {});

struct LimitCrossing {
  Ordinal time_increment;  // always w
  Configuration config;
};

// Replays three periods from `c` (which must equal cert.start) and returns the
// configuration at the next limit. StaleCertificateError when the replay
// disagrees with the certificate.
LimitCrossing apply_certificate(const MachineSpec& spec, const Program& prog, const LoopCertificate& cert,
                                const Configuration& c);

struct RepetitionCensus {
  std::map<std::string, std::uint64_t> counts;  // canonical form -> occurrences
  std::uint64_t max_count = 0;
  std::string most_repeated;

  // (configuration, count), count descending, then canonical form ascending.
  std::vector<std::pair<std::string, std::uint64_t>> sorted() const;
  std::string report() const;
};

RepetitionCensus repetition_census(const std::vector<Configuration>& trace);

}  // namespace itrm
