#include "itrm/harness.hpp"

namespace itrm {

CensusResult census(std::size_t registers, std::size_t max_lines, const Ordinal& alpha, const RunOptions& options) {
  const MachineSpec spec(alpha);
  CensusResult result;
  Natural total = 0;
  for (std::size_t l = 1; l <= max_lines; ++l) total += programs_of_length(l, registers);
  const auto count = static_cast<std::uint64_t>(total);

  for (std::uint64_t i = 0; i < count; ++i) {
    Program p = enumerate_program(Natural(i), registers);
    std::vector<Configuration> seen;
    RunOptions opts = options;
    opts.trace = [&](const TraceEvent& e) { seen.push_back(*e.config); };
    const RunOutcome out = run(spec, p, {}, opts);
    CensusEntry entry{i, std::move(p), out.status, out.time, out.successor_steps, repetition_census(seen)};
    if (out.status == RunStatus::Halted) {
      ++result.halted;
      ++result.halting_times[out.time];
      result.max_repetition_halting = std::max(result.max_repetition_halting, entry.repetitions.max_count);
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

}  // namespace itrm
