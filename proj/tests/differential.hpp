#pragma once

// Shared drivers for the iteration cross-checks.

#include <set>
#include <string>
#include <vector>

#include "itrm/operators.hpp"
#include "itrm/pairing.hpp"
#include "oracles.hpp"

namespace itrm::testing {

inline std::vector<Ordinal> differential_indices() {
  const Ordinal w = Ordinal::omega();
  return {Ordinal(0), Ordinal(1), Ordinal(2), Ordinal(3), Ordinal(4), w, add(w, Ordinal(1)), add(w, Ordinal(3)),
          mul(w, Ordinal(2)), add(mul(w, Ordinal(2)), Ordinal(1))};
}

inline std::set<Ordinal> random_finite_set(OrdinalGen& gen, std::uint64_t bound, std::size_t size) {
  std::set<Ordinal> out;
  for (std::size_t i = 0; i < size; ++i) out.insert(Ordinal(gen.uniform(0, bound)));
  return out;
}

// Arguments below w: half of them pairs (level, value) with small levels so
// that limit stages recurse into nontrivial finite levels.
inline Ordinal random_argument(OrdinalGen& gen) {
  const Ordinal w = Ordinal::omega();
  switch (gen.uniform(0, 3)) {
    case 0: return Ordinal(gen.uniform(0, 12));
    case 1: return Ordinal(gen.uniform(0, 300));
    default: return godel_pair(Ordinal(gen.uniform(0, 6)), Ordinal(gen.uniform(0, 12)), w);
  }
}

struct DifferentialReport {
  std::size_t cases = 0;
  std::size_t ones = 0;
  std::vector<std::string> disagreements;
};

// run_iterate against reference_iterate and iter_membership_def, with eta
// = w^2 covering every index below w*2+2.
inline DifferentialReport differential_grid(const std::vector<std::string>& operators, std::size_t per_index,
                                            std::uint64_t seed) {
  const Ordinal eta = parse_ordinal("w^2");
  OrdinalGen gen(seed);
  DifferentialReport report;
  for (const auto& name : operators) {
    const NamedOperator& op = find_operator(name);
    for (const Ordinal& iota : differential_indices()) {
      for (std::size_t s = 0; s < per_index; ++s) {
        const Oracle x = finite_oracle(random_finite_set(gen, 20, gen.uniform(0, 8)));
        const Ordinal xi = random_argument(gen);
        const bool engine = run_iterate(*op.program, eta, iota, xi, x);
        const bool reference = reference_iterate(*op.program, iota, x, xi);
        const bool definition = iter_membership_def(op.evaluator, iota, x, xi, op.beta);
        ++report.cases;
        report.ones += engine;
        if (engine != reference || engine != definition) {
          report.disagreements.push_back(name + " iota=" + format_ordinal(iota) + " xi=" + format_ordinal(xi) +
                                         " engine=" + std::to_string(engine) + " reference=" +
                                         std::to_string(reference) + " definition=" + std::to_string(definition));
        }
      }
    }
  }
  return report;
}

// The level-1 frame of every engine state whose active level is 1, as
// machine configurations.
inline std::vector<Configuration> projected_level_one_trace(const OperatorProgram& op, const Ordinal& xi,
                                                            const Oracle& x, bool& output) {
  std::vector<Configuration> out;
  auto record = [&](const EncodedState& s) {
    const LevelStack stack = decode_state(s);
    const LevelFrame& top = stack.frames.back();
    if (top.level != Ordinal(1)) return;
    out.push_back(Configuration{top.line, false, top.registers});
  };
  record(initial_state(op, Ordinal::omega(), Ordinal(1), xi));
  IterateOptions opts;
  opts.budget = 200'000;
  opts.observer = record;
  output = run_iterate(op, Ordinal::omega(), Ordinal(1), xi, x, opts);
  return out;
}

}  // namespace itrm::testing
