#include <CLI11.hpp>
#include <iostream>

#include "itrm/harness.hpp"

int main(int argc, char** argv) {
  itrm::JobConfig cfg;
  CLI::App app{"Resetting ordinal register machines: runs, operator iteration, censuses"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file mirroring the long flags");

  app.add_option("--alpha", cfg.alpha, "register bound (default: the program's .alpha, else w)");
  app.add_option("--eta", cfg.eta, "iteration bound (default: least additively closed above iota)");
  app.add_option("--iota", cfg.iota, "iteration index");
  app.add_option("--xi", cfg.xi, "argument of the iteration");
  app.add_option("--input", cfg.inputs, "run: register inputs in order")->delimiter(';');
  app.add_option("--oracle", cfg.oracle, "comma separated ordinals in the oracle set");
  app.add_option("--budget", cfg.budget, "successor steps (run, census) or transitions (iterate)");
  app.add_option("--limit-cap", cfg.limit_cap, "stop after this many limits (0: no cap)");
  app.add_option("--accel", cfg.accel, "cross limits with loop certificates (true/false)");
  app.add_flag("--check", cfg.check, "iterate: compare with the reference evaluator");
  app.add_option("--op", cfg.op, "iterate: named operator");
  app.add_option("--registers", cfg.registers, "census: register count");
  app.add_option("--lines", cfg.max_lines, "census: largest program length");
  app.add_option("--samples", cfg.samples, "suite: arguments per operator and index");
  app.add_option("--seed", cfg.seed, "seed for every sampled value");
  app.add_option("--out", cfg.out, "structured JSON report path");
  app.add_option("--trace", cfg.trace, "run: JSON-lines trace path");

  auto* run = app.add_subcommand("run", "run a program");
  run->add_option("program", cfg.programs, "assembly file")->required();
  auto* iterate = app.add_subcommand("iterate", "decide xi in F^iota(x)");
  iterate->add_option("program", cfg.programs, "operator program file (or --op)");
  app.add_subcommand("census", "run every small program");
  auto* pair = app.add_subcommand("pair", "pair two ordinals or unpair one");
  pair->add_option("ordinals", cfg.args, "one or two ordinal literals")->required();
  auto* ordcalc = app.add_subcommand("ordcalc", "evaluate an ordinal expression");
  ordcalc->add_option("expression", cfg.args, "e.g. \"(w^2*3 + w*5) + (w*2 + 1)\"")->required();
  app.add_subcommand("suite", "differential check of the iteration engine");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : itrm::kExitConfig;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return itrm::run_command(cfg, std::cout, std::cerr);
}
