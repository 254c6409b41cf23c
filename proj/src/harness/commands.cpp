#include <boost/random/mersenne_twister.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "itrm/harness.hpp"
#include "itrm/pairing.hpp"

namespace itrm {

namespace {

using Json = nlohmann::ordered_json;

const Ordinal kOmega = Ordinal::omega();

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Program load_program(const JobConfig& cfg) {
  if (cfg.programs.size() != 1) throw ValidationError("expected exactly one program file");
  return parse_program(read_file(cfg.programs.front()));
}

Ordinal alpha_for(const JobConfig& cfg, const Program* p) {
  if (!cfg.alpha.empty()) return parse_ordinal(cfg.alpha);
  if (p && p->alpha) return *p->alpha;
  return kOmega;
}

void require_budget(const JobConfig& cfg) {
  if (cfg.budget == 0) throw ValidationError("budget must be positive");
}

std::string header(const JobConfig& cfg) {
  return "# " + cfg.command + " config=" + hash_hex(config_hash(cfg)) + " seed=" + std::to_string(cfg.seed) + "\n";
}

Json report_base(const JobConfig& cfg) {
  return Json{{"command", cfg.command}, {"config_hash", hash_hex(config_hash(cfg))}, {"seed", cfg.seed}};
}

void write_report(const JobConfig& cfg, const Json& j) {
  if (cfg.out.empty()) return;
  std::ofstream f(cfg.out);
  if (!f) throw ValidationError("cannot write '" + cfg.out + "'");
  f << j.dump(2) << "\n";
}

std::string registers_text(const Configuration& c) {
  std::string out;
  for (std::size_t i = 0; i < c.registers.size(); ++i) {
    out += ", R" + std::to_string(i + 1) + "=" + format_ordinal(c.registers[i]);
  }
  return out;
}

const char* status_name(RunStatus s) {
  switch (s) {
    case RunStatus::Halted: return "halted";
    case RunStatus::AcceleratedTo: return "accelerated";
    case RunStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const UndecidedError& e) {
    err << "undecided: " << e.what() << "\n";
    return kExitUndecided;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const StaleCertificateError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolationError& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace

std::string canonical_config(const JobConfig& c) {
  std::ostringstream s;
  s << "command=" << c.command << "\nprograms=" << join(c.programs, ",") << "\nargs=" << join(c.args, " ")
    << "\nop=" << c.op << "\nalpha=" << c.alpha << "\neta=" << c.eta << "\niota=" << c.iota << "\nxi=" << c.xi
    << "\ninputs=" << join(c.inputs, ",") << "\noracle=" << c.oracle << "\nbudget=" << c.budget
    << "\nlimit_cap=" << c.limit_cap << "\naccel=" << c.accel << "\ncheck=" << c.check
    << "\nregisters=" << c.registers << "\nmax_lines=" << c.max_lines << "\nsamples=" << c.samples
    << "\nseed=" << c.seed << "\n";
  return s.str();
}

std::uint64_t config_hash(const JobConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_config(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

std::set<Ordinal> parse_ordinal_list(const std::string& text) {
  std::set<Ordinal> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.insert(parse_ordinal(item));
  }
  return out;
}

int cmd_run(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_budget(cfg);
    const Program p = load_program(cfg);
    const MachineSpec spec(alpha_for(cfg, &p), finite_oracle(parse_ordinal_list(cfg.oracle)));
    std::vector<Ordinal> inputs;
    for (const auto& lit : cfg.inputs) inputs.push_back(parse_ordinal(lit));

    RunOptions opts;
    opts.budget = cfg.budget;
    opts.accelerate = cfg.accel;
    if (cfg.limit_cap > 0) opts.limit_cap = cfg.limit_cap;
    std::ofstream trace;
    if (!cfg.trace.empty()) {
      trace.open(cfg.trace);
      if (!trace) throw ValidationError("cannot write '" + cfg.trace + "'");
      opts.trace = [&](const TraceEvent& e) { trace << trace_record(e) << "\n"; };
    }
    const RunOutcome r = run(spec, p, inputs, opts);

    out << header(cfg);
    int code = kExitOk;
    switch (r.status) {
      case RunStatus::Halted:
        out << "halted, time " << format_ordinal(r.time) << ", output " << format_ordinal(r.output) << "\n";
        break;
      case RunStatus::AcceleratedTo:
        out << "accelerated to " << format_ordinal(r.time) << ", line " << r.config.line << registers_text(r.config)
            << "\n";
        break;
      case RunStatus::BudgetExhausted:
        out << "budget exhausted at time " << format_ordinal(r.time) << "\n"
            << "last configuration " << canonical_form(r.config) << "\n";
        code = kExitUndecided;
        break;
    }
    out << "steps " << r.successor_steps << ", limits " << r.limit_jumps << "\n";

    Json j = report_base(cfg);
    j["status"] = status_name(r.status);
    j["time"] = format_ordinal(r.time);
    j["output"] = format_ordinal(r.output);
    j["steps"] = r.successor_steps;
    j["limits"] = r.limit_jumps;
    j["configuration"] = canonical_form(r.config);
    write_report(cfg, j);
    return code;
  });
}

int cmd_iterate(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_budget(cfg);
    OperatorProgram op;
    if (!cfg.op.empty()) {
      if (!cfg.programs.empty()) throw ValidationError("give an operator name or a program, not both");
      const NamedOperator& named = find_operator(cfg.op);
      if (!named.program) throw ValidationError("operator '" + cfg.op + "' has no machine program");
      op = *named.program;
      if (!cfg.alpha.empty() && parse_ordinal(cfg.alpha) != op.alpha) {
        throw ValidationError("operator '" + cfg.op + "' works below " + format_ordinal(op.alpha));
      }
    } else {
      op.program = load_program(cfg);
      op.alpha = alpha_for(cfg, &op.program);
    }
    const Ordinal iota = parse_ordinal(cfg.iota);
    const Ordinal xi = parse_ordinal(cfg.xi);
    const Ordinal eta = cfg.eta.empty() ? additive_closure_above(iota) : parse_ordinal(cfg.eta);
    const Oracle x = finite_oracle(parse_ordinal_list(cfg.oracle));

    IterateOptions opts;
    opts.budget = cfg.budget;
    const bool bit = run_iterate(op, eta, iota, xi, x, opts);
    out << header(cfg) << (bit ? 1 : 0) << "\n";
    Json j = report_base(cfg);
    j["bit"] = bit ? 1 : 0;
    int code = kExitOk;
    if (cfg.check) {
      ReferenceOptions ref;
      ref.run.budget = cfg.budget;
      const bool expect = reference_iterate(op, iota, x, xi, ref);
      if (expect == bit) {
        out << "check: agree\n";
      } else {
        out << "check: disagree, reference says " << (expect ? 1 : 0) << "\n";
        code = kExitDisagreement;
      }
      j["reference"] = expect ? 1 : 0;
      j["agree"] = expect == bit;
    }
    write_report(cfg, j);
    return code;
  });
}

int cmd_census(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_budget(cfg);
    if (cfg.registers == 0 || cfg.max_lines == 0) throw ValidationError("census needs registers and lines >= 1");
    const Ordinal alpha = alpha_for(cfg, nullptr);
    RunOptions opts;
    opts.budget = cfg.budget;
    opts.accelerate = cfg.accel;
    if (cfg.limit_cap > 0) opts.limit_cap = cfg.limit_cap;
    const CensusResult r = census(cfg.registers, cfg.max_lines, alpha, opts);

    std::uint64_t exhausted = 0, accelerated = 0, max_repetition = 0;
    Json programs = Json::array();
    for (const auto& e : r.entries) {
      max_repetition = std::max(max_repetition, e.repetitions.max_count);
      exhausted += e.status == RunStatus::BudgetExhausted;
      accelerated += e.status == RunStatus::AcceleratedTo;
      std::string text;
      for (const auto& ins : e.program.lines) text += (text.empty() ? "" : "; ") + format_instruction(ins);
      programs.push_back(Json{{"index", e.index},
                              {"program", text},
                              {"status", status_name(e.status)},
                              {"time", format_ordinal(e.time)},
                              {"steps", e.steps},
                              {"max_repetition", e.repetitions.max_count}});
    }

    out << header(cfg) << "registers " << cfg.registers << ", lines <= " << cfg.max_lines << ", alpha "
        << format_ordinal(alpha) << ", budget " << cfg.budget << "\n"
        << "programs " << r.entries.size() << "\n"
        << "halted " << r.halted << "\n"
        << "budget exhausted " << exhausted << "\n"
        << "stopped at limit cap " << accelerated << "\n"
        << "halting times\n";
    for (const auto& [time, n] : r.halting_times) out << "  " << format_ordinal(time) << "\t" << n << "\n";
    out << "max repetition among halting programs " << r.max_repetition_halting << "\n"
        << "max repetition over all recorded runs " << max_repetition << "\n";

    Json j = report_base(cfg);
    j["halted"] = r.halted;
    j["max_repetition_halting"] = r.max_repetition_halting;
    Json times = Json::object();
    for (const auto& [time, n] : r.halting_times) times[format_ordinal(time)] = n;
    j["halting_times"] = times;
    j["programs"] = programs;
    write_report(cfg, j);
    return kExitOk;
  });
}

int cmd_pair(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Ordinal alpha = alpha_for(cfg, nullptr);
    Json j = report_base(cfg);
    out << header(cfg);
    if (cfg.args.size() == 2) {
      const Ordinal z = godel_pair(parse_ordinal(cfg.args[0]), parse_ordinal(cfg.args[1]), alpha);
      out << format_ordinal(z) << "\n";
      j["pair"] = format_ordinal(z);
    } else if (cfg.args.size() == 1) {
      auto [a, b] = godel_unpair(parse_ordinal(cfg.args[0]), alpha);
      out << "(" << format_ordinal(a) << ", " << format_ordinal(b) << ")\n";
      j["unpair"] = {format_ordinal(a), format_ordinal(b)};
    } else {
      throw ValidationError("pair takes two ordinals (pair) or one (unpair)");
    }
    write_report(cfg, j);
    return kExitOk;
  });
}

int cmd_ordcalc(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.args.empty()) throw ValidationError("ordcalc needs an expression");
    const std::string value = ordcalc(join(cfg.args, " "));
    out << value << "\n";
    Json j = report_base(cfg);
    j["expression"] = join(cfg.args, " ");
    j["value"] = value;
    write_report(cfg, j);
    return kExitOk;
  });
}

int cmd_suite(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    require_budget(cfg);
    const std::vector<std::string> names{"succ_shift", "pad", "erase", "pair_tag"};
    const Ordinal eta = parse_ordinal("w^2");
    std::vector<Ordinal> indices;
    for (const char* lit : {"0", "1", "2", "3", "4", "w", "w+1", "w+3", "w*2", "w*2+1"}) {
      indices.push_back(parse_ordinal(lit));
    }

    boost::random::mt19937_64 gen(cfg.seed);
    auto uniform = [&](std::uint64_t lo, std::uint64_t hi) {
      return boost::random::uniform_int_distribution<std::uint64_t>(lo, hi)(gen);
    };
    IterateOptions iter;
    iter.budget = cfg.budget;
    ReferenceOptions ref;
    ref.run.budget = cfg.budget;

    out << header(cfg);
    Json j = report_base(cfg);
    Json rows = Json::array();
    std::uint64_t disagreements = 0;
    for (const auto& name : names) {
      const NamedOperator& op = find_operator(name);
      std::uint64_t cases = 0, ones = 0, bad = 0;
      for (const auto& iota : indices) {
        for (std::size_t s = 0; s < cfg.samples; ++s) {
          std::set<Ordinal> members;
          const std::uint64_t size = uniform(0, 8);
          for (std::uint64_t k = 0; k < size; ++k) members.insert(Ordinal(uniform(0, 20)));
          const Oracle x = finite_oracle(members);
          const Ordinal xi = uniform(0, 1) == 0 ? Ordinal(uniform(0, 300))
                                                : godel_pair(Ordinal(uniform(0, 6)), Ordinal(uniform(0, 12)), kOmega);
          const bool engine = run_iterate(*op.program, eta, iota, xi, x, iter);
          const bool reference = reference_iterate(*op.program, iota, x, xi, ref);
          const bool definition = iter_membership_def(op.evaluator, iota, x, xi, op.beta);
          ++cases;
          ones += engine;
          if (engine != reference || engine != definition) {
            ++bad;
            out << "DISAGREE " << name << " iota=" << format_ordinal(iota) << " xi=" << format_ordinal(xi)
                << " engine=" << engine << " reference=" << reference << " definition=" << definition << "\n";
          }
        }
      }
      out << name << ": " << cases << " cases, " << ones << " members, " << bad << " disagreements\n";
      rows.push_back(Json{{"operator", name}, {"cases", cases}, {"members", ones}, {"disagreements", bad}});
      disagreements += bad;
    }
    out << (disagreements == 0 ? "suite: agree\n" : "suite: DISAGREEMENT\n");
    j["operators"] = rows;
    j["disagreements"] = disagreements;
    write_report(cfg, j);
    return disagreements == 0 ? kExitOk : kExitDisagreement;
  });
}

int run_command(const JobConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.command == "run") return cmd_run(cfg, out, err);
  if (cfg.command == "iterate") return cmd_iterate(cfg, out, err);
  if (cfg.command == "census") return cmd_census(cfg, out, err);
  if (cfg.command == "pair") return cmd_pair(cfg, out, err);
  if (cfg.command == "ordcalc") return cmd_ordcalc(cfg, out, err);
  if (cfg.command == "suite") return cmd_suite(cfg, out, err);
  err << "error: unknown command '" << cfg.command << "'\n";
  return kExitConfig;
}

}  // namespace itrm
