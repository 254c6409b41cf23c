#include "doctest.h"
#include "itrm/machine.hpp"
#include "oracles.hpp"

using namespace itrm;
using itrm::testing::OrdinalGen;
using itrm::testing::random_program;

namespace {

Ordinal O(const char* text) { return parse_ordinal(text); }
const Ordinal w = Ordinal::omega();

const char* kSample = R"(# sample
1 INC 1
2 EQGOTO 1 2 5
3 COPY 2 1
4 ORACLE 1
5 HALT
)";

const char* kLoop = "1 INC 1\n2 EQGOTO 2 3 1\n";

// Increments R1 until it equals R2, then halts.
const char* kCounter = "1 EQGOTO 1 2 4\n2 INC 1\n3 EQGOTO 3 3 1\n4 HALT\n";

// Decides whether the finite part of the input is even: counts R2 up to R1
// while toggling R3; at limits R3 falls back to 0 with the finite part.
const char* kParity = R"(.registers 5
1 INC 5
2 EQGOTO 1 2 9
3 INC 2
4 EQGOTO 3 4 7
5 COPY 4 3
6 EQGOTO 4 4 2
7 COPY 5 3
8 EQGOTO 4 4 2
9 EQGOTO 3 4 12
10 COPY 4 1
11 HALT
12 COPY 5 1
13 HALT
)";

Configuration config(std::size_t line, std::vector<Ordinal> regs) {
  Configuration c;
  c.line = line;
  c.registers = std::move(regs);
  return c;
}

}  // namespace

TEST_CASE("parse_program") {
  const Program halt = parse_program("1 HALT");
  REQUIRE(halt.lines.size() == 1);
  CHECK(halt.lines[0] == Instruction{Halt{}});
  CHECK(halt.register_count == 1);

  const Program p = parse_program(kSample);
  REQUIRE(p.size() == 5);
  CHECK(p.at(1) == Instruction{Inc{1}});
  CHECK(p.at(2) == Instruction{JumpEq{1, 2, 5}});
  CHECK(p.at(3) == Instruction{Copy{2, 1}});
  CHECK(p.at(4) == Instruction{OracleQuery{1}});
  CHECK(p.at(5) == Instruction{Halt{}});
  CHECK(p.register_count == 2);

  const Program d = parse_program(".name demo\n.registers 4\n.alpha w^w\n1 HALT  # done\n");
  CHECK(d.name == "demo");
  CHECK(d.register_count == 4);
  CHECK(d.alpha == O("w^w"));
}

TEST_CASE("parse_program errors") {
  CHECK_THROWS_AS(parse_program("0 HALT"), ValidationError);
  CHECK_THROWS_AS(parse_program("2 HALT"), ValidationError);
  CHECK_THROWS_AS(parse_program(""), ValidationError);
  CHECK_THROWS_AS(parse_program("1 EQGOTO 1 1 3\n2 HALT"), ValidationError);
  CHECK_THROWS_AS(parse_program(".registers 1\n1 INC 2"), ValidationError);
  CHECK_THROWS_AS(parse_program("1 INC 0"), ValidationError);
  try {
    parse_program("1 HALT\n2 JUMP 1");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK_THROWS_AS(parse_program("1 INC"), SyntaxError);
  CHECK_THROWS_AS(parse_program("1 INC 1 2"), SyntaxError);
  CHECK_THROWS_AS(parse_program("x HALT"), SyntaxError);
  CHECK_THROWS_AS(parse_program(".alpha w^\n1 HALT"), SyntaxError);
  CHECK_THROWS_AS(parse_program(".bogus 1\n1 HALT"), SyntaxError);
}

TEST_CASE("format and parse round trip on a program corpus") {
  OrdinalGen gen(5);
  for (int i = 0; i < 50; ++i) {
    Program p = random_program(gen, gen.uniform(1, 4), gen.uniform(1, 8));
    if (i % 3 == 0) p.name = "p" + std::to_string(i);
    if (i % 4 == 0) p.alpha = O("w^(w+1)");
    const std::string text = format_program(p);
    CHECK(parse_program(text) == p);
    CHECK(format_program(parse_program(text)) == text);
  }
}

TEST_CASE("MachineSpec requires a limit alpha") {
  CHECK_THROWS_AS(MachineSpec(Ordinal(5)), ValidationError);
  CHECK_THROWS_AS(MachineSpec(O("w + 1")), ValidationError);
  CHECK_THROWS_AS(MachineSpec(Ordinal(0)), ValidationError);
  CHECK_NOTHROW(MachineSpec(O("w^2")));
}

TEST_CASE("step semantics") {
  const MachineSpec spec(w, finite_oracle({Ordinal(2)}));
  const Program inc = parse_program("1 INC 1\n2 HALT");
  CHECK(step(spec, inc, config(1, {Ordinal(0)})) == config(2, {Ordinal(1)}));

  const Program oracle = parse_program("1 ORACLE 1\n2 HALT");
  CHECK(step(spec, oracle, config(1, {Ordinal(2)})) == config(2, {Ordinal(1)}));
  CHECK(step(spec, oracle, config(1, {Ordinal(3)})) == config(2, {Ordinal(0)}));

  const Program jump = parse_program("1 HALT\n2 EQGOTO 1 1 1");
  CHECK(step(spec, jump, config(2, {Ordinal(7)})).line == 1);

  const Program copy = parse_program("1 COPY 2 1\n2 HALT");
  CHECK(step(spec, copy, config(1, {Ordinal(1), Ordinal(9)})) == config(2, {Ordinal(9), Ordinal(9)}));

  Configuration halted = step(spec, jump, config(1, {Ordinal(7)}));
  CHECK(halted.halted);
  CHECK_THROWS_AS(step(spec, jump, halted), InvariantViolationError);

  // Falling off the end continues at line 1.
  CHECK(step(spec, parse_program("1 HALT\n2 INC 1"), config(2, {Ordinal(0)})).line == 1);
}

TEST_CASE("oracle locality: step only consults the queried value") {
  const Program oracle = parse_program("1 ORACLE 2\n2 HALT");
  std::vector<Ordinal> queried;
  const MachineSpec spec(w, [&](const Ordinal& x) {
    queried.push_back(x);
    return true;
  });
  step(spec, oracle, config(1, {Ordinal(4), Ordinal(6)}));
  REQUIRE(queried.size() == 1);
  CHECK(queried[0] == Ordinal(6));
}

TEST_CASE("limit_config") {
  const Program loop = parse_program(kLoop + std::string(".registers 3\n"));
  LimitHistory h;
  h.line = SequenceDescriptor{w, {DigitTrend{Ordinal(0), OscillatingDigit{{Ordinal(1), Ordinal(2)}}}}};
  h.registers = {SequenceDescriptor{w, {DigitTrend{Ordinal(0), IncreasingDigit{w}}}}, constant_sequence(Ordinal(0), w),
                 constant_sequence(Ordinal(0), w)};
  CHECK(limit_config(MachineSpec(w), loop, h) == config(1, {Ordinal(0), Ordinal(0), Ordinal(0)}));
  CHECK(limit_config(MachineSpec(O("w^2")), loop, h) == config(1, {w, Ordinal(0), Ordinal(0)}));

  LimitHistory constant;
  constant.line = constant_sequence(Ordinal(2), w);
  constant.registers = {constant_sequence(Ordinal(5), w), constant_sequence(w, w), constant_sequence(Ordinal(0), w)};
  CHECK(limit_config(MachineSpec(O("w^2")), loop, constant) == config(2, {Ordinal(5), w, Ordinal(0)}));

  LimitHistory bad = constant;
  bad.registers.pop_back();
  CHECK_THROWS_AS(limit_config(MachineSpec(w), loop, bad), MalformedDescriptorError);
  bad = constant;
  bad.line = constant_sequence(Ordinal(7), w);
  CHECK_THROWS_AS(limit_config(MachineSpec(w), loop, bad), MalformedDescriptorError);
}

TEST_CASE("run a halting program") {
  const RunOutcome r = run(MachineSpec(w), parse_program("1 HALT"), {Ordinal(9)});
  CHECK(r.status == RunStatus::Halted);
  CHECK(r.time == Ordinal(1));
  CHECK(r.output == Ordinal(9));
  CHECK(r.successor_steps == 1);
  CHECK(r.limit_jumps == 0);
}

TEST_CASE("run the increment loop through limits") {
  const Program loop = parse_program(kLoop + std::string(".registers 3\n"));
  for (std::uint64_t k = 1; k <= 4; ++k) {
    RunOptions opts;
    opts.limit_cap = k;
    const RunOutcome r = run(MachineSpec(w), loop, {}, opts);
    CHECK(r.status == RunStatus::AcceleratedTo);
    CHECK(r.limit_jumps == k);
    CHECK(r.time == mul(w, Ordinal(k)));
    CHECK(r.config == config(1, {Ordinal(0), Ordinal(0), Ordinal(0)}));
  }
  RunOptions opts;
  opts.limit_cap = 3;
  const RunOutcome big = run(MachineSpec(O("w^2")), loop, {}, opts);
  CHECK(big.time == O("w*3"));
  CHECK(big.config.reg(1) == O("w*3"));

  RunOptions off;
  off.accelerate = false;
  off.budget = 500;
  const RunOutcome plain = run(MachineSpec(w), loop, {}, off);
  CHECK(plain.status == RunStatus::BudgetExhausted);
  CHECK(plain.time == Ordinal(500));
  CHECK(plain.config.reg(1) == Ordinal(250));
}

TEST_CASE("counter halting times") {
  const Program counter = parse_program(kCounter);
  RunOptions plain;
  plain.accelerate = false;
  plain.budget = 10'000;
  for (std::uint64_t xi = 0; xi < 1000; xi += 37) {
    const MachineSpec spec(w);
    // Direct step counting.
    Configuration c = initial_configuration(counter, {Ordinal(0), Ordinal(xi)});
    std::uint64_t steps = 0;
    while (!c.halted) c = step(spec, counter, c), ++steps;
    const RunOutcome r = run(spec, counter, {Ordinal(0), Ordinal(xi)}, plain);
    CHECK(r.status == RunStatus::Halted);
    CHECK(r.time == Ordinal(steps));
    CHECK(steps == 3 * xi + 2);
  }
  // Transfinite parameters: time 3*xi + 2 as an ordinal product.
  for (const std::string lit : {"w", "w + 5", "w*3 + 2", "w*7"}) {
    const Ordinal xi = parse_ordinal(lit);
    const RunOutcome r = run(MachineSpec(O("w^3")), counter, {Ordinal(0), xi});
    CAPTURE(lit);
    REQUIRE(r.status == RunStatus::Halted);
    CHECK(r.time == add(mul(Ordinal(3), xi), Ordinal(2)));
    CHECK(r.output == xi);
  }
}

TEST_CASE("decide") {
  const MachineSpec spec(O("w^w"), finite_oracle({Ordinal(3), w}));
  const Program zero = parse_program("1 COPY 2 1\n2 HALT\n.registers 2");
  const Program pass = parse_program("1 ORACLE 1\n2 HALT");
  OrdinalGen gen(21);
  for (int i = 0; i < 30; ++i) {
    const Ordinal x = gen.ordinal(2, 2, 4);
    CHECK_FALSE(decide(spec, zero, x));
    CHECK(decide(spec, pass, x) == (x == Ordinal(3) || x == w));
  }
  CHECK_THROWS_AS(decide(spec, parse_program("1 HALT"), Ordinal(5)), OutputNotBitError);
  RunOptions small;
  small.budget = 100;
  small.accelerate = false;
  CHECK_THROWS_AS(decide(spec, parse_program(kLoop + std::string(".registers 3\n")), Ordinal(0), small),
                  UndecidedError);
}

TEST_CASE("parity program decides evenness of the finite part") {
  const MachineSpec spec(O("w^w"));
  const Program parity = parse_program(kParity);
  OrdinalGen gen(4);
  for (int i = 0; i < 100; ++i) {
    // Limits are crossed one at a time, so keep the infinite part small.
    const Ordinal iota = add(mul(w, Ordinal(gen.uniform(0, 12))), Ordinal(gen.uniform(0, 40)));
    const bool even = iota.finite_part() % 2 == 0;
    CAPTURE(format_ordinal(iota));
    CHECK(decide(spec, parity, iota) == even);
  }
}

TEST_CASE("runs are deterministic and keep registers below alpha") {
  OrdinalGen gen(31);
  for (int i = 0; i < 60; ++i) {
    const Program p = random_program(gen, gen.uniform(1, 3), gen.uniform(1, 6));
    const Ordinal alpha = i % 2 == 0 ? w : O("w^2");
    const MachineSpec spec(alpha, finite_oracle({Ordinal(0), Ordinal(2), w}));
    std::vector<std::string> first, second;
    bool bounded = true;
    RunOptions opts;
    opts.budget = 3000;
    opts.limit_cap = 5;
    opts.trace = [&](const TraceEvent& e) {
      first.push_back(trace_record(e));
      for (const auto& r : e.config->registers) bounded = bounded && r < alpha;
      bounded = bounded && e.config->line >= 1 && e.config->line <= p.size();
    };
    const RunOutcome a = run(spec, p, {}, opts);
    opts.trace = [&](const TraceEvent& e) { second.push_back(trace_record(e)); };
    const RunOutcome b = run(spec, p, {}, opts);
    CHECK(first == second);
    CHECK(bounded);
    CHECK(a.time == b.time);
    CHECK(a.config == b.config);
  }
}

TEST_CASE("trace records") {
  std::vector<std::string> lines;
  RunOptions opts;
  opts.trace = [&](const TraceEvent& e) { lines.push_back(trace_record(e)); };
  run(MachineSpec(O("w^2")), parse_program("1 INC 1\n2 HALT"), {w}, opts);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == R"({"kind":"start","time":"0","steps":0,"line":1,"halted":false,"registers":["w"]})");
  CHECK(lines[2] == R"({"kind":"step","time":"2","steps":2,"line":2,"halted":true,"registers":["w + 1"]})");
}
