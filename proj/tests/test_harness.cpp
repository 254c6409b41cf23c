#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "doctest.h"
#include "itrm/harness.hpp"
#include "itrm/pairing.hpp"

using namespace itrm;

namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result exec(const JobConfig& cfg) {
  std::ostringstream out, err;
  const int code = run_command(cfg, out, err);
  return {code, out.str(), err.str()};
}

// Report body without the header line.
std::string body(const std::string& report) { return report.substr(report.find('\n') + 1); }

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "itrm_harness_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

JobConfig job(const std::string& command) {
  JobConfig cfg;
  cfg.command = command;
  return cfg;
}

}  // namespace

TEST_CASE("run reports") {
  JobConfig cfg = job("run");
  cfg.programs = {write("halt.itrm", "1 HALT\n")};
  Result r = exec(cfg);
  CHECK(r.code == kExitOk);
  CHECK(body(r.out) == "halted, time 1, output 0\nsteps 1, limits 0\n");
  CHECK(r.out.starts_with("# run config=" + hash_hex(config_hash(cfg)) + " seed=0\n"));

  cfg.programs = {write("loop.itrm", "1 INC 1\n2 EQGOTO 1 1 1\n")};
  cfg.alpha = "w";
  cfg.limit_cap = 1;
  r = exec(cfg);
  CHECK(r.code == kExitOk);
  CHECK(body(r.out).starts_with("accelerated to w, line 1, R1=0\n"));

  cfg.limit_cap = 0;
  cfg.accel = false;
  cfg.budget = 100;
  cfg.out = (scratch() / "run.json").string();
  cfg.trace = (scratch() / "run.trace").string();
  r = exec(cfg);
  CHECK(r.code == kExitUndecided);
  CHECK(body(r.out) == "budget exhausted at time 100\nlast configuration 1|50\nsteps 100, limits 0\n");
  std::ifstream report(cfg.out);
  const auto j = nlohmann::json::parse(report);
  CHECK(j["status"] == "budget_exhausted");
  CHECK(j["seed"] == 0);
  CHECK(j["config_hash"] == hash_hex(config_hash(cfg)));
  std::ifstream trace(cfg.trace);
  std::size_t lines = 0;
  for (std::string line; std::getline(trace, line);) ++lines;
  CHECK(lines == 101);
}

TEST_CASE("config errors exit with 2") {
  JobConfig cfg = job("run");
  cfg.programs = {write("bad.itrm", "1 FROB 1\n")};
  CHECK(exec(cfg).code == kExitConfig);
  cfg.programs = {(scratch() / "missing.itrm").string()};
  CHECK(exec(cfg).code == kExitConfig);
  cfg.programs = {write("halt2.itrm", "1 HALT\n")};
  cfg.alpha = "w+1";
  CHECK(exec(cfg).code == kExitConfig);
  cfg.alpha = "w";
  cfg.budget = 0;
  CHECK(exec(cfg).code == kExitConfig);
  CHECK(exec(job("frobnicate")).code == kExitConfig);

  JobConfig calc = job("ordcalc");
  calc.args = {"w", "+"};
  const Result r = exec(calc);
  CHECK(r.code == kExitConfig);
  CHECK(r.err.find("syntax error") != std::string::npos);
}

TEST_CASE("iterate") {
  JobConfig cfg = job("iterate");
  cfg.op = "succ_shift";
  cfg.iota = "3";
  cfg.xi = "8";
  cfg.oracle = "5";
  cfg.check = true;
  Result r = exec(cfg);
  CHECK(r.code == kExitOk);
  CHECK(body(r.out) == "1\ncheck: agree\n");

  cfg.op = "erase";
  cfg.iota = "1";
  for (const char* xi : {"0", "3", "17"}) {
    cfg.xi = xi;
    r = exec(cfg);
    CHECK(body(r.out) == "0\ncheck: agree\n");
  }

  // A limit index unpairs xi: (2, 7) is in pad^2({7}).
  cfg.op = "pad";
  cfg.iota = "w";
  cfg.eta = "w^2";
  cfg.oracle = "7";
  cfg.xi = format_ordinal(godel_pair(Ordinal(2), Ordinal(7), Ordinal::omega()));
  r = exec(cfg);
  CHECK(r.code == kExitOk);
  CHECK(body(r.out) == "1\ncheck: agree\n");

  // Guards and program files.
  cfg.eta = "w+1";
  CHECK(exec(cfg).code == kExitConfig);
  cfg.eta.clear();
  cfg.op = "bounded_hyperjump";
  CHECK(exec(cfg).code == kExitConfig);
  cfg.op.clear();
  cfg.programs = {write("spin.itrm", ".alpha w\n1 EQGOTO 1 1 1\n")};
  cfg.iota = "1";
  cfg.xi = "0";
  cfg.budget = 500;
  CHECK(exec(cfg).code == kExitUndecided);
}

TEST_CASE("operator programs that need a limit stage are undecided") {
  // On input 0, R2 passes 1 and never meets R1 again before time w. The
  // engine only takes successor steps, so it runs out of transitions.
  JobConfig cfg = job("iterate");
  cfg.programs = {write("limit.itrm", ".registers 2\n.alpha w\n1 INC 2\n2 EQGOTO 2 1 4\n3 EQGOTO 1 1 1\n4 HALT\n")};
  cfg.iota = "1";
  cfg.xi = "0";
  cfg.budget = 2000;
  cfg.check = true;
  CHECK(exec(cfg).code == kExitUndecided);
}

TEST_CASE("pair and ordcalc") {
  JobConfig cfg = job("pair");
  cfg.args = {"1", "2"};
  CHECK(body(exec(cfg).out) == "5\n");
  cfg.args = {"5"};
  CHECK(body(exec(cfg).out) == "(1, 2)\n");
  cfg.args = {"w", "0"};
  CHECK(exec(cfg).code == kExitConfig);
  cfg.alpha = "w^w";
  CHECK(exec(cfg).code == kExitOk);

  CHECK(ordcalc("1 + w") == "w");
  CHECK(ordcalc("(w^2*3 + w*5) + (w*2 + 1)") == "w^2*3 + w*7 + 1");
  CHECK(ordcalc("pair(1,2) @ w") == "5");
  CHECK(ordcalc("unpair(pair(w, 3)) @ w^w") == "(w, 3)");
  CHECK(ordcalc("w*2 cmp 2*w") == ">");
  CHECK(ordcalc("w^w^2") == "w^(w^2)");
  CHECK(ordcalc("(w+1)*(w+1)") == "w^2 + w + 1");
  CHECK(ordcalc("2^w") == "w");
  CHECK(ordcalc("123456789012345678901234567890 + 1") == "123456789012345678901234567891");
  CHECK_THROWS_AS(ordcalc("unpair(5) + 1"), SyntaxError);
  CHECK_THROWS_AS(ordcalc("(w"), SyntaxError);
  CHECK_THROWS_AS(ordcalc("w w"), SyntaxError);
  JobConfig calc = job("ordcalc");
  calc.args = {"1", "+", "w"};
  CHECK(exec(calc).out == "w\n");
}

TEST_CASE("census") {
  JobConfig cfg = job("census");
  cfg.registers = 1;
  cfg.max_lines = 1;
  cfg.budget = 200;
  cfg.out = (scratch() / "census.json").string();
  const Result r = exec(cfg);
  CHECK(r.code == kExitOk);
  CHECK(body(r.out).starts_with("registers 1, lines <= 1, alpha w, budget 200\nprograms 5\nhalted 1\n"));
  std::ifstream report(cfg.out);
  const auto j = nlohmann::json::parse(report);
  REQUIRE(j["programs"].size() == 5);
  CHECK(j["programs"][0]["program"] == "INC 1");
  CHECK(j["programs"][0]["status"] == "budget_exhausted");
  CHECK(j["programs"][4]["program"] == "HALT");
  CHECK(j["programs"][4]["status"] == "halted");
  CHECK(j["programs"][4]["time"] == "1");

  // Same config, same bytes; a different seed changes only the header.
  const Result again = exec(cfg);
  CHECK(again.out == r.out);
  cfg.seed = 9;
  const Result seeded = exec(cfg);
  CHECK(seeded.out != r.out);
  CHECK(body(seeded.out) == body(r.out));
}

TEST_CASE("suite") {
  JobConfig cfg = job("suite");
  cfg.samples = 3;
  cfg.seed = 5;
  const Result r = exec(cfg);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("suite: agree") != std::string::npos);
  CHECK(r.out.find("succ_shift: 30 cases") != std::string::npos);
  CHECK(exec(cfg).out == r.out);
}

TEST_CASE("config hashing") {
  JobConfig a = job("run");
  JobConfig b = a;
  CHECK(config_hash(a) == config_hash(b));
  b.seed = 1;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(hash_hex(0xab) == "00000000000000ab");
  CHECK(parse_ordinal_list(" 0, w+1 ,, 5") == std::set<Ordinal>{Ordinal(0), Ordinal(5), parse_ordinal("w+1")});
}
