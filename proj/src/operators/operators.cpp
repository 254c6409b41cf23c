#include "itrm/operators.hpp"

#include <algorithm>
#include <limits>

#include "itrm/pairing.hpp"

namespace itrm {

const char* const kSuccShiftSource = R"(.name succ_shift
.registers 4
.alpha w
# F(x) = {0} u {z+1 : z in x}
1 EQGOTO 1 4 10
# R2 <- R1 - 1, counting R3 up to R1
2 INC 3
3 EQGOTO 3 1 7
4 INC 2
5 INC 3
6 EQGOTO 4 4 3
7 COPY 2 1
8 ORACLE 1
9 HALT
10 INC 4
11 COPY 4 1
12 HALT
)";

const char* const kPadSource = R"(.name pad
.registers 2
.alpha w
1 EQGOTO 1 2 4
2 ORACLE 1
3 HALT
4 INC 1
5 HALT
)";

const char* const kEraseSource = R"(.name erase
.registers 2
.alpha w
1 COPY 2 1
2 HALT
)";

// On w the pair (0, z) is z*z, so the program looks for z with z*z = R1 by
// walking s = 0, 1, 2, ... while z steps up at the end of each block of
// 2z+1 values.
// R2 = z, R3 = s, R4 = position inside the block, R5 = block length, R6 = 0.
const char* const kPairTagSource = R"(.name pair_tag
.registers 6
.alpha w
1 INC 5
2 EQGOTO 3 1 12
3 INC 3
4 INC 4
5 EQGOTO 4 5 7
6 EQGOTO 6 6 2
# next block
7 INC 2
8 COPY 6 4
9 INC 5
10 INC 5
11 EQGOTO 6 6 2
# s = R1: a square exactly at the start of a block
12 EQGOTO 4 6 15
13 COPY 6 1
14 HALT
15 COPY 2 1
16 ORACLE 1
17 HALT
)";

namespace {

const Ordinal kOmega = Ordinal::omega();

OperatorProgram load(const char* source) { return OperatorProgram{parse_program(source), kOmega}; }

std::optional<std::uint64_t> small(const Ordinal& v) {
  auto n = v.finite_value();
  if (!n || *n > std::numeric_limits<std::uint64_t>::max()) return std::nullopt;
  return static_cast<std::uint64_t>(*n);
}

NamedOperator succ_shift() {
  NamedOperator op{"succ_shift", kOmega, {}, load(kSuccShiftSource), {}, true, false};
  op.evaluator = [](const Ordinal& xi, const Oracle& x) { return xi.is_zero() || x(predecessor(xi)); };
  op.closed_form = [](std::uint64_t m, const Ordinal& xi, const Oracle& x) {
    if (xi < Ordinal(m)) return true;
    auto n = small(xi);
    if (!n) return x(xi);  // an infinite xi absorbs the shift on the left
    return x(Ordinal(*n - m));
  };
  return op;
}

NamedOperator pad() {
  NamedOperator op{"pad", kOmega, {}, load(kPadSource), {}, true, true};
  op.evaluator = [](const Ordinal& xi, const Oracle& x) { return xi.is_zero() || x(xi); };
  op.closed_form = [](std::uint64_t m, const Ordinal& xi, const Oracle& x) {
    return (m > 0 && xi.is_zero()) || x(xi);
  };
  return op;
}

NamedOperator erase() {
  NamedOperator op{"erase", kOmega, {}, load(kEraseSource), {}, true, false};
  op.evaluator = [](const Ordinal&, const Oracle&) { return false; };
  op.closed_form = [](std::uint64_t m, const Ordinal& xi, const Oracle& x) { return m == 0 && x(xi); };
  return op;
}

NamedOperator pair_tag() {
  NamedOperator op{"pair_tag", kOmega, {}, load(kPairTagSource), {}, true, false};
  op.evaluator = [](const Ordinal& xi, const Oracle& x) {
    auto [a, b] = godel_unpair(xi, kOmega);
    return a.is_zero() && x(b);
  };
  op.closed_form = [](std::uint64_t m, const Ordinal& xi, const Oracle& x) {
    Ordinal v = xi;
    for (std::uint64_t i = 0; i < m; ++i) {
      auto [a, b] = godel_unpair(v, kOmega);
      if (!a.is_zero()) return false;
      v = b;
    }
    return x(v);
  };
  return op;
}

NamedOperator hyperjump() {
  constexpr std::uint64_t kBound = 64;
  constexpr std::uint64_t kSteps = 200;
  NamedOperator op{"bounded_hyperjump", kOmega, {}, std::nullopt, {}, false, false};
  op.evaluator = [](const Ordinal& xi, const Oracle& x) {
    auto n = small(xi);
    return n && *n < kBound && bounded_hyperjump(x, kBound, kSteps).contains(*n);
  };
  return op;
}

}  // namespace

const std::vector<NamedOperator>& operator_registry() {
  static const std::vector<NamedOperator> registry{succ_shift(), pad(), erase(), pair_tag(), hyperjump()};
  return registry;
}

const NamedOperator& find_operator(const std::string& name) {
  for (const auto& op : operator_registry()) {
    if (op.name == name) return op;
  }
  throw ArgumentOutOfRangeError("unknown operator '" + name + "'");
}

std::vector<std::pair<Ordinal, Ordinal>> decode_relation(const RelationCode& rel) {
  std::vector<std::pair<Ordinal, Ordinal>> out;
  for (const auto& e : rel.edges) {
    if (e >= rel.field_bound) {
      throw DecodeError("edge code " + format_ordinal(e) + " is not below " + format_ordinal(rel.field_bound));
    }
    try {
      out.push_back(godel_unpair(e, rel.field_bound));
    } catch (const BaseNotClosedError& err) {
      throw DecodeError(err.what());
    }
  }
  return out;
}

bool wellorder_check(const RelationCode& rel) {
  const auto pairs = decode_relation(rel);
  std::set<Ordinal> field;
  for (const auto& [a, b] : pairs) {
    if (a == b) return false;
    field.insert(a);
    field.insert(b);
  }
  const std::set<std::pair<Ordinal, Ordinal>> less(pairs.begin(), pairs.end());
  while (!field.empty()) {
    std::optional<Ordinal> least;
    for (const auto& a : field) {
      const bool minimal = std::none_of(field.begin(), field.end(), [&](const Ordinal& b) { return less.contains({b, a}); });
      if (!minimal) continue;
      if (least) return false;  // two minimal elements: not linear
      least = a;
    }
    if (!least) return false;  // every element has a predecessor: a cycle
    field.erase(*least);
    for (const auto& b : field) {
      if (!less.contains({*least, b})) return false;
    }
  }
  return true;
}

namespace {

Natural alphabet_size(std::size_t lines, std::size_t k) {
  const Natural kk = Natural(k) * k;
  return Natural(2 * k) + kk + kk * lines + 1;
}

Instruction instruction_at(Natural idx, std::size_t lines, std::size_t k) {
  const Natural kk = Natural(k) * k;
  auto to = [](const Natural& v) { return static_cast<std::size_t>(v); };
  if (idx < k) return Inc{to(idx) + 1};
  idx -= k;
  if (idx < kk) return Copy{to(idx / k) + 1, to(idx % k) + 1};
  idx -= kk;
  if (idx < kk * lines) {
    const std::size_t i = to(idx);
    return JumpEq{i / (k * lines) + 1, (i / lines) % k + 1, i % lines + 1};
  }
  idx -= kk * lines;
  if (idx < k) return OracleQuery{to(idx) + 1};
  return Halt{};
}

Natural instruction_index(const Instruction& ins, std::size_t lines, std::size_t k) {
  const Natural kk = Natural(k) * k;
  return std::visit(
      [&](const auto& i) -> Natural {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, Inc>) {
          return Natural(i.reg - 1);
        } else if constexpr (std::is_same_v<T, Copy>) {
          return Natural(k) + (i.src - 1) * k + (i.dst - 1);
        } else if constexpr (std::is_same_v<T, JumpEq>) {
          return Natural(k) + kk + ((i.lhs - 1) * k + (i.rhs - 1)) * lines + (i.target - 1);
        } else if constexpr (std::is_same_v<T, OracleQuery>) {
          return Natural(k) + kk + kk * lines + (i.reg - 1);
        } else {
          return Natural(2 * k) + kk + kk * lines;
        }
      },
      ins);
}

}  // namespace

Natural programs_of_length(std::size_t lines, std::size_t registers) {
  if (registers == 0) throw ArgumentOutOfRangeError("programs need at least one register");
  if (lines == 0) return 0;
  return boost::multiprecision::pow(alphabet_size(lines, registers), static_cast<unsigned>(lines));
}

Program enumerate_program(const Natural& index, std::size_t registers) {
  if (index < 0) throw ArgumentOutOfRangeError("program indices are natural numbers");
  Natural rest = index;
  std::size_t lines = 1;
  for (;; ++lines) {
    const Natural n = programs_of_length(lines, registers);
    if (rest < n) break;
    rest -= n;
  }
  const Natural base = alphabet_size(lines, registers);
  Program p;
  p.register_count = registers;
  p.lines.resize(lines);
  for (std::size_t l = lines; l-- > 0;) {
    p.lines[l] = instruction_at(rest % base, lines, registers);
    rest /= base;
  }
  return p;
}

Natural program_index(const Program& program, std::size_t registers) {
  const std::size_t lines = program.size();
  if (lines == 0) throw ArgumentOutOfRangeError("the empty program has no index");
  validate(program);
  if (program.register_count > registers) throw ArgumentOutOfRangeError("program uses too many registers");
  Natural index = 0;
  for (std::size_t l = 1; l < lines; ++l) index += programs_of_length(l, registers);
  const Natural base = alphabet_size(lines, registers);
  Natural digits = 0;
  for (const auto& ins : program.lines) digits = digits * base + instruction_index(ins, lines, registers);
  return index + digits;
}

RelationCode program_relation(const Program& program, const Oracle& x, std::uint64_t step_budget) {
  RelationCode rel{kOmega, {}};
  const MachineSpec spec(kOmega, x);
  RunOptions opts;
  opts.budget = step_budget;
  opts.accelerate = false;
  for (std::uint64_t a = 0; a < kHyperjumpField; ++a) {
    for (std::uint64_t b = 0; b < kHyperjumpField; ++b) {
      const Ordinal code = godel_pair(Ordinal(a), Ordinal(b), kOmega);
      try {
        if (decide(spec, program, code, opts)) rel.edges.insert(code);
      } catch (const UndecidedError&) {
      } catch (const OutputNotBitError&) {
      }
    }
  }
  return rel;
}

std::set<std::uint64_t> bounded_hyperjump(const Oracle& x, std::uint64_t enumeration_bound, std::uint64_t step_budget) {
  std::set<std::uint64_t> out;
  for (std::uint64_t i = 0; i < enumeration_bound; ++i) {
    const Program p = enumerate_program(Natural(i), kHyperjumpRegisters);
    if (wellorder_check(program_relation(p, x, step_budget))) out.insert(i);
  }
  return out;
}

}  // namespace itrm
