#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "itrm/ordinal.hpp"

namespace itrm {

// Register indices and line numbers are 1-based throughout.
struct Inc {
  std::size_t reg;
  friend bool operator==(const Inc&, const Inc&) = default;
};
struct Copy {
  std::size_t src;
  std::size_t dst;
  friend bool operator==(const Copy&, const Copy&) = default;
};
struct JumpEq {
  std::size_t lhs;
  std::size_t rhs;
  std::size_t target;
  friend bool operator==(const JumpEq&, const JumpEq&) = default;
};
struct OracleQuery {
  std::size_t reg;
  friend bool operator==(const OracleQuery&, const OracleQuery&) = default;
};
struct Halt {
  friend bool operator==(const Halt&, const Halt&) = default;
};

using Instruction = std::variant<Inc, Copy, JumpEq, OracleQuery, Halt>;

struct Program {
  std::string name;
  std::size_t register_count = 1;
  std::vector<Instruction> lines;
  std::optional<Ordinal> alpha;  // from an `.alpha` directive, if any

  std::size_t size() const { return lines.size(); }
  const Instruction& at(std::size_t line) const { return lines.at(line - 1); }

  friend bool operator==(const Program&, const Program&) = default;
};

// Checks line count, register indices and jump targets (ValidationError).
void validate(const Program& p);

// Assembly, one instruction per line with explicit consecutive numbers:
//   .name counter
//   .registers 2
//   .alpha w^2
//   1 INC 1
//   2 EQGOTO 1 2 5
//   3 COPY 2 1        # COPY src dst
//   4 ORACLE 1
//   5 HALT
// Without `.registers` the count is the largest index used (at least 1).
Program parse_program(std::string_view text);
std::string format_program(const Program& p);
std::string format_instruction(const Instruction& ins);

}  // namespace itrm
