#include "itrm/program.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace itrm {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> split(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    out.push_back(Token{line.substr(start, i - start), start + 1});
  }
  return out;
}

std::size_t parse_index(const Token& t, std::size_t line_no) {
  std::size_t value = 0;
  const auto* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw SyntaxError("expected a number, got '" + std::string(t.text) + "'", line_no, t.column);
  }
  return value;
}

std::size_t max_register(const Instruction& ins) {
  return std::visit(
      [](const auto& i) -> std::size_t {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, Inc> || std::is_same_v<T, OracleQuery>) return i.reg;
        else if constexpr (std::is_same_v<T, Copy>) return std::max(i.src, i.dst);
        else if constexpr (std::is_same_v<T, JumpEq>) return std::max(i.lhs, i.rhs);
        else return 0;
      },
      ins);
}

}  // namespace

void validate(const Program& p) {
  if (p.lines.empty()) throw ValidationError("program '" + p.name + "' has no lines");
  if (p.register_count == 0) throw ValidationError("program '" + p.name + "' declares no registers");
  auto check_reg = [&](std::size_t r, std::size_t line) {
    if (r < 1 || r > p.register_count) {
      throw ValidationError("line " + std::to_string(line) + ": register " + std::to_string(r) +
                            " outside 1.." + std::to_string(p.register_count));
    }
  };
  for (std::size_t line = 1; line <= p.lines.size(); ++line) {
    std::visit(
        [&](const auto& i) {
          using T = std::decay_t<decltype(i)>;
          if constexpr (std::is_same_v<T, Inc> || std::is_same_v<T, OracleQuery>) {
            check_reg(i.reg, line);
          } else if constexpr (std::is_same_v<T, Copy>) {
            check_reg(i.src, line);
            check_reg(i.dst, line);
          } else if constexpr (std::is_same_v<T, JumpEq>) {
            check_reg(i.lhs, line);
            check_reg(i.rhs, line);
            if (i.target < 1 || i.target > p.lines.size()) {
              throw ValidationError("line " + std::to_string(line) + ": jump target " +
                                    std::to_string(i.target) + " outside 1.." +
                                    std::to_string(p.lines.size()));
            }
          }
        },
        p.lines[line - 1]);
  }
}

Program parse_program(std::string_view text) {
  Program p;
  std::optional<std::size_t> declared_registers;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::vector<Token> tokens = split(line);
    if (tokens.empty()) continue;

    const Token& head = tokens[0];
    if (head.text.starts_with('.')) {
      if (tokens.size() < 2) throw SyntaxError("directive without a value", line_no, head.column);
      const std::size_t value_col = tokens[1].column;
      std::string_view rest = line.substr(value_col - 1);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t' || rest.back() == '\r')) {
        rest.remove_suffix(1);
      }
      if (head.text == ".registers") {
        if (tokens.size() != 2) throw SyntaxError("trailing tokens", line_no, tokens[2].column);
        declared_registers = parse_index(tokens[1], line_no);
      } else if (head.text == ".alpha") {
        try {
          p.alpha = parse_ordinal(rest);
        } catch (const SyntaxError& e) {
          throw SyntaxError("bad .alpha literal", line_no, value_col + e.column() - 1);
        }
      } else if (head.text == ".name") {
        p.name = std::string(rest);
      } else {
        throw SyntaxError("unknown directive '" + std::string(head.text) + "'", line_no, head.column);
      }
      continue;
    }

    const std::size_t number = parse_index(head, line_no);
    if (number != p.lines.size() + 1) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected instruction number " +
                            std::to_string(p.lines.size() + 1) + ", got " + std::to_string(number));
    }
    if (tokens.size() < 2) throw SyntaxError("missing opcode", line_no, head.column + head.text.size());
    const Token& op = tokens[1];
    auto want = [&](std::size_t n) {
      if (tokens.size() < 2 + n) {
        const Token& last = tokens.back();
        throw SyntaxError("missing operand for " + std::string(op.text), line_no,
                          last.column + last.text.size());
      }
      if (tokens.size() > 2 + n) throw SyntaxError("trailing tokens", line_no, tokens[2 + n].column);
    };
    auto arg = [&](std::size_t k) { return parse_index(tokens[2 + k], line_no); };

    if (op.text == "INC") {
      want(1);
      p.lines.emplace_back(Inc{arg(0)});
    } else if (op.text == "COPY") {
      want(2);
      p.lines.emplace_back(Copy{arg(0), arg(1)});
    } else if (op.text == "EQGOTO") {
      want(3);
      p.lines.emplace_back(JumpEq{arg(0), arg(1), arg(2)});
    } else if (op.text == "ORACLE") {
      want(1);
      p.lines.emplace_back(OracleQuery{arg(0)});
    } else if (op.text == "HALT") {
      want(0);
      p.lines.emplace_back(Halt{});
    } else {
      throw SyntaxError("unknown opcode '" + std::string(op.text) + "'", line_no, op.column);
    }
  }

  std::size_t used = 1;
  for (const auto& ins : p.lines) used = std::max(used, max_register(ins));
  p.register_count = declared_registers.value_or(used);
  validate(p);
  return p;
}

std::string format_instruction(const Instruction& ins) {
  return std::visit(
      [](const auto& i) -> std::string {
        using T = std::decay_t<decltype(i)>;
        if constexpr (std::is_same_v<T, Inc>) return "INC " + std::to_string(i.reg);
        else if constexpr (std::is_same_v<T, Copy>)
          return "COPY " + std::to_string(i.src) + " " + std::to_string(i.dst);
        else if constexpr (std::is_same_v<T, JumpEq>)
          return "EQGOTO " + std::to_string(i.lhs) + " " + std::to_string(i.rhs) + " " +
                 std::to_string(i.target);
        else if constexpr (std::is_same_v<T, OracleQuery>) return "ORACLE " + std::to_string(i.reg);
        else return "HALT";
      },
      ins);
}

std::string format_program(const Program& p) {
  std::ostringstream out;
  if (!p.name.empty()) out << ".name " << p.name << "\n";
  out << ".registers " << p.register_count << "\n";
  if (p.alpha) out << ".alpha " << format_ordinal(*p.alpha) << "\n";
  for (std::size_t i = 0; i < p.lines.size(); ++i) {
    out << (i + 1) << " " << format_instruction(p.lines[i]) << "\n";
  }
  return out.str();
}

}  // namespace itrm
