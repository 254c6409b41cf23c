#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "itrm/iteration.hpp"

namespace itrm {

// xi in F^m(x) for finite m, computed directly.
using ClosedForm = std::function<bool(std::uint64_t m, const Ordinal& xi, const Oracle& x)>;

struct NamedOperator {
  std::string name;
  Ordinal beta;  // F maps subsets of beta to subsets of beta
  OperatorEvaluator evaluator;
  std::optional<OperatorProgram> program;
  ClosedForm closed_form;  // empty when there is none
  bool exact = true;       // false for approximations
  bool idempotent = false;
};

// Registry order: succ_shift, pad, erase, pair_tag, bounded_hyperjump.
const std::vector<NamedOperator>& operator_registry();
// ArgumentOutOfRangeError for unknown names.
const NamedOperator& find_operator(const std::string& name);

// The assembly behind each exact operator, all on beta = w.
extern const char* const kSuccShiftSource;
extern const char* const kPadSource;
extern const char* const kEraseSource;
extern const char* const kPairTagSource;

// A binary relation given by pair codes: each edge unpairs (with base
// field_bound) into (a, b) meaning a < b.
struct RelationCode {
  Ordinal field_bound;
  std::set<Ordinal> edges;
};

// DecodeError when an edge is not below field_bound.
std::vector<std::pair<Ordinal, Ordinal>> decode_relation(const RelationCode& rel);

// Strict linear order on its (finite) field, tested by repeatedly removing
// the unique least element.
bool wellorder_check(const RelationCode& rel);

// Fixed bijection between naturals and programs with `registers` registers:
// shorter programs first, then lexicographic with instructions ordered
// INC < COPY < EQGOTO < ORACLE < HALT and operands in increasing order.
Program enumerate_program(const Natural& index, std::size_t registers);
Natural program_index(const Program& program, std::size_t registers);
// Number of programs of exactly `lines` lines.
Natural programs_of_length(std::size_t lines, std::size_t registers);

// Two-register programs used by bounded_hyperjump; the relation of a program
// is the set of pair codes of (a, b), a, b < kHyperjumpField, on which it
// halts with output 1 within the step budget (no acceleration).
inline constexpr std::size_t kHyperjumpRegisters = 2;
inline constexpr std::uint64_t kHyperjumpField = 4;
RelationCode program_relation(const Program& program, const Oracle& x, std::uint64_t step_budget);

// Indices i < enumeration_bound whose relation passes wellorder_check. An
// exploration aid only: it says nothing reliable about the true hyperjump.
std::set<std::uint64_t> bounded_hyperjump(const Oracle& x, std::uint64_t enumeration_bound,
                                          std::uint64_t step_budget);

}  // namespace itrm
