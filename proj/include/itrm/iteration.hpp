#pragma once

#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "itrm/machine.hpp"

namespace itrm {

// A program deciding membership in F(x) on register 1, with the oracle x
// queried through `ORACLE 1` only. `alpha` bounds its registers.
struct OperatorProgram {
  Program program;
  Ordinal alpha;
};

// Membership test for F(x): (candidate, oracle for x) -> bit.
using OperatorEvaluator = std::function<bool(const Ordinal&, const Oracle&)>;

// One pending evaluation "is R1 in F^level(x)", with the configuration of
// the program evaluating it. Successor levels run the operator program; level
// 0 and limit levels run the two-line program `ORACLE 1; HALT`, whose oracle
// is x at level 0 and the pairing clause at limits.
struct LevelFrame {
  Ordinal level;
  std::size_t line = 1;
  std::vector<Ordinal> registers;

  friend bool operator==(const LevelFrame&, const LevelFrame&) = default;
};

// Outermost frame first; levels strictly decrease; the last frame is active.
struct LevelStack {
  std::vector<LevelFrame> frames;

  friend bool operator==(const LevelStack&, const LevelStack&) = default;
};

// The whole stack packed into one ordinal per register: a frame at level l
// contributes alpha^(l*2) * value to each register and alpha^(l*2) * line to
// the line register.
struct EncodedState {
  Ordinal line_register;
  std::vector<Ordinal> work_registers;
  Ordinal alpha;
  Ordinal eta;

  friend bool operator==(const EncodedState&, const EncodedState&) = default;
};

// ClosureError unless alpha >= w is multiplicatively closed and eta is
// additively closed; RangeError for levels >= eta, registers >= alpha, line 0,
// unordered levels or ragged register vectors.
EncodedState encode_state(const LevelStack& stack, const Ordinal& alpha, const Ordinal& eta);
// EncodingCorruptionError when the digits do not describe a valid stack.
LevelStack decode_state(const EncodedState& s);

// The program run by frames at level 0 and at limit levels.
const Program& passthrough_program();

struct IterateFinished {
  bool bit;
};
using IterateResult = std::variant<EncodedState, IterateFinished>;

// One transition, applied to the encoded ordinals through base-alpha digits.
IterateResult iterate_step(const EncodedState& s, const OperatorProgram& op, const Oracle& x, const Ordinal& iota_top);

// Line register alpha^(iota*2) * 1, register 1 alpha^(iota*2) * xi, others 0.
EncodedState initial_state(const OperatorProgram& op, const Ordinal& eta, const Ordinal& iota, const Ordinal& xi);

struct IterateOptions {
  std::uint64_t budget = 50'000'000;  // transitions
  std::function<void(const EncodedState&)> observer;  // called after every transition
};

// xi in F^iota(x), by driving iterate_step from initial_state.
bool run_iterate(const OperatorProgram& op, const Ordinal& eta, const Ordinal& iota, const Ordinal& xi, const Oracle& x,
                 const IterateOptions& options = {});

struct ReferenceOptions {
  RunOptions run;
  std::size_t max_depth = 100'000;  // nested evaluations (RecursionDepthError)
};

// Host recursion: the operator program is run by the machine interpreter
// with an oracle that recursively answers membership one level down.
bool reference_iterate(const OperatorProgram& op, const Ordinal& iota, const Oracle& x, const Ordinal& xi,
                       const ReferenceOptions& options = {});

// The definition of F^delta(x) evaluated directly with a host evaluator of F;
// limit stages unpair with `alpha`.
bool iter_membership_def(const OperatorEvaluator& f, const Ordinal& delta, const Oracle& x, const Ordinal& xi,
                         const Ordinal& alpha);

// m-fold nesting of the operator program (m >= 1, RangeError otherwise).
OperatorEvaluator compose_finite(const OperatorProgram& op, std::size_t m, const RunOptions& run = {});
// m-fold nesting of an arbitrary evaluator.
OperatorEvaluator compose_finite(const OperatorEvaluator& f, std::size_t m);

// Membership in F^alpha(x) for an operator on beta = op.alpha < alpha: unpair
// xi with alpha into (xi0, xi1) and decide xi1 in F^xi0(x) with run_iterate.
// ClosureError unless alpha is multiplicatively closed, beta < alpha and
// beta^(xi0 + 1) < alpha.
bool alpha_iteration(const OperatorProgram& op, const Ordinal& alpha, const Ordinal& xi, const Oracle& x,
                     const IterateOptions& options = {});

// F^alpha as an evaluator, and its i-fold composition (the alpha*i-th
// iteration, i >= 1).
OperatorEvaluator alpha_iteration_operator(const OperatorProgram& op, const Ordinal& alpha,
                                           const IterateOptions& options = {});
OperatorEvaluator alpha_multiple_iteration(const OperatorProgram& op, const Ordinal& alpha, std::size_t i,
                                           const IterateOptions& options = {});

// Smallest additively closed ordinal above x.
Ordinal additive_closure_above(const Ordinal& x);

}  // namespace itrm
