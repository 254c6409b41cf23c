#include "itrm/iteration.hpp"
#include "itrm/pairing.hpp"

namespace itrm {

namespace {

struct Reference {
  const OperatorProgram& op;
  const Oracle& x;
  const ReferenceOptions& options;

  bool member(const Ordinal& level, const Ordinal& xi, std::size_t depth) const {
    if (depth > options.max_depth) throw RecursionDepthError("reference iteration nested too deeply");
    if (level.is_zero()) return x(xi);
    if (level.is_successor()) {
      const Ordinal below = predecessor(level);
      const MachineSpec spec(op.alpha, [&, below, depth](const Ordinal& z) { return member(below, z, depth + 1); });
      return decide(spec, op.program, xi, options.run);
    }
    auto [inner, arg] = godel_unpair(xi, op.alpha);
    if (inner >= level) return false;
    return member(inner, arg, depth + 1);
  }
};

}  // namespace

bool reference_iterate(const OperatorProgram& op, const Ordinal& iota, const Oracle& x, const Ordinal& xi,
                       const ReferenceOptions& options) {
  if (xi >= op.alpha) throw RangeError("argument " + format_ordinal(xi) + " is not below alpha");
  return Reference{op, x, options}.member(iota, xi, 0);
}

bool iter_membership_def(const OperatorEvaluator& f, const Ordinal& delta, const Oracle& x, const Ordinal& xi,
                         const Ordinal& alpha) {
  if (delta.is_zero()) return x(xi);
  if (delta.is_successor()) {
    const Ordinal below = predecessor(delta);
    return f(xi, [&](const Ordinal& z) { return iter_membership_def(f, below, x, z, alpha); });
  }
  auto [inner, arg] = godel_unpair(xi, alpha);
  if (inner >= delta) return false;
  return iter_membership_def(f, inner, x, arg, alpha);
}

OperatorEvaluator compose_finite(const OperatorProgram& op, std::size_t m, const RunOptions& run) {
  const OperatorEvaluator once = [op, run](const Ordinal& xi, const Oracle& x) {
    return decide(MachineSpec(op.alpha, x), op.program, xi, run);
  };
  return compose_finite(once, m);
}

OperatorEvaluator compose_finite(const OperatorEvaluator& f, std::size_t m) {
  if (m == 0) throw RangeError("composition needs at least one application");
  return [f, m](const Ordinal& xi, const Oracle& x) {
    Oracle level = x;
    for (std::size_t k = 1; k < m; ++k) {
      level = [f, below = level](const Ordinal& z) { return f(z, below); };
    }
    return f(xi, level);
  };
}

Ordinal additive_closure_above(const Ordinal& x) {
  if (x.is_zero()) return Ordinal(1);
  return Ordinal::power_of_omega(add(x.leading_exponent(), Ordinal(1)));
}

bool alpha_iteration(const OperatorProgram& op, const Ordinal& alpha, const Ordinal& xi, const Oracle& x,
                     const IterateOptions& options) {
  if (alpha < Ordinal::omega() || !is_multiplicatively_closed(alpha)) {
    throw ClosureError("alpha = " + format_ordinal(alpha) + " is not closed under multiplication");
  }
  const Ordinal& beta = op.alpha;
  if (beta >= alpha) throw ClosureError("the operator's register bound must lie below alpha");
  if (xi >= alpha) throw RangeError("argument " + format_ordinal(xi) + " is not below alpha");
  auto [index, arg] = godel_unpair(xi, alpha);
  if (pow(beta, add(index, Ordinal(1))) >= alpha) {
    throw ClosureError("the encoded stack for index " + format_ordinal(index) + " does not fit below alpha");
  }
  if (index.is_zero()) return x(arg);
  if (arg >= beta) return false;
  return run_iterate(op, additive_closure_above(index), index, arg, x, options);
}

OperatorEvaluator alpha_iteration_operator(const OperatorProgram& op, const Ordinal& alpha,
                                           const IterateOptions& options) {
  return [op, alpha, options](const Ordinal& xi, const Oracle& x) { return alpha_iteration(op, alpha, xi, x, options); };
}

OperatorEvaluator alpha_multiple_iteration(const OperatorProgram& op, const Ordinal& alpha, std::size_t i,
                                           const IterateOptions& options) {
  return compose_finite(alpha_iteration_operator(op, alpha, options), i);
}

}  // namespace itrm
