#include "itrm/ordinal.hpp"

namespace itrm {

DivisionResult divide_by_term(const Ordinal& x, const Ordinal& d) {
  if (d.terms().size() != 1) throw InvariantViolationError("divide_by_term: divisor must be a single term");
  const Ordinal& g = d.leading_exponent();
  const Natural& k = d.leading_coefficient();
  std::vector<Term> quotient;
  std::vector<Term> remainder;
  for (const auto& t : x.terms()) {
    auto c = t.exponent <=> g;
    if (c > 0) {
      // (w^g * k) * w^(e-g) = w^e since k * w^(e-g) = w^(e-g) for e-g >= 1.
      quotient.push_back(Term{left_sub(t.exponent, g), t.coefficient});
    } else if (c == 0) {
      Natural q = t.coefficient / k;
      Natural r = t.coefficient % k;
      if (q != 0) quotient.push_back(Term{Ordinal{}, q});
      if (r != 0) remainder.push_back(Term{g, r});
    } else {
      remainder.push_back(t);
    }
  }
  return {Ordinal::from_terms(std::move(quotient)), Ordinal::from_terms(std::move(remainder))};
}

bool is_additively_closed(const Ordinal& x) {
  return x.terms().size() == 1 && x.leading_coefficient() == 1;
}

bool is_multiplicatively_closed(const Ordinal& x) {
  if (x == Ordinal(1) || x == Ordinal(2)) return true;
  if (!is_additively_closed(x) || x.is_finite()) return false;
  return is_additively_closed(x.leading_exponent());
}

bool is_exponentially_closed_up_to(const Ordinal& alpha, const Ordinal& beta) {
  const Ordinal omega = Ordinal::omega();
  if (alpha.is_zero() || beta.is_zero()) return true;
  if (beta == Ordinal(1)) return alpha >= Ordinal(2);
  if (alpha.is_finite()) {
    // 0 and 1 are fixed by every positive exponent, so 2 is closed under all
    // exponents; for alpha >= 3, (alpha-1)^2 >= alpha.
    if (alpha == Ordinal(1)) return false;
    if (alpha == Ordinal(2)) return true;
    return beta <= Ordinal(2);
  }
  if (beta <= Ordinal(2)) return true;
  if (beta <= omega) return is_multiplicatively_closed(alpha);
  if (!is_multiplicatively_closed(alpha)) return false;
  // alpha = w^(w^g). A base below alpha leads with w^(w^h * c + ...), h < g;
  // raising it to an infinite i whose leading exponent is j gives leading
  // exponent w^(h + j). Closure needs h + j < g for every h < g, which holds
  // exactly when j < w^k for the smallest term w^k of g.
  const Ordinal g = alpha.leading_exponent().leading_exponent();
  if (g.is_zero()) return false;
  const Ordinal k = g.terms().back().exponent;
  return beta <= Ordinal::power_of_omega(Ordinal::power_of_omega(k));
}

}  // namespace itrm
