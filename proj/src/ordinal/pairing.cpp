#include "itrm/pairing.hpp"

#include <boost/multiprecision/integer.hpp>

namespace itrm {

namespace {

void require_pairing_base(const Ordinal& alpha) {
  if (alpha < Ordinal::omega() || !is_multiplicatively_closed(alpha)) {
    throw BaseNotClosedError("pairing needs a multiplicatively closed alpha >= w, got " +
                             format_ordinal(alpha));
  }
}

// For gamma >= 1, G(w^gamma) = w^growth(gamma), where
//   growth(w^g * c + mu) = w^g * 2c + mu    if mu > 0
//                        = w^g * (2c - 1)    if mu = 0.
// (It is the supremum of delta*2 + 1 over delta < gamma.)
Ordinal growth(const Ordinal& gamma) {
  std::vector<Term> t = gamma.terms();
  if (t.size() == 1) {
    t[0].coefficient = 2 * t[0].coefficient - 1;
  } else {
    t[0].coefficient *= 2;
  }
  return Ordinal::from_terms(std::move(t));
}

// Largest gamma >= 1 with growth(gamma) <= e, for e >= 1.
Ordinal growth_floor(const Ordinal& e) {
  std::vector<Term> t = e.terms();
  if (t[0].coefficient % 2 == 0) {
    t[0].coefficient /= 2;
  } else {
    t[0].coefficient = (t[0].coefficient + 1) / 2;
    t.resize(1);
  }
  return Ordinal::from_terms(std::move(t));
}

Ordinal doubled(const Ordinal& x) { return mul(x, Ordinal(2)); }

}  // namespace

Ordinal pairing_block_start(const Ordinal& m) {
  if (auto n = m.finite_value()) return Ordinal(*n * *n);
  const Ordinal gamma = m.leading_exponent();
  const Natural c = m.leading_coefficient();
  const Ordinal rest = Ordinal::from_terms(std::vector<Term>(m.terms().begin() + 1, m.terms().end()));

  // Blocks below w^gamma, then (c - 1) stretches of type w^(gamma*2), then
  // the blocks for w^gamma*c + nu, nu < rest, each of type w^gamma*2c + nu + 1.
  Ordinal out = Ordinal::power_of_omega(growth(gamma));
  out = add(out, Ordinal::power_of_omega(doubled(gamma), c - 1));
  if (!rest.is_zero()) {
    Ordinal stride = Ordinal::power_of_omega(gamma, 2 * c);
    out = add(out, mul(stride, rest));
    if (rest.is_successor()) out = add(out, rest);
  }
  return out;
}

Ordinal godel_pair(const Ordinal& a, const Ordinal& b, const Ordinal& alpha) {
  require_pairing_base(alpha);
  if (a >= alpha || b >= alpha) {
    throw ArgumentOutOfRangeError("godel_pair: arguments must be below " + format_ordinal(alpha));
  }
  const Ordinal& m = a < b ? b : a;
  const Ordinal start = pairing_block_start(m);
  if (a < m) return add(start, a);
  return add(add(start, m), b);
}

std::pair<Ordinal, Ordinal> godel_unpair(const Ordinal& z, const Ordinal& alpha) {
  require_pairing_base(alpha);
  if (z >= alpha) {
    throw ArgumentOutOfRangeError("godel_unpair: argument must be below " + format_ordinal(alpha));
  }
  Ordinal m;
  if (auto n = z.finite_value()) {
    m = Ordinal(Natural(boost::multiprecision::sqrt(*n)));
  } else {
    // Find the largest m with G(m) <= z: first the leading power w^gamma,
    // then its coefficient, then the tail by dividing out the block stride.
    const Ordinal e = z.leading_exponent();
    const Ordinal gamma = growth_floor(e);
    const Ordinal gamma2 = doubled(gamma);
    Natural c = 1;
    if (e == gamma2) {
      c = z.leading_coefficient();
      if (growth(gamma) != gamma2) c += 1;
    }
    const Ordinal head = Ordinal::power_of_omega(gamma, c);
    const Ordinal excess = left_sub(z, pairing_block_start(head));
    auto [q, rem] = divide_by_term(excess, Ordinal::power_of_omega(gamma, 2 * c));
    Ordinal r = q;
    if (q.is_successor() && rem < q) r = predecessor(q);
    m = add(head, r);
  }
  const Ordinal offset = left_sub(z, pairing_block_start(m));
  if (offset < m) return {offset, m};
  Ordinal b = left_sub(offset, m);
  if (b > m) throw InvariantViolationError("godel_unpair: offset outside its block");
  return {m, std::move(b)};
}

}  // namespace itrm
