#pragma once

// Independent reference implementations used only by the tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <tuple>
#include <vector>

#include "itrm/ordinal.hpp"
#include "itrm/program.hpp"

namespace itrm::testing {

// Ordinals below w^w as coefficient vectors: coeff[k] is the coefficient of
// w^k. Arithmetic is built from first principles: addition absorbs lower
// terms, multiplication by a natural is repeated addition and x * w^k for
// k >= 1 is w^(deg x + k).
struct Poly {
  std::vector<std::uint64_t> coeff;

  int degree() const {
    for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k) {
      if (coeff[static_cast<std::size_t>(k)] != 0) return k;
    }
    return -1;
  }
  std::uint64_t at(int k) const {
    return k >= 0 && static_cast<std::size_t>(k) < coeff.size() ? coeff[static_cast<std::size_t>(k)] : 0;
  }
  static Poly monomial(int k, std::uint64_t c) {
    Poly p;
    p.coeff.assign(static_cast<std::size_t>(k) + 1, 0);
    p.coeff[static_cast<std::size_t>(k)] = c;
    return p;
  }
};

inline Poly poly_add(const Poly& x, const Poly& y) {
  const int d = y.degree();
  if (d < 0) return x;
  const int top = std::max(x.degree(), d);
  Poly out;
  out.coeff.assign(static_cast<std::size_t>(top) + 1, 0);
  for (int k = top; k >= 0; --k) {
    std::uint64_t v = 0;
    if (k > d) v = x.at(k);
    else if (k == d) v = x.at(k) + y.at(k);
    else v = y.at(k);
    out.coeff[static_cast<std::size_t>(k)] = v;
  }
  return out;
}

inline Poly poly_repeat(const Poly& x, std::uint64_t n) {
  Poly out;
  for (std::uint64_t i = 0; i < n; ++i) out = poly_add(out, x);
  return out;
}

inline Poly poly_mul(const Poly& x, const Poly& y) {
  const int dx = x.degree();
  if (dx < 0 || y.degree() < 0) return Poly{};
  Poly out;
  for (int k = y.degree(); k >= 0; --k) {
    const std::uint64_t c = y.at(k);
    if (c == 0) continue;
    Poly piece = k == 0 ? x : Poly::monomial(dx + k, 1);
    out = poly_add(out, poly_repeat(piece, c));
  }
  return out;
}

inline int poly_compare(const Poly& x, const Poly& y) {
  const int top = std::max(x.degree(), y.degree());
  for (int k = top; k >= 0; --k) {
    if (x.at(k) != y.at(k)) return x.at(k) < y.at(k) ? -1 : 1;
  }
  return 0;
}

inline Ordinal poly_to_ordinal(const Poly& p) {
  std::vector<Term> terms;
  for (int k = p.degree(); k >= 0; --k) {
    if (p.at(k) != 0) terms.push_back(Term{Ordinal(static_cast<std::uint64_t>(k)), Natural(p.at(k))});
  }
  return Ordinal::from_terms(std::move(terms));
}

// Ordinals below w^3 as (a, b, c) -> w^2*a + w*b + c.
inline Poly triple(std::uint64_t a, std::uint64_t b, std::uint64_t c) { return Poly{{c, b, a}}; }

// Random normal forms with nesting depth <= max_depth.
class OrdinalGen {
 public:
  explicit OrdinalGen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_);
  }

  Ordinal ordinal(int max_depth, int max_terms = 3, std::uint64_t max_coeff = 5) {
    if (max_depth <= 1) return Ordinal(uniform(0, max_coeff));
    const auto n = static_cast<int>(uniform(0, static_cast<std::uint64_t>(max_terms)));
    std::vector<Ordinal> exps;
    for (int i = 0; i < n; ++i) exps.push_back(ordinal(max_depth - 1, max_terms, max_coeff));
    std::sort(exps.begin(), exps.end(), [](const Ordinal& a, const Ordinal& b) { return b < a; });
    exps.erase(std::unique(exps.begin(), exps.end()), exps.end());
    std::vector<Term> terms;
    for (auto& e : exps) terms.push_back(Term{std::move(e), Natural(uniform(1, max_coeff))});
    return Ordinal::from_terms(std::move(terms));
  }

  // Below w^w with finite exponents up to max_exp.
  Ordinal below_omega_omega(int max_exp, std::uint64_t max_coeff) {
    std::vector<Term> terms;
    for (int k = max_exp; k >= 0; --k) {
      if (uniform(0, 2) == 0) continue;
      terms.push_back(Term{Ordinal(static_cast<std::uint64_t>(k)), Natural(uniform(1, max_coeff))});
    }
    return Ordinal::from_terms(std::move(terms));
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

// Random valid program with the given shape; HALT appears with weight 1/5.
inline Program random_program(OrdinalGen& gen, std::size_t registers, std::size_t lines) {
  Program p;
  p.register_count = registers;
  auto reg = [&] { return static_cast<std::size_t>(gen.uniform(1, registers)); };
  for (std::size_t i = 0; i < lines; ++i) {
    switch (gen.uniform(0, 4)) {
      case 0: p.lines.emplace_back(Inc{reg()}); break;
      case 1: p.lines.emplace_back(Copy{reg(), reg()}); break;
      case 2: p.lines.emplace_back(JumpEq{reg(), reg(), static_cast<std::size_t>(gen.uniform(1, lines))}); break;
      case 3: p.lines.emplace_back(OracleQuery{reg()}); break;
      default: p.lines.emplace_back(Halt{}); break;
    }
  }
  return p;
}

// A random ordinal below bound, built from random normal forms by rejection.
inline Ordinal below(OrdinalGen& gen, const Ordinal& bound, int depth = 3) {
  for (;;) {
    Ordinal x = gen.ordinal(depth);
    if (x < bound) return x;
  }
}

// Immediate successor of (a, b) in the (max, a, b) order.
inline std::pair<Ordinal, Ordinal> next_pair(const Ordinal& a, const Ordinal& b) {
  const Ordinal& m = a < b ? b : a;
  if (a < m) {
    Ordinal a1 = add(a, Ordinal(1));
    if (a1 < m) return {a1, m};
    return {m, Ordinal(0)};
  }
  Ordinal b1 = add(b, Ordinal(1));
  if (b1 <= m) return {m, b1};
  return {Ordinal(0), add(m, Ordinal(1))};
}

inline auto order_key(const Ordinal& a, const Ordinal& b) {
  return std::make_tuple(a < b ? b : a, a, b);
}

}  // namespace itrm::testing
