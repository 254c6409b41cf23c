#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "itrm/errors.hpp"

namespace itrm {

using Natural = boost::multiprecision::cpp_int;

struct Term;

// An ordinal below epsilon_0 in Cantor normal form:
//   w^e1 * c1 + w^e2 * c2 + ... + w^ek * ck,  e1 > e2 > ... > ek,  ci >= 1.
// The empty term list is 0. Values are immutable once built; every public
// constructor normalizes or validates, so structural equality is ordinal
// equality.
class Ordinal {
 public:
  Ordinal() = default;
  Ordinal(std::uint64_t n);  // NOLINT(google-explicit-constructor)
  explicit Ordinal(const Natural& n);

  static Ordinal omega();
  // w^exponent * coefficient; coefficient 0 yields 0.
  static Ordinal power_of_omega(Ordinal exponent, Natural coefficient = 1);
  // Throws InvariantViolationError unless terms already form a normal form.
  static Ordinal from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_finite() const;
  bool is_successor() const;
  bool is_limit() const;  // nonzero and not a successor

  // Value when finite.
  std::optional<Natural> finite_value() const;
  // Coefficient of w^0 (the trailing natural number).
  Natural finite_part() const;
  // The leading exponent; 0 for the ordinal 0 (callers check is_zero first).
  Ordinal leading_exponent() const;
  Natural leading_coefficient() const;
  // Nesting depth of the normal form: 0 for 0, 1 for naturals, 2 for w...
  std::size_t depth() const;

  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b);

 private:
  std::vector<Term> terms_;
};

struct Term {
  Ordinal exponent;
  Natural coefficient;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);

// Default nesting-depth bound for pow; values below epsilon_0 at desk scale
// never get near it.
inline constexpr std::size_t kDefaultDepthLimit = 32;

Ordinal add(const Ordinal& a, const Ordinal& b);
// The unique c with b + c == a. Throws UnderflowError if b > a.
Ordinal left_sub(const Ordinal& a, const Ordinal& b);
Ordinal mul(const Ordinal& a, const Ordinal& b);
Ordinal pow(const Ordinal& a, const Ordinal& b, std::size_t max_depth = kDefaultDepthLimit);

inline Ordinal operator+(const Ordinal& a, const Ordinal& b) { return add(a, b); }
inline Ordinal operator*(const Ordinal& a, const Ordinal& b) { return mul(a, b); }

// x - 1 for a successor x. Throws UnderflowError otherwise.
Ordinal predecessor(const Ordinal& x);

struct DivisionResult {
  Ordinal quotient;
  Ordinal remainder;
};
// Left division by a single term d = w^g * k: x = d * q + r with r < d.
DivisionResult divide_by_term(const Ordinal& x, const Ordinal& d);

// Additively closed: x = w^g. Multiplicatively closed: 1, 2, or w^(w^g).
bool is_additively_closed(const Ordinal& x);
bool is_multiplicatively_closed(const Ordinal& x);
// For every g < alpha and i < beta: g^i < alpha.
bool is_exponentially_closed_up_to(const Ordinal& alpha, const Ordinal& beta);

// Literal grammar:
//   ordinal  := "0" | term ("+" term)*
//   term     := "w" ("^" exponent)? ("*" nat)? | nat
//   exponent := nat | "w" | "(" ordinal ")"
// Terms may appear out of order; the sum is normalized.
Ordinal parse_ordinal(std::string_view text);
std::string format_ordinal(const Ordinal& x);

}  // namespace itrm
