#pragma once

#include <variant>
#include <vector>

#include "itrm/ordinal.hpp"

namespace itrm {

struct Digit {
  Ordinal position;
  Ordinal value;  // 0 < value < base

  friend bool operator==(const Digit&, const Digit&) = default;
};

// A base-alpha expansion sum(base^position * value), positions strictly
// decreasing. Unique for multiplicatively closed bases.
struct BaseDigits {
  Ordinal base;
  std::vector<Digit> digits;

  friend bool operator==(const BaseDigits&, const BaseDigits&) = default;
};

// Requires base >= w and multiplicatively closed (BaseNotClosedError).
BaseDigits base_decompose(const Ordinal& x, const Ordinal& base);
// Throws InvalidDigitsError on a digit >= base, a zero digit, or
// non-decreasing positions.
Ordinal base_compose(const BaseDigits& d);

// Digit value at `position`, 0 when absent.
Ordinal digit_at(const BaseDigits& d, const Ordinal& position);
// Sets (or erases, for value 0) the digit at `position`, keeping order.
void set_digit(BaseDigits& d, const Ordinal& position, const Ordinal& value);

// Eventual behavior of one base-alpha digit of a sequence approaching a limit.
struct ConstantDigit {
  Ordinal value;
};
// Digit values increase without bound below `sup` (a limit, sup <= base).
struct IncreasingDigit {
  Ordinal sup;
};
// Digit values cycle cofinally through `values`; only allowed as the lowest
// described digit, since lower digits then depend on the chosen subsequence.
struct OscillatingDigit {
  std::vector<Ordinal> values;
};

struct DigitTrend {
  Ordinal position;
  std::variant<ConstantDigit, IncreasingDigit, OscillatingDigit> trend;
};

struct SequenceDescriptor {
  Ordinal base;
  std::vector<DigitTrend> digits;  // positions strictly decreasing
};

SequenceDescriptor constant_sequence(const Ordinal& value, const Ordinal& base);

// Constant digits persist; the highest varying digit contributes
// base^position * (its liminf) and everything below it contributes 0.
// Throws MalformedDescriptorError when a varying digit sits below another
// varying digit, positions are out of order, or values are out of range.
Ordinal liminf(const SequenceDescriptor& d);

}  // namespace itrm
