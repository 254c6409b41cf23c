#include "itrm/digits.hpp"

#include <algorithm>

namespace itrm {

namespace {

void require_digit_base(const Ordinal& base) {
  if (base < Ordinal::omega() || !is_multiplicatively_closed(base)) {
    throw BaseNotClosedError("base " + format_ordinal(base) +
                             " is not a multiplicatively closed ordinal >= w");
  }
}

}  // namespace

BaseDigits base_decompose(const Ordinal& x, const Ordinal& base) {
  require_digit_base(base);
  // base = w^(w^g); w^e = base^q * w^r where e = w^g * q + r, r < w^g.
  const Ordinal unit = base.leading_exponent();
  BaseDigits out{base, {}};
  for (const auto& t : x.terms()) {
    auto [q, r] = divide_by_term(t.exponent, unit);
    Ordinal piece = Ordinal::power_of_omega(r, t.coefficient);
    if (!out.digits.empty() && out.digits.back().position == q) {
      out.digits.back().value = add(out.digits.back().value, piece);
    } else {
      out.digits.push_back(Digit{std::move(q), std::move(piece)});
    }
  }
  return out;
}

Ordinal base_compose(const BaseDigits& d) {
  require_digit_base(d.base);
  Ordinal sum;
  for (std::size_t i = 0; i < d.digits.size(); ++i) {
    const Digit& digit = d.digits[i];
    if (digit.value.is_zero() || digit.value >= d.base) {
      throw InvalidDigitsError("digit " + format_ordinal(digit.value) + " out of range for base " +
                               format_ordinal(d.base));
    }
    if (i > 0 && !(digit.position < d.digits[i - 1].position)) {
      throw InvalidDigitsError("digit positions must be strictly decreasing");
    }
    sum = add(sum, mul(pow(d.base, digit.position), digit.value));
  }
  return sum;
}

Ordinal digit_at(const BaseDigits& d, const Ordinal& position) {
  for (const auto& digit : d.digits) {
    if (digit.position == position) return digit.value;
  }
  return Ordinal{};
}

void set_digit(BaseDigits& d, const Ordinal& position, const Ordinal& value) {
  auto it = std::find_if(d.digits.begin(), d.digits.end(),
                         [&](const Digit& digit) { return digit.position <= position; });
  if (it != d.digits.end() && it->position == position) {
    if (value.is_zero()) {
      d.digits.erase(it);
    } else {
      it->value = value;
    }
  } else if (!value.is_zero()) {
    d.digits.insert(it, Digit{position, value});
  }
}

SequenceDescriptor constant_sequence(const Ordinal& value, const Ordinal& base) {
  SequenceDescriptor out{base, {}};
  for (auto& digit : base_decompose(value, base).digits) {
    out.digits.push_back(DigitTrend{std::move(digit.position), ConstantDigit{std::move(digit.value)}});
  }
  return out;
}

Ordinal liminf(const SequenceDescriptor& d) {
  require_digit_base(d.base);
  BaseDigits kept{d.base, {}};
  for (std::size_t i = 0; i < d.digits.size(); ++i) {
    const DigitTrend& trend = d.digits[i];
    if (i > 0 && !(trend.position < d.digits[i - 1].position)) {
      throw MalformedDescriptorError("descriptor positions must be strictly decreasing");
    }
    if (const auto* c = std::get_if<ConstantDigit>(&trend.trend)) {
      if (c->value >= d.base) throw MalformedDescriptorError("constant digit >= base");
      if (!c->value.is_zero()) kept.digits.push_back(Digit{trend.position, c->value});
      continue;
    }
    // The highest varying digit decides the liminf; check nothing below it
    // also varies, then drop the lower digits.
    for (std::size_t j = i + 1; j < d.digits.size(); ++j) {
      if (j > i && !(d.digits[j].position < d.digits[j - 1].position)) {
        throw MalformedDescriptorError("descriptor positions must be strictly decreasing");
      }
      if (!std::holds_alternative<ConstantDigit>(d.digits[j].trend)) {
        throw MalformedDescriptorError("a varying digit lies below another varying digit");
      }
    }
    Ordinal prefix = base_compose(kept);
    Ordinal weight = pow(d.base, trend.position);
    if (const auto* inc = std::get_if<IncreasingDigit>(&trend.trend)) {
      if (!inc->sup.is_limit() || inc->sup > d.base) {
        throw MalformedDescriptorError("increasing digit needs a limit supremum <= base");
      }
      return add(prefix, mul(weight, inc->sup));
    }
    const auto& osc = std::get<OscillatingDigit>(trend.trend);
    if (osc.values.empty()) throw MalformedDescriptorError("oscillating digit without values");
    if (i + 1 != d.digits.size()) {
      throw MalformedDescriptorError("an oscillating digit must be the lowest described digit");
    }
    const Ordinal& low = *std::min_element(osc.values.begin(), osc.values.end());
    if (*std::max_element(osc.values.begin(), osc.values.end()) >= d.base) {
      throw MalformedDescriptorError("oscillating digit value >= base");
    }
    return add(prefix, mul(weight, low));
  }
  return base_compose(kept);
}

}  // namespace itrm
