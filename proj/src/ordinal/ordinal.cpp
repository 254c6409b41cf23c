#include "itrm/ordinal.hpp"

#include <algorithm>
#include <utility>

namespace itrm {

namespace {

std::strong_ordering compare_naturals(const Natural& a, const Natural& b) {
  if (a < b) return std::strong_ordering::less;
  if (b < a) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

Ordinal::Ordinal(std::uint64_t n) {
  if (n != 0) terms_.push_back(Term{Ordinal{}, Natural(n)});
}

Ordinal::Ordinal(const Natural& n) {
  if (n < 0) throw UnderflowError("negative natural cannot be an ordinal");
  if (n != 0) terms_.push_back(Term{Ordinal{}, n});
}

Ordinal Ordinal::omega() { return power_of_omega(Ordinal(1)); }

Ordinal Ordinal::power_of_omega(Ordinal exponent, Natural coefficient) {
  Ordinal out;
  if (coefficient < 0) throw UnderflowError("negative coefficient");
  if (coefficient != 0) out.terms_.push_back(Term{std::move(exponent), std::move(coefficient)});
  return out;
}

Ordinal Ordinal::from_terms(std::vector<Term> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient <= 0) {
      throw InvariantViolationError("normal form requires positive coefficients");
    }
    if (i > 0 && !(terms[i].exponent < terms[i - 1].exponent)) {
      throw InvariantViolationError("normal form requires strictly decreasing exponents");
    }
  }
  Ordinal out;
  out.terms_ = std::move(terms);
  return out;
}

bool Ordinal::is_finite() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponent.is_zero());
}

bool Ordinal::is_successor() const {
  return !terms_.empty() && terms_.back().exponent.is_zero();
}

bool Ordinal::is_limit() const { return !terms_.empty() && !is_successor(); }

std::optional<Natural> Ordinal::finite_value() const {
  if (terms_.empty()) return Natural(0);
  if (is_finite()) return terms_[0].coefficient;
  return std::nullopt;
}

Natural Ordinal::finite_part() const {
  if (is_successor()) return terms_.back().coefficient;
  return 0;
}

Ordinal Ordinal::leading_exponent() const {
  return terms_.empty() ? Ordinal{} : terms_.front().exponent;
}

Natural Ordinal::leading_coefficient() const {
  return terms_.empty() ? Natural(0) : terms_.front().coefficient;
}

std::size_t Ordinal::depth() const {
  std::size_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponent.depth() + 1);
  return d;
}

std::string Ordinal::to_string() const { return format_ordinal(*this); }

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a.terms_[i].exponent <=> b.terms_[i].exponent; c != 0) return c;
    if (auto c = compare_naturals(a.terms_[i].coefficient, b.terms_[i].coefficient); c != 0) {
      return c;
    }
  }
  return a.terms_.size() <=> b.terms_.size();
}

bool operator==(const Ordinal& a, const Ordinal& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].coefficient != b.terms_[i].coefficient) return false;
    if (!(a.terms_[i].exponent == b.terms_[i].exponent)) return false;
  }
  return true;
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal add(const Ordinal& a, const Ordinal& b) {
  if (b.is_zero()) return a;
  const auto& bt = b.terms();
  const Ordinal& lead = bt.front().exponent;
  std::vector<Term> out;
  out.reserve(a.terms().size() + bt.size());
  for (const auto& t : a.terms()) {
    auto c = t.exponent <=> lead;
    if (c > 0) {
      out.push_back(t);
    } else {
      if (c == 0) {
        out.push_back(Term{lead, t.coefficient + bt.front().coefficient});
        out.insert(out.end(), bt.begin() + 1, bt.end());
        return Ordinal::from_terms(std::move(out));
      }
      break;
    }
  }
  out.insert(out.end(), bt.begin(), bt.end());
  return Ordinal::from_terms(std::move(out));
}

Ordinal left_sub(const Ordinal& a, const Ordinal& b) {
  const auto& at = a.terms();
  const auto& bt = b.terms();
  for (std::size_t i = 0; i < bt.size(); ++i) {
    if (i == at.size()) throw UnderflowError("left_sub: subtrahend exceeds minuend");
    auto c = at[i].exponent <=> bt[i].exponent;
    if (c < 0) throw UnderflowError("left_sub: subtrahend exceeds minuend");
    if (c > 0) {
      // The rest of b is absorbed by a's larger term.
      return Ordinal::from_terms(std::vector<Term>(at.begin() + static_cast<std::ptrdiff_t>(i), at.end()));
    }
    if (at[i].coefficient < bt[i].coefficient) {
      throw UnderflowError("left_sub: subtrahend exceeds minuend");
    }
    if (at[i].coefficient > bt[i].coefficient) {
      std::vector<Term> out;
      out.push_back(Term{at[i].exponent, at[i].coefficient - bt[i].coefficient});
      out.insert(out.end(), at.begin() + static_cast<std::ptrdiff_t>(i) + 1, at.end());
      return Ordinal::from_terms(std::move(out));
    }
    // Equal term; the next term of b must also be stripped unless b ends here.
    if (i + 1 < bt.size() && i + 1 == at.size()) {
      throw UnderflowError("left_sub: subtrahend exceeds minuend");
    }
  }
  return Ordinal::from_terms(std::vector<Term>(at.begin() + static_cast<std::ptrdiff_t>(bt.size()), at.end()));
}

Ordinal mul(const Ordinal& a, const Ordinal& b) {
  if (a.is_zero() || b.is_zero()) return Ordinal{};
  const auto& at = a.terms();
  const Ordinal& a_lead = at.front().exponent;
  std::vector<Term> out;
  // a * (sum of b's terms) distributes on the left; each w^e * k with e > 0
  // becomes w^(lead(a) + e) * k, and the trailing natural k scales a's
  // leading coefficient.
  for (const auto& t : b.terms()) {
    if (t.exponent.is_zero()) {
      out.push_back(Term{a_lead, at.front().coefficient * t.coefficient});
      out.insert(out.end(), at.begin() + 1, at.end());
    } else {
      out.push_back(Term{add(a_lead, t.exponent), t.coefficient});
    }
  }
  return Ordinal::from_terms(std::move(out));
}

namespace {

Ordinal finite_power(const Ordinal& base, Natural k) {
  Ordinal result(1);
  Ordinal square = base;
  while (k > 0) {
    if ((k & 1) != 0) result = mul(result, square);
    k >>= 1;
    if (k > 0) square = mul(square, square);
  }
  return result;
}

// Splits b into its infinite part and trailing natural: b = inf + k.
std::pair<Ordinal, Natural> split_finite(const Ordinal& b) {
  if (!b.is_successor()) return {b, Natural(0)};
  std::vector<Term> t(b.terms().begin(), b.terms().end() - 1);
  return {Ordinal::from_terms(std::move(t)), b.terms().back().coefficient};
}

}  // namespace

Ordinal pow(const Ordinal& a, const Ordinal& b, std::size_t max_depth) {
  Ordinal result;
  if (b.is_zero()) {
    result = Ordinal(1);
  } else if (a.is_zero()) {
    result = Ordinal{};
  } else if (a == Ordinal(1)) {
    result = Ordinal(1);
  } else {
    auto [infinite, k] = split_finite(b);
    Ordinal head(1);
    if (!infinite.is_zero()) {
      if (a.is_finite()) {
        // n^(w^e) = w^(w^(e-1)) for n >= 2, where e-1 is the left difference.
        std::vector<Term> exps;
        for (const auto& t : infinite.terms()) {
          exps.push_back(Term{left_sub(t.exponent, Ordinal(1)), t.coefficient});
        }
        head = Ordinal::power_of_omega(Ordinal::from_terms(std::move(exps)));
      } else {
        head = Ordinal::power_of_omega(mul(a.leading_exponent(), infinite));
      }
    }
    if (k == 0) {
      result = head;
    } else if (a.is_finite()) {
      Natural n = *a.finite_value();
      Natural p = 1;
      for (Natural i = 0; i < k; ++i) p *= n;
      result = mul(head, Ordinal(p));
    } else {
      result = mul(head, finite_power(a, k));
    }
  }
  if (result.depth() > max_depth) {
    throw DepthLimitError("pow: result nesting depth " + std::to_string(result.depth()) +
                          " exceeds bound " + std::to_string(max_depth));
  }
  return result;
}

Ordinal predecessor(const Ordinal& x) {
  if (!x.is_successor()) throw UnderflowError("predecessor of a non-successor ordinal");
  std::vector<Term> t = x.terms();
  if (t.back().coefficient == 1) {
    t.pop_back();
  } else {
    t.back().coefficient -= 1;
  }
  return Ordinal::from_terms(std::move(t));
}

}  // namespace itrm
