#include <cctype>
#include <string>

#include "itrm/ordinal.hpp"

namespace itrm {

namespace {

std::string natural_to_string(const Natural& n) { return n.str(); }

std::string format_impl(const Ordinal& x, const char* separator);

std::string format_term(const Term& t) {
  std::string out;
  const Ordinal& e = t.exponent;
  if (e.is_zero()) return natural_to_string(t.coefficient);
  out = "w";
  if (e == Ordinal(1)) {
    // plain w
  } else if (e.is_finite()) {
    out += "^" + natural_to_string(*e.finite_value());
  } else if (e == Ordinal::omega()) {
    out += "^w";
  } else {
    out += "^(" + format_impl(e, "+") + ")";
  }
  if (t.coefficient != 1) out += "*" + natural_to_string(t.coefficient);
  return out;
}

std::string format_impl(const Ordinal& x, const char* separator) {
  if (x.is_zero()) return "0";
  std::string out;
  for (std::size_t i = 0; i < x.terms().size(); ++i) {
    if (i > 0) out += separator;
    out += format_term(x.terms()[i]);
  }
  return out;
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  Ordinal parse_all() {
    Ordinal value = parse_ordinal();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("ordinal literal: " + what, 1, pos_ + 1);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_digit() {
    skip_ws();
    return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
  }

  Natural parse_nat() {
    if (!at_digit()) fail("expected a natural number");
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return Natural(std::string(text_.substr(start, pos_ - start)));
  }

  Ordinal parse_ordinal() {
    Ordinal sum = parse_term();
    while (accept('+')) sum = add(sum, parse_term());
    return sum;
  }

  Ordinal parse_term() {
    if (at_digit()) return Ordinal(parse_nat());
    if (!accept('w')) fail("expected 'w' or a natural number");
    Ordinal exponent(1);
    if (accept('^')) exponent = parse_exponent();
    Natural coefficient = 1;
    if (accept('*')) coefficient = parse_nat();
    return Ordinal::power_of_omega(exponent, coefficient);
  }

  Ordinal parse_exponent() {
    if (at_digit()) return Ordinal(parse_nat());
    if (accept('w')) return Ordinal::omega();
    if (accept('(')) {
      Ordinal inner = parse_ordinal();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    fail("expected exponent");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return LiteralParser(text).parse_all(); }

std::string format_ordinal(const Ordinal& x) { return format_impl(x, " + "); }

}  // namespace itrm
