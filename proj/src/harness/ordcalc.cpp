#include <cctype>

#include "itrm/harness.hpp"
#include "itrm/pairing.hpp"

namespace itrm {

namespace {

using Pair = std::pair<Ordinal, Ordinal>;
using Value = std::variant<Ordinal, Pair>;

class Calc {
 public:
  Calc(std::string_view text, std::size_t offset, Ordinal alpha) : s_(text), offset_(offset), alpha_(std::move(alpha)) {}

  std::string top() {
    const Value a = expr();
    if (keyword("cmp")) {
      const Ordinal b = ordinal(expr());
      finish();
      const auto c = compare(ordinal(a), b);
      return c < 0 ? "<" : c > 0 ? ">" : "=";
    }
    finish();
    if (const auto* p = std::get_if<Pair>(&a)) {
      return "(" + format_ordinal(p->first) + ", " + format_ordinal(p->second) + ")";
    }
    return format_ordinal(std::get<Ordinal>(a));
  }

  Ordinal only_ordinal() {
    Ordinal v = ordinal(expr());
    finish();
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(what, 1, offset_ + i_ + 1); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  bool keyword(std::string_view k) {
    skip();
    if (s_.substr(i_, k.size()) != k) return false;
    const std::size_t end = i_ + k.size();
    if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) return false;
    i_ = end;
    return true;
  }

  void finish() {
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
  }

  Ordinal ordinal(const Value& v) const {
    if (const auto* o = std::get_if<Ordinal>(&v)) return *o;
    throw SyntaxError("unpair yields a pair, not an ordinal", 1, offset_ + i_ + 1);
  }

  Value expr() {
    Value v = term();
    while (eat('+')) v = add(ordinal(v), ordinal(term()));
    return v;
  }

  Value term() {
    Value v = factor();
    while (eat('*')) v = mul(ordinal(v), ordinal(factor()));
    return v;
  }

  Value factor() {
    Value base = atom();
    if (eat('^')) return pow(ordinal(base), ordinal(factor()));
    return base;
  }

  Value atom() {
    skip();
    if (i_ == s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      Value v = expr();
      expect(')');
      return v;
    }
    if (keyword("pair")) {
      expect('(');
      const Ordinal a = ordinal(expr());
      expect(',');
      const Ordinal b = ordinal(expr());
      expect(')');
      return godel_pair(a, b, alpha_);
    }
    if (keyword("unpair")) {
      expect('(');
      const Ordinal z = ordinal(expr());
      expect(')');
      return godel_unpair(z, alpha_);
    }
    if (keyword("w")) return Ordinal::omega();
    if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Ordinal(Natural(std::string(s_.substr(start, i_ - start))));
    }
    fail("unexpected '" + std::string(1, s_[i_]) + "'");
  }

  std::string_view s_;
  std::size_t offset_;
  std::size_t i_ = 0;
  Ordinal alpha_;
};

}  // namespace

std::string ordcalc(const std::string& expression) {
  // The pairing base comes after the last top-level '@'.
  std::size_t at = std::string::npos;
  int depth = 0;
  for (std::size_t i = 0; i < expression.size(); ++i) {
    if (expression[i] == '(') ++depth;
    else if (expression[i] == ')') --depth;
    else if (expression[i] == '@' && depth == 0) at = i;
  }
  Ordinal alpha = Ordinal::omega();
  std::string_view body = expression;
  if (at != std::string::npos) {
    alpha = Calc(body.substr(at + 1), at + 1, Ordinal::omega()).only_ordinal();
    body = body.substr(0, at);
  }
  return Calc(body, 0, alpha).top();
}

}  // namespace itrm
