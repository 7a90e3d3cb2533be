#include <cctype>
#include <string>
#include <vector>

#include "rq/expr.hpp"

// Recursive-descent parser for the expression grammar:
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | base ('^' integer)?
//   base   := number | symbol | func '(' expr ')' | '(' expr ')'
//   number := digits ['.' digits]
//   symbol := [A-Za-z][A-Za-z0-9_]*
//   func   in {sin, cos, tan, exp, log, sqrt, sinh, cosh}
//
// '^' takes only an integer literal (optionally signed) and binds tighter
// than unary minus. '+' and '*' associate to the left.

namespace rq {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Expr run() {
    Expr e = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool consume(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr expression() {
    Expr lhs = term();
    while (true) {
      char c = peek();
      if (c == '+') {
        ++pos_;
        lhs = Expr::make_sum({lhs, term()});
      } else if (c == '-') {
        ++pos_;
        lhs = Expr::make_sum({lhs, Expr::make_product({Expr::integer(-1), term()})});
      } else {
        return lhs;
      }
    }
  }

  Expr term() {
    Expr lhs = factor();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        lhs = Expr::make_product({lhs, factor()});
      } else if (c == '/') {
        ++pos_;
        lhs = Expr::make_quotient(lhs, factor());
      } else {
        return lhs;
      }
    }
  }

  Expr factor() {
    if (consume('-')) return Expr::make_product({Expr::integer(-1), factor()});
    Expr b = base();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return Expr::make_pow(b, integer_exponent());
    }
    return b;
  }

  long long integer_exponent() {
    skip_space();
    std::size_t start = pos_;
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
      fail("expected integer exponent after '^'");
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > (1ll << 40)) {
        pos_ = start;
        fail("exponent too large");
      }
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') fail("non-integer exponent on '^'");
    return negative ? -value : value;
  }

  Expr base() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      if (!consume(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  Expr number() {
    // digits ['.' digits], parsed as an exact rational.
    long long int_part = 0;
    std::size_t digits = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      int_part = int_part * 10 + (text_[pos_] - '0');
      if (++digits > 18) fail("number literal too large");
      ++pos_;
    }
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      long long frac = 0, scale = 1;
      std::size_t frac_digits = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        frac = frac * 10 + (text_[pos_] - '0');
        scale *= 10;
        if (++frac_digits > 15) fail("decimal literal too long");
        ++pos_;
      }
      if (frac_digits == 0) fail("expected digits after decimal point");
      try {
        return Expr::number(Rational(int_part) + Rational(frac, scale));
      } catch (const std::overflow_error&) {
        fail("number literal too large");
      }
    }
    return Expr::integer(int_part);
  }

  Expr identifier() {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    std::string name = text_.substr(start, pos_ - start);
    if (peek() == '(') {
      auto f = func_from_name(name);
      if (!f) {
        pos_ = start;
        fail("unknown function name '" + name + "'");
      }
      ++pos_;  // '('
      Expr arg = expression();
      if (!consume(')')) fail("expected ')' closing function argument");
      return Expr::make_func(*f, arg);
    }
    return Expr::symbol(name);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(const std::string& text) { return Parser(text).run(); }

}  // namespace rq
