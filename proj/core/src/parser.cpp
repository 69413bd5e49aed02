#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include "schwarzian/errors.hpp"
#include "schwarzian/expr.hpp"

namespace schwarzian {

namespace {

// Recursive-descent parser; one instance per input string.
class Parser {
 public:
  Parser(std::string_view text, std::span<const std::string> parameters)
      : text_(text), parameters_(parameters) {}

  FunctionExpr parse_all() {
    FunctionExpr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  FunctionExpr expr() {
    FunctionExpr e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  FunctionExpr term() {
    FunctionExpr e = factor();
    for (;;) {
      if (accept('*')) {
        e = e * factor();
      } else if (accept('/')) {
        e = e / factor();
      } else {
        return e;
      }
    }
  }

  FunctionExpr factor() {
    if (accept('-')) return FunctionExpr::constant(0.0) - factor();
    if (accept('+')) return factor();
    FunctionExpr b = base();
    if (accept('^')) return int_pow(b, integer_exponent());
    return b;
  }

  int integer_exponent() {
    const bool paren = accept('(');
    skip_space();
    const std::size_t start = pos_;
    bool negative = false;
    if (accept('-')) {
      negative = true;
    } else {
      accept('+');
    }
    skip_space();
    const std::size_t digits = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected integer exponent");
    int value = 0;
    auto [ptr, ec] = std::from_chars(text_.data() + digits, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) fail("integer exponent out of range");
    if (value == 0) throw ParseError("zero integer exponent", start);
    if (paren) expect(')');
    return negative ? -value : value;
  }

  FunctionExpr base() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      FunctionExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  FunctionExpr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    };
    digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      const std::size_t exp_digits = pos_;
      digits();
      if (pos_ == exp_digits) pos_ = save;  // not an exponent after all
    }
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc{} || ptr != text_.data() + pos_) {
      throw ParseError("malformed number", start);
    }
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 == text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return FunctionExpr::constant(Complex(0.0, value));
    }
    return FunctionExpr::constant(value);
  }

  FunctionExpr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    if (name == "z") return FunctionExpr::variable();
    if (name == "exp" || name == "log" || name == "J0" || name == "Y0") {
      expect('(');
      FunctionExpr arg = expr();
      expect(')');
      if (name == "exp") return exp(arg);
      if (name == "log") return log(arg);
      return bessel(name == "J0" ? BesselKind::J0 : BesselKind::Y0, arg);
    }
    if (std::find(parameters_.begin(), parameters_.end(), name) != parameters_.end()) {
      return FunctionExpr::parameter(name);
    }
    throw ParseError("unknown identifier '" + name + "'", start);
  }

  std::string_view text_;
  std::span<const std::string> parameters_;
  std::size_t pos_ = 0;
};

}  // namespace

FunctionExpr parse(std::string_view text, std::span<const std::string> parameters) {
  return Parser(text, parameters).parse_all();
}

}  // namespace schwarzian
