#pragma once

// Recursive-descent parser for polynomial expressions.
//
//   expr     := ['+'|'-'] term (('+'|'-') term)*
//   term     := factor (('*'|'/') factor)*
//   factor   := base ('^' nonneg-int)?
//   base     := rational | variable | '(' expr ')'
//   rational := int ('/' pos-int)?
//   variable := letter int        (T1..Tn, S0..Sn, U0..U(k-1) by space)
//
// Division is accepted only by a nonzero constant. Whitespace is insignificant.

#include <cctype>
#include <string>
#include <string_view>

#include "ffh/poly.hpp"

namespace ffh {

namespace detail {

class PolyParser {
 public:
  PolyParser(std::string_view text, VarSpace space) : text_(text), space_(space) {}

  MultiPoly parse() {
    MultiPoly p = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return p;
  }

 private:
  static constexpr unsigned kMaxExponent = 100000;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  MultiPoly expr() {
    bool negate_first = false;
    if (accept('-'))
      negate_first = true;
    else
      accept('+');
    MultiPoly acc = term();
    if (negate_first) acc = -acc;
    for (;;) {
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  MultiPoly term() {
    MultiPoly acc = factor();
    for (;;) {
      if (accept('*')) {
        acc *= factor();
      } else if (peek('/')) {
        const std::size_t at = pos_;
        ++pos_;
        MultiPoly d = factor();
        if (!d.is_constant()) throw ParseError("division by a non-constant", at);
        if (d.is_zero()) throw ParseError("division by zero", at);
        acc = acc * Rational(1 / d.constant_value());
      } else {
        return acc;
      }
    }
  }

  MultiPoly factor() {
    MultiPoly b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      Integer e = digits("exponent");
      if (e > kMaxExponent) throw ParseError("exponent too large", at);
      b = b.pow(static_cast<unsigned>(e.get_ui()));
    }
    return b;
  }

  MultiPoly base() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      MultiPoly inner = expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Rational value(digits("integer"));
      // int '/' pos-int binds as a single rational literal
      std::size_t save = pos_;
      skip_ws();
      if (pos_ + 1 <= text_.size() && pos_ < text_.size() && text_[pos_] == '/') {
        std::size_t after = pos_ + 1;
        while (after < text_.size() && std::isspace(static_cast<unsigned char>(text_[after]))) ++after;
        if (after < text_.size() && std::isdigit(static_cast<unsigned char>(text_[after]))) {
          const std::size_t at = pos_;
          pos_ = after;
          Integer den = digits("denominator");
          if (den == 0) throw ParseError("division by zero", at);
          value /= Rational(den);
          value.canonicalize();
          return MultiPoly::constant(space_, value);
        }
      }
      pos_ = save;
      return MultiPoly::constant(space_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t at = pos_;
      std::string name(1, c);
      ++pos_;
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      name += std::string(text_.substr(start, pos_ - start));
      if (start == pos_ || c != space_.letter()) throw ParseError("unknown variable '" + name + "'", at);
      const long idx = std::stol(name.substr(1));
      const int index = space_.kind == VarKind::affine ? static_cast<int>(idx) - 1 : static_cast<int>(idx);
      if (index < 0 || index >= space_.count) throw ParseError("unknown variable '" + name + "'", at);
      return MultiPoly::variable(space_, index);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Integer digits(const char* what) {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(std::string("expected ") + what, start);
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  VarSpace space_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline MultiPoly parse_poly(std::string_view text, VarSpace space) {
  return detail::PolyParser(text, space).parse();
}

}  // namespace ffh
