#pragma once

// Text to polynomial: a small recursive-descent parser for expressions in
// x and y with integer or rational coefficients, the operators + - * ^,
// and parentheses.  Whitespace-insensitive; errors carry the 1-based
// column at which parsing failed.

#include <cctype>
#include <string>

#include "igusa/bipoly.hpp"
#include "igusa/errors.hpp"
#include "igusa/rational.hpp"

namespace igusa {

namespace detail_parse {

constexpr long kMaxExponent = 512;

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  BiPoly run() {
    BiPoly v = expr();
    skip_ws();
    if (pos_ < s_.size()) err("unexpected trailing input");
    return v;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  [[noreturn]] void err(const std::string& what) const {
    fail(ErrorCode::ParseError,
         what + " at column " + std::to_string(pos_ + 1));
  }
  void skip_ws() {
    while (pos_ < s_.size() &&
           std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() { return s_[pos_]; }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Int digits() {
    skip_ws();
    if (pos_ >= s_.size() ||
        !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      err("expected a number");
    size_t start = pos_;
    while (pos_ < s_.size() &&
           std::isdigit(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    return Int(s_.substr(start, pos_ - start));
  }

  BiPoly expr() {
    BiPoly v = term();
    for (;;) {
      if (eat('+')) {
        v = v + term();
      } else if (eat('-')) {
        v = v - term();
      } else {
        return v;
      }
    }
  }

  BiPoly term() {
    BiPoly v = factor();
    while (eat('*')) v = v * factor();
    return v;
  }

  BiPoly factor() {
    BiPoly v = base();
    if (eat('^')) {
      Int e = digits();
      if (e > kMaxExponent) err("exponent too large");
      long n = e.get_si();
      BiPoly r = BiPoly::constant(Rat(1));
      for (long i = 0; i < n; ++i) r = r * v;
      return r;
    }
    return v;
  }

  BiPoly base() {
    if (at_end()) err("expected a term");
    char c = peek();
    if (c == '(') {
      ++pos_;
      BiPoly v = expr();
      if (!eat(')')) err("expected ')'");
      return v;
    }
    if (c == '-') {
      ++pos_;
      return BiPoly::constant(Rat(0)) - factor();
    }
    if (c == 'x') {
      ++pos_;
      return BiPoly::var_x();
    }
    if (c == 'y') {
      ++pos_;
      return BiPoly::var_y();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = digits();
      // A '/' directly after an integer literal forms a rational literal.
      size_t save = pos_;
      if (eat('/')) {
        skip_ws();
        if (pos_ < s_.size() &&
            std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          Int den = digits();
          if (den == 0) err("zero denominator");
          return BiPoly::constant(Rat(num, den));
        }
        pos_ = save;
        err("expected a denominator");
      }
      return BiPoly::constant(Rat(num));
    }
    err("unexpected character '" + std::string(1, c) + "'");
  }
};

}  // namespace detail_parse

// Parses "+ - * ^"-expressions in x and y with integer or rational
// coefficients into an exact polynomial.  ParseError carries the column.
inline BiPoly parse_polynomial(const std::string& text) {
  return detail_parse::Parser(text).run();
}

}  // namespace igusa
