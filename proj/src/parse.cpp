#include "qfv/parse.hpp"

#include <cctype>

namespace qfv {

namespace {

class Parser {
public:
  Parser(const std::string& s, std::shared_ptr<const Ring> ring)
      : s_(s), ring_(std::move(ring)) {}

  Poly run() {
    Poly p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return p;
  }

private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  Poly expr() {
    skip_ws();
    bool neg = false;
    if (eat('-')) neg = true;
    else eat('+');
    Poly acc = term();
    if (neg) acc = -acc;
    for (;;) {
      skip_ws();
      if (eat('+')) acc = acc + term();
      else if (eat('-')) acc = acc - term();
      else break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (eat('*')) acc = acc * factor();
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (eat('^')) {
      skip_ws();
      size_t at = pos_;
      unsigned long e = natural();
      if (e > 1000) throw ParseError("exponent too large", at);
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  unsigned long natural() {
    skip_ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      fail("expected number");
    unsigned long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + static_cast<unsigned long>(s_[pos_] - '0');
      if (v > (1UL << 62)) fail("number too large");
      ++pos_;
    }
    return v;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      unsigned long num = natural();
      // rational literal: nat '/' nat (only directly after an integer literal)
      size_t save = pos_;
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        skip_ws();
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
          unsigned long den = natural();
          if (den == 0) fail("zero denominator");
          Rational q(static_cast<long long>(num), static_cast<long long>(den));
          return Poly::constant(ring_, Coeff::from_rational(ring_->field(), q));
        }
        fail("expected denominator");
      }
      pos_ = save;
      return Poly::constant(ring_, static_cast<long long>(num));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      if (auto idx = ring_->index(name)) return Poly::variable(ring_, *idx);
      if (name == "g" && ring_->field()->kind() == Field::Kind::extension)
        return Poly::constant(ring_, Coeff::generator(ring_->field()));
      throw ParseError("unknown identifier '" + name + "'", start);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::shared_ptr<const Ring> ring_;
  size_t pos_ = 0;
};

} // namespace

Poly parse_poly(const std::string& text, std::shared_ptr<const Ring> ring) {
  return Parser(text, std::move(ring)).run();
}

} // namespace qfv
