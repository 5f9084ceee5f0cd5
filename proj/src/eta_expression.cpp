#include "dgd/eta_expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dgd {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const EtaContext& ctx) : text_(text), ctx_(ctx) {}

  double parse() {
    const double v = sum();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  double sum() {
    double v = product();
    for (;;) {
      if (accept('+')) v += product();
      else if (accept('-')) v -= product();
      else return v;
    }
  }

  double product() {
    double v = unary();
    for (;;) {
      if (accept('*')) v *= unary();
      else if (accept('/')) v /= unary();
      else return v;
    }
  }

  double unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  double primary() {
    skip_space();
    if (accept('(')) {
      const double v = sum();
      if (!accept(')')) fail("missing ')'");
      return v;
    }
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  double number() {
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v,
                                     std::chars_format::general);
    if (res.ec != std::errc()) fail("bad number");
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return v;
  }

  double identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "L") return ctx_.L;
    if (name == "tau") return ctx_.tau;
    if (name == "mu") return ctx_.mu;
    if (name == "zeta") return ctx_.zeta;
    if (name == "q") return ctx_.q;
    if (name == "max_step") {
      if (std::isnan(ctx_.max_step)) fail("max_step is undefined for this problem");
      return ctx_.max_step;
    }
    fail("unknown identifier '" + std::string(name) + "'");
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("eta expression '" + std::string(text_) + "' at " +
                                std::to_string(pos_) + ": " + what);
  }

  std::string_view text_;
  const EtaContext& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

double evaluate_eta(std::string_view expression, const EtaContext& context) {
  const double v = Parser(expression, context).parse();
  if (!std::isfinite(v) || !(v > 0.0)) {
    throw std::invalid_argument("eta expression '" + std::string(expression) +
                                "' does not evaluate to a positive finite number");
  }
  return v;
}

}  // namespace dgd
