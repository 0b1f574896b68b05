#include "spr/syntax.hpp"

#include <cctype>

namespace spr {

namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class ExprParser {
 public:
  explicit ExprParser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = parse_parallel();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    return e;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool accept(std::string_view tok) {
    skip_space();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  static ExprPtr binary(Expr::Kind kind, ExprPtr l, ExprPtr r, std::size_t pos) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = pos;
    e->left = std::move(l);
    e->right = std::move(r);
    return e;
  }

  ExprPtr parse_parallel() {
    ExprPtr lhs = parse_serial();
    for (;;) {
      skip_space();
      std::size_t at = pos_;
      if (!accept("||")) return lhs;
      lhs = binary(Expr::Kind::Parallel, lhs, parse_serial(), at);
    }
  }

  ExprPtr parse_serial() {
    ExprPtr lhs = parse_primary();
    for (;;) {
      skip_space();
      std::size_t at = pos_;
      if (!accept(".")) return lhs;
      lhs = binary(Expr::Kind::Serial, lhs, parse_primary(), at);
    }
  }

  ExprPtr parse_primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    std::size_t at = pos_;
    if (accept("(")) {
      ExprPtr inner = parse_parallel();
      if (!accept(")")) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (!is_ident_start(text_[pos_])) {
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Atom;
    e->pos = at;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) e->name += text_[pos_++];
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      std::size_t digits = pos_;
      unsigned long value = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = value * 10 + static_cast<unsigned long>(text_[pos_++] - '0');
        if (value > 1000000) throw ParseError("exponent too large", digits);
      }
      if (pos_ == digits) throw ParseError("expected exponent after '^'", digits);
      if (value == 0) throw ParseError("exponent must be at least 1", digits);
      e->exponent = static_cast<unsigned>(value);
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

bool is_label_token(std::string_view s) {
  if (s.empty() || !(s[0] >= 'a' && s[0] <= 'z')) return false;
  for (char c : s) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) return false;
  }
  return true;
}

bool is_name_token(std::string_view s) {
  if (s.empty() || !is_ident_start(s[0])) return false;
  for (char c : s) {
    if (!is_ident_char(c)) return false;
  }
  return true;
}

}  // namespace spr
