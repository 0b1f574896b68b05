#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spr {

/// Raised for malformed or inconsistent user input (terms, grammars).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Syntax error carrying the 0-based offset into the parsed text.
class ParseError : public InputError {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : InputError(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Untyped parse tree shared by SP terms and grammar right-hand sides.
/// Atoms are identifiers with an optional `^k` exponent (0 when absent).
struct Expr {
  enum class Kind { Atom, Serial, Parallel };
  Kind kind = Kind::Atom;
  std::string name;
  unsigned exponent = 0;
  std::size_t pos = 0;
  std::shared_ptr<const Expr> left;
  std::shared_ptr<const Expr> right;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Parses `.`/`||` expressions: `.` binds tighter, both left-associative,
/// parentheses group, `#` starts a comment running to end of line.
ExprPtr parse_expr(std::string_view text);

/// True for identifiers accepted as alphabet labels: [a-z][a-z0-9_]*.
bool is_label_token(std::string_view s);

/// True for identifiers accepted as nonterminal names.
bool is_name_token(std::string_view s);

}  // namespace spr
