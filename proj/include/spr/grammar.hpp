#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "spr/spgraph.hpp"
#include "spr/syntax.hpp"

namespace spr {

enum class NtKind { P, S };

/// Right-hand side term of a rule: labels, nonterminal variables, and the
/// two SP operations. Exponents are expanded into repeated parallel copies.
class RhsTerm {
 public:
  enum class Kind { Label, Var, Serial, Parallel };

  static RhsTerm label(std::string name);
  static RhsTerm var(std::string name);
  static RhsTerm serial(RhsTerm l, RhsTerm r);
  static RhsTerm parallel(RhsTerm l, RhsTerm r);

  Kind kind() const { return node_->kind; }
  const std::string& name() const { return node_->name; }
  const RhsTerm& left() const { return *node_->left; }
  const RhsTerm& right() const { return *node_->right; }

  /// Nonterminal occurrences in left-to-right order.
  std::vector<std::string> vars() const;
  /// Replaces the i-th nonterminal occurrence by `names[i]`.
  RhsTerm rename_vars(const std::vector<std::string>& names) const;
  std::size_t size() const;
  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const RhsTerm> left;
    std::shared_ptr<const RhsTerm> right;
  };
  explicit RhsTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  RhsTerm rename_from(const std::vector<std::string>& names, std::size_t& next) const;
  std::shared_ptr<const Node> node_;
};

struct RuleA {  // p -> p || s^ell
  std::string p, s;
  unsigned ell = 1;
};
struct RuleB {  // p -> s1^l1 || ... || sk^lk, sorted by name, sum of exponents >= 2
  std::string p;
  std::vector<std::pair<std::string, unsigned>> body;
};
struct RuleC {  // s -> p . s1
  std::string s, p, s1;
};
struct RuleD {  // s -> p1 . p2
  std::string s, p1, p2;
};
struct RuleE {  // p -> a
  std::string p, a;
};
struct RuleF {  // s -> a
  std::string s, a;
};
struct RuleAlt {  // p -> s, with s deriving exactly one bridge
  std::string p, s;
};
struct RuleFree {  // x -> t
  std::string x;
  RhsTerm rhs;
};

using Rule = std::variant<RuleA, RuleB, RuleC, RuleD, RuleE, RuleF, RuleAlt, RuleFree>;

const std::string& rule_lhs(const Rule& r);
RhsTerm rule_rhs(const Rule& r);
std::string rule_to_string(const Rule& r);
bool is_regular_rule(const Rule& r);

struct Grammar {
  std::set<std::string> alphabet;
  std::map<std::string, NtKind> nonterminals;
  std::vector<Rule> rules;
  std::set<std::string> axioms;

  /// Declares a nonterminal; throws when the name clashes with a label or
  /// with a declaration of the other kind.
  void declare(const std::string& name, NtKind kind);
  /// Adds a rule unless an identical one is present (rules form a set).
  void add_rule(Rule r);
  bool is_p(const std::string& name) const;
  bool is_s(const std::string& name) const;
  std::vector<std::string> names_of_kind(NtKind kind) const;
  /// Returns `base$k` for the least k >= 1 not yet used as a name.
  std::string fresh_name(const std::string& base) const;

  bool is_regular() const;
  bool is_normalized() const;
  bool is_alternative() const;
};

/// Classifies `lhs -> rhs` into a rule variant given declared kinds. The
/// expression may carry `^k` exponents on S-atoms inside parallel bodies.
Rule classify_rule(const Grammar& g, const std::string& lhs, const Expr& rhs);

/// Classifies an already built term (no exponents).
Rule classify_rule(const Grammar& g, const std::string& lhs, const RhsTerm& rhs);

Grammar parse_grammar(std::string_view text);
std::string write_grammar(const Grammar& g);

struct RegularityReport {
  bool regular = true;
  std::vector<std::string> offending;
};

/// Accepts iff every rule has one of the shapes A-F; with `allow_alt` the
/// internal Alt rules of alternative grammars are also admitted.
RegularityReport validate_regular(const Grammar& g, bool allow_alt = false);

/// Produces an equivalent grammar with at most one A-rule per (p,s) and with
/// B-rule variables bounded but not periodic for their left-hand side.
Grammar normalize(const Grammar& g);

/// Replaces every E-rule p -> a by p -> $alt_a and $alt_a -> a.
Grammar to_alternative(const Grammar& g);

struct BasePeriodTable {
  std::map<std::string, std::map<std::string, unsigned>> bounded;
  std::map<std::string, std::map<std::string, unsigned>> periodic;
};

/// Bases (1 + max exponent over B and Alt rules) and periods (exponent of
/// the unique A-rule) per P-nonterminal.
BasePeriodTable compute_base_period(const Grammar& g);

}  // namespace spr
