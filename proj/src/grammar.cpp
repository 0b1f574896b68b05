#include "spr/grammar.hpp"

#include <algorithm>
#include <sstream>

namespace spr {

// ---------------------------------------------------------------------------
// RhsTerm

RhsTerm RhsTerm::label(std::string name) {
  return RhsTerm(std::make_shared<const Node>(Node{Kind::Label, std::move(name), nullptr, nullptr}));
}

RhsTerm RhsTerm::var(std::string name) {
  return RhsTerm(std::make_shared<const Node>(Node{Kind::Var, std::move(name), nullptr, nullptr}));
}

RhsTerm RhsTerm::serial(RhsTerm l, RhsTerm r) {
  return RhsTerm(std::make_shared<const Node>(Node{Kind::Serial, {},
                                                   std::make_shared<const RhsTerm>(std::move(l)),
                                                   std::make_shared<const RhsTerm>(std::move(r))}));
}

RhsTerm RhsTerm::parallel(RhsTerm l, RhsTerm r) {
  return RhsTerm(std::make_shared<const Node>(Node{Kind::Parallel, {},
                                                   std::make_shared<const RhsTerm>(std::move(l)),
                                                   std::make_shared<const RhsTerm>(std::move(r))}));
}

std::vector<std::string> RhsTerm::vars() const {
  std::vector<std::string> out;
  std::vector<const RhsTerm*> stack{this};
  while (!stack.empty()) {
    const RhsTerm* t = stack.back();
    stack.pop_back();
    switch (t->kind()) {
      case Kind::Var:
        out.push_back(t->name());
        break;
      case Kind::Label:
        break;
      default:
        stack.push_back(&t->right());
        stack.push_back(&t->left());
    }
  }
  return out;
}

RhsTerm RhsTerm::rename_from(const std::vector<std::string>& names, std::size_t& next) const {
  switch (kind()) {
    case Kind::Label:
      return *this;
    case Kind::Var:
      return var(names.at(next++));
    case Kind::Serial: {
      RhsTerm l = left().rename_from(names, next);
      return serial(l, right().rename_from(names, next));
    }
    case Kind::Parallel: {
      RhsTerm l = left().rename_from(names, next);
      return parallel(l, right().rename_from(names, next));
    }
  }
  return *this;
}

RhsTerm RhsTerm::rename_vars(const std::vector<std::string>& names) const {
  std::size_t next = 0;
  return rename_from(names, next);
}

std::size_t RhsTerm::size() const {
  if (kind() == Kind::Label || kind() == Kind::Var) return 1;
  return 1 + left().size() + right().size();
}

std::string RhsTerm::to_string() const {
  switch (kind()) {
    case Kind::Label:
    case Kind::Var:
      return name();
    case Kind::Serial: {
      auto wrap = [](const RhsTerm& t, bool right_side) {
        bool paren = t.kind() == Kind::Parallel || (right_side && t.kind() == Kind::Serial);
        return paren ? "(" + t.to_string() + ")" : t.to_string();
      };
      return wrap(left(), false) + " . " + wrap(right(), true);
    }
    case Kind::Parallel: {
      std::string r = right().to_string();
      if (right().kind() == Kind::Parallel) r = "(" + r + ")";
      return left().to_string() + " || " + r;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Rules

namespace {

RhsTerm power(const std::string& s, unsigned k) {
  RhsTerm t = RhsTerm::var(s);
  for (unsigned i = 1; i < k; ++i) t = RhsTerm::parallel(t, RhsTerm::var(s));
  return t;
}

std::string power_string(const std::string& s, unsigned k) {
  return k == 1 ? s : s + "^" + std::to_string(k);
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

const std::string& rule_lhs(const Rule& r) {
  return std::visit(Overloaded{[](const RuleA& x) -> const std::string& { return x.p; },
                               [](const RuleB& x) -> const std::string& { return x.p; },
                               [](const RuleC& x) -> const std::string& { return x.s; },
                               [](const RuleD& x) -> const std::string& { return x.s; },
                               [](const RuleE& x) -> const std::string& { return x.p; },
                               [](const RuleF& x) -> const std::string& { return x.s; },
                               [](const RuleAlt& x) -> const std::string& { return x.p; },
                               [](const RuleFree& x) -> const std::string& { return x.x; }},
                    r);
}

RhsTerm rule_rhs(const Rule& r) {
  return std::visit(
      Overloaded{[](const RuleA& x) { return RhsTerm::parallel(RhsTerm::var(x.p), power(x.s, x.ell)); },
                 [](const RuleB& x) {
                   RhsTerm t = power(x.body.front().first, x.body.front().second);
                   for (std::size_t i = 1; i < x.body.size(); ++i) {
                     t = RhsTerm::parallel(t, power(x.body[i].first, x.body[i].second));
                   }
                   return t;
                 },
                 [](const RuleC& x) { return RhsTerm::serial(RhsTerm::var(x.p), RhsTerm::var(x.s1)); },
                 [](const RuleD& x) { return RhsTerm::serial(RhsTerm::var(x.p1), RhsTerm::var(x.p2)); },
                 [](const RuleE& x) { return RhsTerm::label(x.a); },
                 [](const RuleF& x) { return RhsTerm::label(x.a); },
                 [](const RuleAlt& x) { return RhsTerm::var(x.s); },
                 [](const RuleFree& x) { return x.rhs; }},
      r);
}

std::string rule_to_string(const Rule& r) {
  std::string rhs = std::visit(
      Overloaded{[](const RuleA& x) {
                   return x.p + " || " + x.s + "^" + std::to_string(x.ell);
                 },
                 [](const RuleB& x) {
                   if (x.body.size() == 1) return x.body[0].first + "^" + std::to_string(x.body[0].second);
                   std::string out;
                   for (const auto& [s, l] : x.body) {
                     if (!out.empty()) out += " || ";
                     out += power_string(s, l);
                   }
                   return out;
                 },
                 [](const RuleC& x) { return x.p + " . " + x.s1; },
                 [](const RuleD& x) { return x.p1 + " . " + x.p2; },
                 [](const RuleE& x) { return x.a; },
                 [](const RuleF& x) { return x.a; },
                 [](const RuleAlt& x) { return x.s; },
                 [](const RuleFree& x) { return x.rhs.to_string(); }},
      r);
  return rule_lhs(r) + " -> " + rhs;
}

bool is_regular_rule(const Rule& r) {
  if (std::holds_alternative<RuleFree>(r) || std::holds_alternative<RuleAlt>(r)) return false;
  if (const auto* b = std::get_if<RuleB>(&r)) {
    unsigned sum = 0;
    for (const auto& [s, l] : b->body) sum += l;
    return sum >= 2;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Grammar

void Grammar::declare(const std::string& name, NtKind kind) {
  if (!is_name_token(name)) throw InputError("invalid nonterminal name '" + name + "'");
  if (alphabet.count(name) != 0) {
    throw InputError("nonterminal '" + name + "' clashes with a label");
  }
  auto it = nonterminals.find(name);
  if (it != nonterminals.end() && it->second != kind) {
    throw InputError("nonterminal '" + name + "' declared with both kinds");
  }
  nonterminals[name] = kind;
}

void Grammar::add_rule(Rule r) {
  std::string key = rule_to_string(r);
  for (const auto& existing : rules) {
    if (existing.index() == r.index() && rule_to_string(existing) == key) return;
  }
  rules.push_back(std::move(r));
}

bool Grammar::is_p(const std::string& name) const {
  auto it = nonterminals.find(name);
  return it != nonterminals.end() && it->second == NtKind::P;
}

bool Grammar::is_s(const std::string& name) const {
  auto it = nonterminals.find(name);
  return it != nonterminals.end() && it->second == NtKind::S;
}

std::vector<std::string> Grammar::names_of_kind(NtKind kind) const {
  std::vector<std::string> out;
  for (const auto& [n, k] : nonterminals) {
    if (k == kind) out.push_back(n);
  }
  return out;
}

std::string Grammar::fresh_name(const std::string& base) const {
  for (unsigned k = 1;; ++k) {
    std::string candidate = base + "$" + std::to_string(k);
    if (nonterminals.count(candidate) == 0 && alphabet.count(candidate) == 0) return candidate;
  }
}

namespace {

/// Number of A-rules per (p,s) and the periodic sets they induce.
std::map<std::string, std::map<std::string, unsigned>> count_a_rules(const Grammar& g) {
  std::map<std::string, std::map<std::string, unsigned>> count;
  for (const auto& r : g.rules) {
    if (const auto* a = std::get_if<RuleA>(&r)) ++count[a->p][a->s];
  }
  return count;
}

}  // namespace

bool Grammar::is_regular() const { return validate_regular(*this).regular; }

bool Grammar::is_normalized() const {
  if (!validate_regular(*this, true).regular) return false;
  auto count = count_a_rules(*this);
  for (const auto& [p, per_s] : count) {
    for (const auto& [s, n] : per_s) {
      if (n > 1) return false;
    }
  }
  for (const auto& r : rules) {
    if (const auto* b = std::get_if<RuleB>(&r)) {
      for (const auto& [s, l] : b->body) {
        auto it = count.find(b->p);
        if (it != count.end() && it->second.count(s) != 0) return false;
      }
    } else if (const auto* alt = std::get_if<RuleAlt>(&r)) {
      auto it = count.find(alt->p);
      if (it != count.end() && it->second.count(alt->s) != 0) return false;
    }
  }
  return true;
}

bool Grammar::is_alternative() const {
  if (!validate_regular(*this, true).regular) return false;
  std::set<std::string> targets;
  for (const auto& r : rules) {
    if (std::holds_alternative<RuleE>(r)) return false;
    if (const auto* alt = std::get_if<RuleAlt>(&r)) targets.insert(alt->s);
  }
  for (const auto& s : targets) {
    unsigned own = 0;
    for (const auto& r : rules) {
      if (rule_lhs(r) == s) {
        if (!std::holds_alternative<RuleF>(r)) return false;
        ++own;
      }
      if (std::holds_alternative<RuleAlt>(r)) continue;
      for (const auto& v : rule_rhs(r).vars()) {
        if (v == s) return false;
      }
    }
    if (own != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Classification and parsing

namespace {

void flatten_parallel(const RhsTerm& t, std::vector<const RhsTerm*>& items) {
  if (t.kind() == RhsTerm::Kind::Parallel) {
    flatten_parallel(t.left(), items);
    flatten_parallel(t.right(), items);
  } else {
    items.push_back(&t);
  }
}

RhsTerm expr_to_rhs(const Grammar& g, const Expr& e, bool in_parallel) {
  switch (e.kind) {
    case Expr::Kind::Atom: {
      bool is_label = g.alphabet.count(e.name) != 0;
      bool is_nt = g.nonterminals.count(e.name) != 0;
      if (!is_label && !is_nt) throw ParseError("undeclared symbol '" + e.name + "'", e.pos);
      if (e.exponent != 0) {
        if (!in_parallel || !g.is_s(e.name)) {
          throw ParseError("exponent allowed only on S-nonterminals inside parallel bodies", e.pos);
        }
        return power(e.name, e.exponent);
      }
      return is_label ? RhsTerm::label(e.name) : RhsTerm::var(e.name);
    }
    case Expr::Kind::Serial:
      return RhsTerm::serial(expr_to_rhs(g, *e.left, false), expr_to_rhs(g, *e.right, false));
    case Expr::Kind::Parallel:
      return RhsTerm::parallel(expr_to_rhs(g, *e.left, true), expr_to_rhs(g, *e.right, true));
  }
  throw ParseError("malformed rule", e.pos);
}

}  // namespace

Rule classify_rule(const Grammar& g, const std::string& lhs, const RhsTerm& rhs) {
  auto lk = g.nonterminals.find(lhs);
  if (lk == g.nonterminals.end()) throw InputError("undeclared nonterminal '" + lhs + "'");
  const bool lhs_p = lk->second == NtKind::P;
  std::vector<const RhsTerm*> items;
  flatten_parallel(rhs, items);

  if (items.size() == 1) {
    const RhsTerm& t = *items[0];
    if (t.kind() == RhsTerm::Kind::Label) {
      if (lhs_p) return RuleE{lhs, t.name()};
      return RuleF{lhs, t.name()};
    }
    if (t.kind() == RhsTerm::Kind::Var && lhs_p && g.is_s(t.name())) return RuleAlt{lhs, t.name()};
    if (t.kind() == RhsTerm::Kind::Serial && !lhs_p && t.left().kind() == RhsTerm::Kind::Var &&
        t.right().kind() == RhsTerm::Kind::Var && g.is_p(t.left().name())) {
      if (g.is_s(t.right().name())) return RuleC{lhs, t.left().name(), t.right().name()};
      if (g.is_p(t.right().name())) return RuleD{lhs, t.left().name(), t.right().name()};
    }
    return RuleFree{lhs, rhs};
  }

  bool all_vars = std::all_of(items.begin(), items.end(),
                              [](const RhsTerm* t) { return t->kind() == RhsTerm::Kind::Var; });
  if (all_vars) {
    std::map<std::string, unsigned> mult;
    for (const auto* t : items) ++mult[t->name()];
    auto self = mult.find(lhs);
    if (self != mult.end() && self->second == 1 && mult.size() == 2) {
      const auto& other = mult.begin()->first == lhs ? *std::next(mult.begin()) : *mult.begin();
      if (g.is_s(other.first)) {
        if (!lhs_p) {
          throw InputError("kind mismatch: rule '" + lhs + " -> " + rhs.to_string() +
                           "' has the A shape but its left-hand side is an S-nonterminal");
        }
        return RuleA{lhs, other.first, other.second};
      }
    }
    bool all_s = std::all_of(mult.begin(), mult.end(), [&](const auto& kv) { return g.is_s(kv.first); });
    if (lhs_p && all_s) {
      RuleB b{lhs, {}};
      for (const auto& [s, l] : mult) b.body.emplace_back(s, l);
      return b;
    }
  }
  return RuleFree{lhs, rhs};
}

Rule classify_rule(const Grammar& g, const std::string& lhs, const Expr& rhs) {
  if (rhs.kind == Expr::Kind::Atom && rhs.exponent != 0) {
    if (!g.is_s(rhs.name)) {
      throw ParseError("exponent allowed only on S-nonterminals inside parallel bodies", rhs.pos);
    }
    if (g.is_p(lhs)) return RuleB{lhs, {{rhs.name, rhs.exponent}}};
    if (rhs.exponent == 1) return classify_rule(g, lhs, RhsTerm::var(rhs.name));
    return RuleFree{lhs, power(rhs.name, rhs.exponent)};
  }
  return classify_rule(g, lhs, expr_to_rhs(g, rhs, false));
}

namespace {

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

InputError at_line(std::size_t line, const std::string& msg) {
  return InputError("line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Grammar parse_grammar(std::string_view text) {
  Grammar g;
  std::vector<std::string> p_names, s_names, axiom_names;
  std::vector<std::pair<std::size_t, std::string>> rule_lines;
  bool in_rules = false;

  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    auto colon = line.find(':');
    auto arrow = line.find("->");
    bool header = colon != std::string::npos && (arrow == std::string::npos || colon < arrow);
    if (header) {
      std::string key = trim(line.substr(0, colon));
      auto words = split_words(line.substr(colon + 1));
      if (key == "alphabet") {
        for (const auto& w : words) {
          if (!is_label_token(w)) throw at_line(lineno, "invalid label '" + w + "'");
          g.alphabet.insert(w);
        }
      } else if (key == "pnonterminals") {
        p_names.insert(p_names.end(), words.begin(), words.end());
      } else if (key == "snonterminals") {
        s_names.insert(s_names.end(), words.begin(), words.end());
      } else if (key == "axioms") {
        axiom_names.insert(axiom_names.end(), words.begin(), words.end());
      } else if (key == "rules") {
        in_rules = true;
        std::string rest = trim(line.substr(colon + 1));
        if (!rest.empty()) rule_lines.emplace_back(lineno, rest);
      } else {
        throw at_line(lineno, "unknown section '" + key + "'");
      }
      continue;
    }
    if (!in_rules) throw at_line(lineno, "rule outside the rules section");
    rule_lines.emplace_back(lineno, line);
  }

  try {
    for (const auto& n : p_names) g.declare(n, NtKind::P);
    for (const auto& n : s_names) g.declare(n, NtKind::S);
  } catch (const InputError& e) {
    throw InputError(std::string("declarations: ") + e.what());
  }
  for (const auto& a : axiom_names) {
    if (g.nonterminals.count(a) == 0) throw InputError("undeclared axiom '" + a + "'");
    g.axioms.insert(a);
  }
  for (const auto& [ln, line] : rule_lines) {
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw at_line(ln, "expected '->'");
    std::string lhs = trim(line.substr(0, arrow));
    if (g.nonterminals.count(lhs) == 0) throw at_line(ln, "undeclared nonterminal '" + lhs + "'");
    try {
      ExprPtr rhs = parse_expr(line.substr(arrow + 2));
      g.add_rule(classify_rule(g, lhs, *rhs));
    } catch (const InputError& e) {
      throw at_line(ln, e.what());
    }
  }
  return g;
}

std::string write_grammar(const Grammar& g) {
  std::ostringstream out;
  auto join = [](const auto& xs) {
    std::string s;
    for (const auto& x : xs) s += " " + x;
    return s;
  };
  out << "alphabet:" << join(g.alphabet) << "\n";
  out << "pnonterminals:" << join(g.names_of_kind(NtKind::P)) << "\n";
  out << "snonterminals:" << join(g.names_of_kind(NtKind::S)) << "\n";
  out << "axioms:" << join(g.axioms) << "\n";
  out << "rules:\n";
  for (const auto& r : g.rules) out << rule_to_string(r) << "\n";
  return out.str();
}

RegularityReport validate_regular(const Grammar& g, bool allow_alt) {
  RegularityReport report;
  for (const auto& r : g.rules) {
    bool ok = is_regular_rule(r) || (allow_alt && std::holds_alternative<RuleAlt>(r));
    if (!ok) {
      report.regular = false;
      std::string why = std::holds_alternative<RuleB>(r)     ? " (exponent sum below 2)"
                        : std::holds_alternative<RuleAlt>(r) ? " (unit rule p -> s)"
                                                             : " (not of shape A-F)";
      report.offending.push_back(rule_to_string(r) + why);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Normalization and alternative form

namespace {

void copy_rules(const Grammar& source, const std::string& from, const std::string& to, Grammar& out) {
  out.declare(to, NtKind::S);
  for (const auto& r : source.rules) {
    if (rule_lhs(r) != from) continue;
    if (const auto* c = std::get_if<RuleC>(&r)) {
      out.add_rule(RuleC{to, c->p, c->s1});
    } else if (const auto* d = std::get_if<RuleD>(&r)) {
      out.add_rule(RuleD{to, d->p1, d->p2});
    } else if (const auto* f = std::get_if<RuleF>(&r)) {
      out.add_rule(RuleF{to, f->a});
    }
  }
}

}  // namespace

Grammar normalize(const Grammar& g) {
  auto report = validate_regular(g, true);
  if (!report.regular) throw InputError("normalize: grammar is not regular: " + report.offending.front());

  Grammar out = g;
  out.rules.clear();
  auto a_count = count_a_rules(g);

  // Several A-rules on the same (p,s): each gets its own copy of s.
  std::vector<std::pair<std::string, std::string>> copies;
  std::vector<Rule> rewritten;
  for (const auto& r : g.rules) {
    if (const auto* a = std::get_if<RuleA>(&r); a != nullptr && a_count[a->p][a->s] > 1) {
      std::string fresh = out.fresh_name(a->s);
      out.declare(fresh, NtKind::S);
      copies.emplace_back(a->s, fresh);
      rewritten.push_back(RuleA{a->p, fresh, a->ell});
    } else {
      rewritten.push_back(r);
    }
  }

  std::map<std::string, std::set<std::string>> periodic;
  for (const auto& r : rewritten) {
    if (const auto* a = std::get_if<RuleA>(&r)) periodic[a->p].insert(a->s);
  }

  // B-rule variables that are also periodic for the same p are renamed to a
  // copy, one copy per original variable.
  std::map<std::string, std::string> bounded_copy;
  auto copy_for = [&](const std::string& s) {
    auto it = bounded_copy.find(s);
    if (it != bounded_copy.end()) return it->second;
    std::string fresh = out.fresh_name(s);
    out.declare(fresh, NtKind::S);
    copies.emplace_back(s, fresh);
    bounded_copy[s] = fresh;
    return fresh;
  };
  for (auto& r : rewritten) {
    if (auto* b = std::get_if<RuleB>(&r)) {
      std::map<std::string, unsigned> body;
      for (const auto& [s, l] : b->body) {
        body[periodic[b->p].count(s) != 0 ? copy_for(s) : s] += l;
      }
      b->body.assign(body.begin(), body.end());
    }
    out.add_rule(r);
  }
  for (const auto& [from, to] : copies) copy_rules(g, from, to, out);
  return out;
}

Grammar to_alternative(const Grammar& g) {
  if (!g.is_normalized()) throw InputError("to_alternative: grammar is not regular and normalized");
  Grammar out = g;
  out.rules.clear();
  std::map<std::string, std::string> alt_of;
  for (const auto& r : g.rules) {
    const auto* e = std::get_if<RuleE>(&r);
    if (e == nullptr) {
      out.add_rule(r);
      continue;
    }
    auto it = alt_of.find(e->a);
    if (it == alt_of.end()) {
      std::string name = "$alt_" + e->a;
      if (out.nonterminals.count(name) != 0) name = out.fresh_name(name);
      out.declare(name, NtKind::S);
      out.add_rule(RuleF{name, e->a});
      it = alt_of.emplace(e->a, name).first;
    }
    out.add_rule(RuleAlt{e->p, it->second});
    if (g.axioms.count(e->p) != 0) out.axioms.insert(it->second);
  }
  return out;
}

BasePeriodTable compute_base_period(const Grammar& g) {
  auto report = validate_regular(g, true);
  if (!report.regular) throw InputError("compute_base_period: grammar is not regular");
  BasePeriodTable table;
  for (const auto& p : g.names_of_kind(NtKind::P)) {
    table.bounded[p];
    table.periodic[p];
  }
  for (const auto& r : g.rules) {
    if (const auto* a = std::get_if<RuleA>(&r)) {
      auto& per = table.periodic[a->p];
      if (per.count(a->s) != 0) {
        throw InputError("compute_base_period: several A-rules for (" + a->p + ", " + a->s +
                         "), the period is ambiguous; normalize first");
      }
      per[a->s] = a->ell;
    } else if (const auto* b = std::get_if<RuleB>(&r)) {
      for (const auto& [s, l] : b->body) {
        unsigned& base = table.bounded[b->p][s];
        base = std::max(base, l + 1);
      }
    } else if (const auto* alt = std::get_if<RuleAlt>(&r)) {
      unsigned& base = table.bounded[alt->p][alt->s];
      base = std::max(base, 2u);
    }
  }
  return table;
}

}  // namespace spr
