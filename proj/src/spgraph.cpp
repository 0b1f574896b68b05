#include "spr/spgraph.hpp"

#include <algorithm>
#include <unordered_set>

namespace spr {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

SPTerm SPTerm::bridge(std::string label) {
  return SPTerm(std::make_shared<const Node>(Node{Kind::Bridge, std::move(label), nullptr, nullptr}));
}

SPTerm SPTerm::serial(SPTerm left, SPTerm right) {
  return SPTerm(std::make_shared<const Node>(
      Node{Kind::Serial, {}, std::make_shared<const SPTerm>(std::move(left)),
           std::make_shared<const SPTerm>(std::move(right))}));
}

SPTerm SPTerm::parallel(SPTerm left, SPTerm right) {
  return SPTerm(std::make_shared<const Node>(
      Node{Kind::Parallel, {}, std::make_shared<const SPTerm>(std::move(left)),
           std::make_shared<const SPTerm>(std::move(right))}));
}

std::string SPTerm::to_string() const {
  switch (kind()) {
    case Kind::Bridge:
      return label();
    case Kind::Serial:
      return "(" + left().to_string() + " . " + right().to_string() + ")";
    case Kind::Parallel:
      return "(" + left().to_string() + " || " + right().to_string() + ")";
  }
  return {};
}

SPGraph SPGraph::bridge(std::string label) {
  std::size_t h = mix(std::hash<std::string>{}(label), 1);
  return SPGraph(std::make_shared<const Node>(Node{Kind::Bridge, std::move(label), {}, 1, h}));
}

SPGraph SPGraph::make(Kind kind, std::vector<SPGraph> children) {
  if (kind == Kind::Parallel) std::sort(children.begin(), children.end());
  std::size_t edges = 0;
  std::size_t h = kind == Kind::Serial ? 2 : 3;
  for (const auto& c : children) {
    edges += c.edge_count();
    h = mix(h, c.hash());
  }
  return SPGraph(std::make_shared<const Node>(Node{kind, {}, std::move(children), edges, h}));
}

bool operator==(const SPGraph& a, const SPGraph& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.edge_count() != b.edge_count()) {
    return false;
  }
  if (a.is_bridge()) return a.label() == b.label();
  return a.children() == b.children();
}

std::strong_ordering operator<=>(const SPGraph& a, const SPGraph& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (a.kind() != b.kind()) {
    return static_cast<int>(a.kind()) <=> static_cast<int>(b.kind());
  }
  if (a.is_bridge()) {
    int c = a.label().compare(b.label());
    return c <=> 0;
  }
  const auto& ca = a.children();
  const auto& cb = b.children();
  std::size_t n = std::min(ca.size(), cb.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = ca[i] <=> cb[i];
    if (c != 0) return c;
  }
  return ca.size() <=> cb.size();
}

SPGraph compose_serial(const SPGraph& g1, const SPGraph& g2) {
  std::vector<SPGraph> children;
  children.reserve((g1.is_serial() ? g1.children().size() : 1) +
                   (g2.is_serial() ? g2.children().size() : 1));
  for (const SPGraph* g : {&g1, &g2}) {
    if (g->is_serial()) {
      children.insert(children.end(), g->children().begin(), g->children().end());
    } else {
      children.push_back(*g);
    }
  }
  return SPGraph::make(SPGraph::Kind::Serial, std::move(children));
}

SPGraph compose_parallel(const SPGraph& g1, const SPGraph& g2) {
  std::vector<SPGraph> children;
  for (const SPGraph* g : {&g1, &g2}) {
    if (g->is_parallel()) {
      children.insert(children.end(), g->children().begin(), g->children().end());
    } else {
      children.push_back(*g);
    }
  }
  return SPGraph::make(SPGraph::Kind::Parallel, std::move(children));
}

std::string SPGraph::to_string() const {
  if (is_bridge()) return label();
  std::string out;
  const char* sep = is_serial() ? " . " : " || ";
  for (std::size_t i = 0; i < children().size(); ++i) {
    if (i > 0) out += sep;
    const SPGraph& c = children()[i];
    if (is_serial() && c.is_parallel()) {
      out += "(" + c.to_string() + ")";
    } else {
      out += c.to_string();
    }
  }
  return out;
}

bool witness_less(const SPGraph& a, const SPGraph& b) {
  if (a.edge_count() != b.edge_count()) return a.edge_count() < b.edge_count();
  return a < b;
}

namespace {

SPTerm term_from_expr(const Expr& e, const std::set<std::string>* alphabet) {
  switch (e.kind) {
    case Expr::Kind::Atom:
      if (e.exponent != 0) throw ParseError("exponent not allowed in SP terms", e.pos);
      if (alphabet != nullptr && alphabet->count(e.name) == 0) {
        throw ParseError("undeclared label '" + e.name + "'", e.pos);
      }
      if (alphabet == nullptr && !is_label_token(e.name)) {
        throw ParseError("invalid label '" + e.name + "'", e.pos);
      }
      return SPTerm::bridge(e.name);
    case Expr::Kind::Serial:
      return SPTerm::serial(term_from_expr(*e.left, alphabet), term_from_expr(*e.right, alphabet));
    case Expr::Kind::Parallel:
      return SPTerm::parallel(term_from_expr(*e.left, alphabet),
                              term_from_expr(*e.right, alphabet));
  }
  throw ParseError("malformed term", e.pos);
}

}  // namespace

SPTerm parse_term(std::string_view text, const std::set<std::string>* alphabet) {
  return term_from_expr(*parse_expr(text), alphabet);
}

SPGraph canonicalize(const SPTerm& t) {
  switch (t.kind()) {
    case SPTerm::Kind::Bridge:
      return SPGraph::bridge(t.label());
    case SPTerm::Kind::Serial:
      return compose_serial(canonicalize(t.left()), canonicalize(t.right()));
    case SPTerm::Kind::Parallel:
      return compose_parallel(canonicalize(t.left()), canonicalize(t.right()));
  }
  return SPGraph::bridge(t.label());
}

SPTerm to_term(const SPGraph& g) {
  if (g.is_bridge()) return SPTerm::bridge(g.label());
  SPTerm acc = to_term(g.children().front());
  for (std::size_t i = 1; i < g.children().size(); ++i) {
    SPTerm next = to_term(g.children()[i]);
    acc = g.is_serial() ? SPTerm::serial(acc, next) : SPTerm::parallel(acc, next);
  }
  return acc;
}

SPGraph parse_graph(std::string_view text, const std::set<std::string>* alphabet) {
  return canonicalize(parse_term(text, alphabet));
}

std::size_t edge_count(const SPGraph& g) { return g.edge_count(); }

std::vector<SPGraph> enumerate_graphs(const std::set<std::string>& alphabet,
                                      std::size_t max_edges) {
  std::vector<std::vector<SPGraph>> by_size(max_edges + 1);
  for (const auto& a : alphabet) by_size[1].push_back(SPGraph::bridge(a));
  for (std::size_t k = 2; k <= max_edges; ++k) {
    std::unordered_set<SPGraph, SPGraphHash> level;
    for (std::size_t i = 1; i < k; ++i) {
      for (const auto& g1 : by_size[i]) {
        for (const auto& g2 : by_size[k - i]) {
          level.insert(compose_serial(g1, g2));
          if (i <= k - i) level.insert(compose_parallel(g1, g2));
        }
      }
    }
    by_size[k].assign(level.begin(), level.end());
    std::sort(by_size[k].begin(), by_size[k].end());
  }
  std::vector<SPGraph> out;
  for (auto& level : by_size) out.insert(out.end(), level.begin(), level.end());
  return out;
}

}  // namespace spr
