#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spr/syntax.hpp"

namespace spr {

/// Binary SP term over bridges: Bridge(label) | Serial(l, r) | Parallel(l, r).
class SPTerm {
 public:
  enum class Kind { Bridge, Serial, Parallel };

  static SPTerm bridge(std::string label);
  static SPTerm serial(SPTerm left, SPTerm right);
  static SPTerm parallel(SPTerm left, SPTerm right);

  Kind kind() const { return node_->kind; }
  const std::string& label() const { return node_->label; }
  const SPTerm& left() const { return *node_->left; }
  const SPTerm& right() const { return *node_->right; }

  std::string to_string() const;

 private:
  struct Node {
    Kind kind;
    std::string label;
    std::shared_ptr<const SPTerm> left;
    std::shared_ptr<const SPTerm> right;
  };
  explicit SPTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Canonical decomposition tree of an SP graph. Serial nodes hold an ordered
/// list of bridges and parallel nodes; parallel nodes hold a sorted multiset
/// of bridges and serial nodes. Structural equality is graph isomorphism.
class SPGraph {
 public:
  enum class Kind { Bridge, Serial, Parallel };

  static SPGraph bridge(std::string label);

  Kind kind() const { return node_->kind; }
  bool is_bridge() const { return node_->kind == Kind::Bridge; }
  bool is_serial() const { return node_->kind == Kind::Serial; }
  bool is_parallel() const { return node_->kind == Kind::Parallel; }
  const std::string& label() const { return node_->label; }
  const std::vector<SPGraph>& children() const { return node_->children; }
  std::size_t edge_count() const { return node_->edges; }
  std::size_t hash() const { return node_->hash; }

  /// Term syntax rendering; parsing it back yields the same graph.
  std::string to_string() const;

  friend bool operator==(const SPGraph& a, const SPGraph& b);
  /// Total order: Bridge < Serial < Parallel; bridges by label, composite
  /// nodes lexicographically by child sequence.
  friend std::strong_ordering operator<=>(const SPGraph& a, const SPGraph& b);

  friend SPGraph compose_serial(const SPGraph& g1, const SPGraph& g2);
  friend SPGraph compose_parallel(const SPGraph& g1, const SPGraph& g2);

 private:
  struct Node {
    Kind kind;
    std::string label;
    std::vector<SPGraph> children;
    std::size_t edges;
    std::size_t hash;
  };
  explicit SPGraph(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static SPGraph make(Kind kind, std::vector<SPGraph> children);
  std::shared_ptr<const Node> node_;
};

SPGraph compose_serial(const SPGraph& g1, const SPGraph& g2);
SPGraph compose_parallel(const SPGraph& g1, const SPGraph& g2);

/// Orders witnesses: fewer edges first, then the canonical graph order.
bool witness_less(const SPGraph& a, const SPGraph& b);

/// Parses the term syntax. When `alphabet` is given, every label must be in it.
SPTerm parse_term(std::string_view text, const std::set<std::string>* alphabet = nullptr);

/// Flattens serial chains, merges and sorts parallel multisets.
SPGraph canonicalize(const SPTerm& t);

/// Reads a graph back as a left-associated term.
SPTerm to_term(const SPGraph& g);

/// Convenience: parse_term followed by canonicalize.
SPGraph parse_graph(std::string_view text, const std::set<std::string>* alphabet = nullptr);

std::size_t edge_count(const SPGraph& g);

/// All canonical SP graphs over `alphabet` with between 1 and `max_edges`
/// edges, ordered by edge count and then by the canonical order.
std::vector<SPGraph> enumerate_graphs(const std::set<std::string>& alphabet,
                                      std::size_t max_edges);

struct SPGraphHash {
  std::size_t operator()(const SPGraph& g) const { return g.hash(); }
};

}  // namespace spr
