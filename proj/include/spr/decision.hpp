#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spr/grammar.hpp"
#include "spr/recognizer.hpp"
#include "spr/spgraph.hpp"

namespace spr {

/// Least fixpoint: x is productive when some rule for x has only productive
/// nonterminals on its right-hand side.
std::set<std::string> productive_nonterminals(const Grammar& g);
bool is_empty(const Grammar& g);

/// A member of L(g) with the fewest edges, ties broken by the canonical order.
std::optional<SPGraph> shortest_member(const Grammar& g);

/// Per nonterminal of a grammar, the recognizer values of its ground
/// derivations, each with a minimal witness graph.
struct ValueTable {
  std::map<std::string, std::map<Profile, SPGraph>> values;
  std::size_t iterations = 0;
  std::size_t combinations = 0;

  std::size_t size() const;
  /// Values of x sorted by witness order.
  std::vector<std::pair<Profile, SPGraph>> sorted(const std::string& x) const;
};

/// Labels of g1 missing from ctx2's alphabet evaluate to the empty S-profile.
ValueTable derivable_values(const Grammar& g1, const RecognizerCtx& ctx2);

enum class FilterMode { Accept, Reject };

/// Annotated grammar for L(g1) intersected with L(g2) (Accept) or with its
/// complement (Reject). Annotated names are `x$v<i>`, i indexing the values
/// of x in witness order; only annotations reachable from an axiom are kept.
Grammar filter_grammar(const Grammar& g1, const Grammar& g2, FilterMode mode);

struct DecisionStats {
  std::size_t profiles_explored = 0;
  std::size_t iterations = 0;
  double wall_ms = 0;
};

struct IntersectionResult {
  bool empty = true;
  /// False when the profile cap stopped the closure before an answer.
  bool decided = true;
  std::optional<SPGraph> witness;
  DecisionStats stats;
};

/// Product closure over the recognizers of all grammars, restricted to the
/// labels common to every alphabet.
IntersectionResult intersection_empty(const std::vector<Grammar>& grammars, std::size_t cap = 1000000);

struct InclusionResult {
  bool holds = true;
  std::optional<SPGraph> witness;
  DecisionStats stats;
};

/// L(g1) within L(g2); g1 arbitrary, g2 regular. A counterexample is the
/// minimal witness among rejected axiom values.
InclusionResult inclusion(const Grammar& g1, const Grammar& g2);

struct CardinalityBound {
  boost::multiprecision::cpp_int p_bound;
  boost::multiprecision::cpp_int s_bound;
  boost::multiprecision::cpp_int total;
  std::size_t s_count = 0;
  std::size_t p_count = 0;
  unsigned b_max = 0;
  unsigned p_max = 0;
  bool has_a_rules = false;
};

/// Upper bound on the recognizer size, evaluated on the normalized
/// alternative form of g.
CardinalityBound bound_cardinality_detail(const Grammar& g);
boost::multiprecision::cpp_int bound_cardinality(const Grammar& g);

}  // namespace spr
