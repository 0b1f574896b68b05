#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spr/grammar.hpp"
#include "spr/recognizer.hpp"
#include "spr/spgraph.hpp"

namespace spr {

using GraphSet = std::set<SPGraph>;

/// Per nonterminal, its derivable graphs with at most `n` edges. With
/// `context_budget`, a nonterminal only keeps graphs small enough to fit in
/// some derivation from an axiom, which is exact for language_upto.
std::map<std::string, GraphSet> language_table(const Grammar& g, std::size_t n, bool context_budget = false);

/// Members of L(g) with at most `n` edges.
GraphSet language_upto(const Grammar& g, std::size_t n);

/// Brute-force views of small graphs under the normalized alternative form
/// held by a recognizer context, computed from derivations rather than from
/// the recognizer operations.
class ViewOracle {
 public:
  ViewOracle(const RecognizerCtx& ctx, std::size_t max_edges);

  /// Monomial views of a P-graph for one P-nonterminal, normalized.
  TermNF p_views(const SPGraph& g, std::uint32_t p) const;
  /// Pairs (s, q) such that s derives g . q, or g itself when q is bottom.
  SProfile s_views(const SPGraph& g) const;
  /// p_views for every P-nonterminal, or s_views, depending on the kind of g.
  Profile profile(const SPGraph& g) const;

  std::size_t max_edges() const { return max_edges_; }

 private:
  using Form = std::pair<SPGraph, std::string>;  // empty q is bottom
  const RecognizerCtx& ctx_;
  std::size_t max_edges_;
  std::map<std::string, GraphSet> lang_;
  std::map<std::string, std::set<Form>> forms_;
};

TermNF enumerate_p_views(const SPGraph& g, const RecognizerCtx& ctx, std::uint32_t p);
SProfile enumerate_s_views(const SPGraph& g, const RecognizerCtx& ctx);

struct RandomGrammarOptions {
  unsigned max_p = 3;
  unsigned max_s = 4;
  unsigned min_rules = 4;
  unsigned max_rules = 12;
  unsigned max_period = 3;
  unsigned max_exponent = 2;
};

/// A random regular grammar over {a} or {a, b}.
Grammar random_regular_grammar(std::mt19937_64& rng, const RandomGrammarOptions& opts = {});

/// A random SP graph with exactly `edges` edges over `alphabet`.
SPGraph random_graph(std::mt19937_64& rng, std::size_t edges, const std::vector<std::string>& alphabet);

/// The lower-bound family over labels a, b, c, dollar, hash: graphs
/// (c || (w . v)) . u where w is a sequence of blocks x dollar y hash over
/// {a, b} containing the block u dollar v hash, for u, v of length k.
Grammar gen_worstcase(unsigned k);

/// The same construction with u and v restricted to `words`.
Grammar gen_worstcase_words(unsigned k, const std::vector<std::string>& words);

}  // namespace spr
