#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "spr/grammar.hpp"
#include "spr/spgraph.hpp"
#include "spr/termalg.hpp"

namespace spr {

/// Relation between S-nonterminals and S, P or bottom, stored as a bit
/// matrix with one row per S-nonterminal. Column layout is fixed by the
/// context: S ids, then P ids, then bottom.
struct SProfile {
  std::vector<std::uint64_t> bits;
  friend bool operator==(const SProfile&, const SProfile&) = default;
  friend auto operator<=>(const SProfile&, const SProfile&) = default;
};

/// One normal-form term per P-nonterminal.
struct PProfile {
  std::vector<TermNF> per_p;
  friend bool operator==(const PProfile&, const PProfile&) = default;
  friend auto operator<=>(const PProfile& a, const PProfile& b) { return a.per_p <=> b.per_p; }
};

using Profile = std::variant<SProfile, PProfile>;

std::size_t hash_value(const Profile& x);

struct ProfileHash {
  std::size_t operator()(const Profile& x) const { return hash_value(x); }
};

/// Everything needed to evaluate graphs in the recognizer algebra of a
/// regular grammar, built from its normalized alternative form.
class RecognizerCtx {
 public:
  Grammar source;
  Grammar grammar;
  BasePeriodTable table;

  std::vector<std::string> s_names;  // sorted, id = index
  std::vector<std::string> p_names;  // sorted, id = index
  std::map<std::string, std::uint32_t> s_id;
  std::map<std::string, std::uint32_t> p_id;

  /// Per P-nonterminal: variables are all S ids, classified only on B_p and Pi_p.
  std::vector<NfContext> p_ctx;
  /// Per P-nonterminal: reduced monomials m with p ~> m (B-rules and Alt rules).
  std::vector<std::vector<Monomial>> accepting;
  /// Per P-nonterminal: (s, column) for every rule s -> p . q.
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> seq_pairs;
  std::map<std::string, SProfile> bridges;
  std::vector<std::uint32_t> s_axioms;
  std::vector<std::uint32_t> p_axioms;

  std::size_t ns() const { return s_names.size(); }
  std::size_t np() const { return p_names.size(); }
  std::size_t cols() const { return ns() + np() + 1; }
  std::size_t words_per_row() const { return (cols() + 63) / 64; }
  std::uint32_t bot() const { return static_cast<std::uint32_t>(ns() + np()); }
  std::uint32_t p_column(std::uint32_t p) const { return static_cast<std::uint32_t>(ns() + p); }

  SProfile empty_sprofile() const;
  bool test(const SProfile& x, std::uint32_t s, std::uint32_t col) const;
  void set(SProfile& x, std::uint32_t s, std::uint32_t col) const;
  /// Column name: S or P nonterminal, or "⊥".
  std::string column_name(std::uint32_t col) const;
};

RecognizerCtx build_ctx(const Grammar& g);

/// Profile of a single bridge; throws for labels outside the alphabet.
SProfile bridge_profile(const std::string& label, const RecognizerCtx& ctx);

std::vector<TermNF> par_map(const Profile& x, const RecognizerCtx& ctx);
SProfile seq_map(const Profile& x, const RecognizerCtx& ctx);

/// Per P-nonterminal p: whether par(x)_p contains a monomial m with p ~> m.
std::vector<bool> accepting_components(const std::vector<TermNF>& par, const RecognizerCtx& ctx);

/// Serial composition from precomputed parts: seq(x1), seq(x2) and the
/// accepting components of par(x2).
SProfile serial_parts(const SProfile& seq1, const SProfile& seq2, const std::vector<bool>& acc2,
                      const RecognizerCtx& ctx);
/// Parallel composition from the two par images.
PProfile parallel_parts(const std::vector<TermNF>& par1, const std::vector<TermNF>& par2,
                        const RecognizerCtx& ctx);

Profile op_parallel(const Profile& x1, const Profile& x2, const RecognizerCtx& ctx);
Profile op_serial(const Profile& x1, const Profile& x2, const RecognizerCtx& ctx);

Profile eval_graph(const SPGraph& g, const RecognizerCtx& ctx);
bool accepts(const Profile& x, const RecognizerCtx& ctx);

/// Membership of g in L(grammar); false when g uses labels outside the alphabet.
bool member(const SPGraph& g, const Grammar& grammar);
bool member(const SPGraph& g, const RecognizerCtx& ctx);

/// True when every label of g is in the context's alphabet.
bool labels_within(const SPGraph& g, const RecognizerCtx& ctx);

struct ReachableProfiles {
  std::vector<Profile> profiles;
  bool saturated = false;
  std::size_t s_count = 0;
  std::size_t p_count = 0;
  std::size_t explored = 0;
  std::size_t levels = 0;
};

/// Least set containing the bridge profiles and closed under both
/// operations; stops with saturated = false once more than `cap` profiles
/// are known.
ReachableProfiles reachable_profiles(const RecognizerCtx& ctx, std::size_t cap);

std::string to_string(const Profile& x, const RecognizerCtx& ctx);
/// JSON text: SProfile as sorted [s, q] pairs, PProfile as p -> term string.
std::string to_json(const Profile& x, const RecognizerCtx& ctx);

}  // namespace spr
