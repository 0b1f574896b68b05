#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace spr {

using VarId = std::uint32_t;

struct VarClass {
  enum class Kind { Bounded, Periodic, Threshold };
  Kind kind;
  unsigned value;  // base, period or threshold

  static VarClass bounded(unsigned base);
  static VarClass periodic(unsigned period);
  static VarClass threshold(unsigned theta);
  friend bool operator==(const VarClass&, const VarClass&) = default;
};

/// Variable names and their classes. Variables are dense ids; a variable may
/// be registered without a class, in which case normalizing it is an error.
class NfContext {
 public:
  VarId add(const std::string& name, std::optional<VarClass> cls = std::nullopt);
  void set_class(VarId v, VarClass cls);
  std::optional<VarId> find(std::string_view name) const;
  VarId id(std::string_view name) const;
  const std::string& name(VarId v) const { return names_.at(v); }
  bool has_class(VarId v) const { return v < classes_.size() && classes_[v].has_value(); }
  const VarClass& cls(VarId v) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::vector<std::optional<VarClass>> classes_;
  std::map<std::string, VarId, std::less<>> index_;
};

/// Exponent map sorted by variable id, every exponent at least 1.
struct Monomial {
  std::vector<std::pair<VarId, unsigned>> exps;

  unsigned degree() const;
  unsigned degree(VarId v) const;
  std::vector<VarId> vars() const;
  bool empty() const { return exps.empty(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
  /// Orders by total degree, then by the sorted (variable, exponent) list.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
};

/// A sum of distinct reduced monomials kept sorted: {} is 0, {1} is 1.
struct TermNF {
  std::vector<Monomial> monomials;

  bool is_zero() const { return monomials.empty(); }
  bool contains(const Monomial& m) const;
  friend bool operator==(const TermNF&, const TermNF&) = default;
  friend std::strong_ordering operator<=>(const TermNF& a, const TermNF& b) {
    return a.monomials <=> b.monomials;
  }
};

/// A sum of distinct variables, optionally with the constant 1.
struct LinearTerm {
  std::vector<VarId> vars;
  bool one = false;
};

/// Applies s^base = 0, s^period = 1 and s^theta = s^(theta-1). Returns
/// nullopt for zero. Duplicate variables in `raw` are summed.
std::optional<Monomial> nf_monomial(std::vector<std::pair<VarId, unsigned>> raw, const NfContext& ctx);

TermNF term_zero();
TermNF term_one();
TermNF term_from(const std::vector<Monomial>& ms);
TermNF term_add(const TermNF& t1, const TermNF& t2);
TermNF term_mul(const TermNF& t1, const TermNF& t2, const NfContext& ctx);
TermNF linear_term(const LinearTerm& l, const NfContext& ctx);
TermNF nf_linear_product(const std::vector<LinearTerm>& factors, const NfContext& ctx);

/// Sum of (base-1), (period-1) and (theta-1) over `vars`.
std::uint64_t weighted_card(const std::vector<VarId>& vars, const NfContext& ctx);

/// The cut-off length b(B, Pi) beyond which a linear product is zero or
/// equals a strict subproduct. Rejects periodic variables of period 1.
std::uint64_t cutoff_bound(const std::vector<VarId>& bounded, const std::vector<VarId>& periodic,
                           const NfContext& ctx);

/// m1 is below m2: vars(m1) within vars(m2) and every degree at most.
bool monomial_leq(const Monomial& m1, const Monomial& m2);

/// The monomials of t that are maximal for monomial_leq.
TermNF sup_monomials(const TermNF& t);

std::string to_string(const Monomial& m, const NfContext& ctx);
std::string to_string(const TermNF& t, const NfContext& ctx);

/// Parses `s1*s2^2 + s3`, `0` or `1` over the variables of ctx and normalizes.
TermNF parse_termnf(std::string_view text, const NfContext& ctx);

std::size_t hash_value(const TermNF& t);

}  // namespace spr
