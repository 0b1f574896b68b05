#include "spr/termalg.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "spr/syntax.hpp"

namespace spr {

VarClass VarClass::bounded(unsigned base) {
  if (base < 2) throw InputError("base must be at least 2");
  return {Kind::Bounded, base};
}

VarClass VarClass::periodic(unsigned period) {
  if (period < 1) throw InputError("period must be at least 1");
  return {Kind::Periodic, period};
}

VarClass VarClass::threshold(unsigned theta) {
  if (theta < 2) throw InputError("threshold must be at least 2");
  return {Kind::Threshold, theta};
}

VarId NfContext::add(const std::string& name, std::optional<VarClass> cls) {
  auto it = index_.find(name);
  if (it != index_.end()) {
    if (cls) classes_[it->second] = cls;
    return it->second;
  }
  VarId v = static_cast<VarId>(names_.size());
  names_.push_back(name);
  classes_.push_back(cls);
  index_.emplace(name, v);
  return v;
}

void NfContext::set_class(VarId v, VarClass cls) { classes_.at(v) = cls; }

std::optional<VarId> NfContext::find(std::string_view name) const {
  auto it = index_.find(name);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

VarId NfContext::id(std::string_view name) const {
  auto v = find(name);
  if (!v) throw InputError("unknown variable '" + std::string(name) + "'");
  return *v;
}

const VarClass& NfContext::cls(VarId v) const {
  if (!has_class(v)) {
    throw InputError("unknown variable '" + (v < names_.size() ? names_[v] : std::to_string(v)) + "'");
  }
  return *classes_[v];
}

unsigned Monomial::degree() const {
  unsigned d = 0;
  for (const auto& [v, e] : exps) d += e;
  return d;
}

unsigned Monomial::degree(VarId v) const {
  for (const auto& [w, e] : exps) {
    if (w == v) return e;
  }
  return 0;
}

std::vector<VarId> Monomial::vars() const {
  std::vector<VarId> out;
  for (const auto& [v, e] : exps) out.push_back(v);
  return out;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  auto da = a.degree();
  auto db = b.degree();
  if (da != db) return da <=> db;
  return a.exps <=> b.exps;
}

bool TermNF::contains(const Monomial& m) const {
  return std::binary_search(monomials.begin(), monomials.end(), m);
}

namespace {

/// Reduces one exponent; returns nullopt when the monomial becomes zero.
std::optional<unsigned> reduce_exponent(unsigned e, const VarClass& c) {
  switch (c.kind) {
    case VarClass::Kind::Bounded:
      if (e >= c.value) return std::nullopt;
      return e;
    case VarClass::Kind::Periodic:
      return e % c.value;
    case VarClass::Kind::Threshold:
      return std::min(e, c.value - 1);
  }
  return e;
}

void normalize_sum(std::vector<Monomial>& ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
}

}  // namespace

std::optional<Monomial> nf_monomial(std::vector<std::pair<VarId, unsigned>> raw, const NfContext& ctx) {
  std::sort(raw.begin(), raw.end());
  Monomial m;
  for (std::size_t i = 0; i < raw.size();) {
    VarId v = raw[i].first;
    unsigned e = 0;
    for (; i < raw.size() && raw[i].first == v; ++i) e += raw[i].second;
    if (e == 0) continue;
    auto r = reduce_exponent(e, ctx.cls(v));
    if (!r) return std::nullopt;
    if (*r > 0) m.exps.emplace_back(v, *r);
  }
  return m;
}

TermNF term_zero() { return {}; }

TermNF term_one() { return TermNF{{Monomial{}}}; }

TermNF term_from(const std::vector<Monomial>& ms) {
  TermNF t{ms};
  normalize_sum(t.monomials);
  return t;
}

TermNF term_add(const TermNF& t1, const TermNF& t2) {
  TermNF out;
  std::set_union(t1.monomials.begin(), t1.monomials.end(), t2.monomials.begin(), t2.monomials.end(),
                 std::back_inserter(out.monomials));
  return out;
}

TermNF term_mul(const TermNF& t1, const TermNF& t2, const NfContext& ctx) {
  TermNF out;
  out.monomials.reserve(t1.monomials.size() * t2.monomials.size());
  for (const auto& m1 : t1.monomials) {
    for (const auto& m2 : t2.monomials) {
      Monomial m;
      m.exps.reserve(m1.exps.size() + m2.exps.size());
      bool zero = false;
      std::size_t i = 0, j = 0;
      while (i < m1.exps.size() || j < m2.exps.size()) {
        VarId v;
        unsigned e;
        if (j == m2.exps.size() || (i < m1.exps.size() && m1.exps[i].first < m2.exps[j].first)) {
          v = m1.exps[i].first;
          e = m1.exps[i++].second;
        } else if (i == m1.exps.size() || m2.exps[j].first < m1.exps[i].first) {
          v = m2.exps[j].first;
          e = m2.exps[j++].second;
        } else {
          v = m1.exps[i].first;
          e = m1.exps[i++].second + m2.exps[j++].second;
        }
        auto r = reduce_exponent(e, ctx.cls(v));
        if (!r) {
          zero = true;
          break;
        }
        if (*r > 0) m.exps.emplace_back(v, *r);
      }
      if (!zero) out.monomials.push_back(std::move(m));
    }
  }
  normalize_sum(out.monomials);
  return out;
}

TermNF linear_term(const LinearTerm& l, const NfContext& ctx) {
  std::vector<Monomial> ms;
  if (l.one) ms.push_back(Monomial{});
  for (VarId v : l.vars) {
    if (auto m = nf_monomial({{v, 1}}, ctx)) ms.push_back(*m);
  }
  return term_from(ms);
}

TermNF nf_linear_product(const std::vector<LinearTerm>& factors, const NfContext& ctx) {
  TermNF acc = term_one();
  for (const auto& f : factors) acc = term_mul(acc, linear_term(f, ctx), ctx);
  return acc;
}

std::uint64_t weighted_card(const std::vector<VarId>& vars, const NfContext& ctx) {
  std::uint64_t sum = 0;
  for (VarId v : vars) sum += ctx.cls(v).value - 1;
  return sum;
}

std::uint64_t cutoff_bound(const std::vector<VarId>& bounded, const std::vector<VarId>& periodic,
                           const NfContext& ctx) {
  for (VarId v : bounded) {
    if (ctx.cls(v).kind != VarClass::Kind::Bounded) {
      throw InputError("cutoff_bound: '" + ctx.name(v) + "' is not a bounded variable");
    }
  }
  std::vector<std::uint64_t> periods;
  for (VarId v : periodic) {
    const auto& c = ctx.cls(v);
    if (c.kind != VarClass::Kind::Periodic) {
      throw InputError("cutoff_bound: '" + ctx.name(v) + "' is not a periodic variable");
    }
    if (c.value < 2) throw InputError("cutoff_bound: '" + ctx.name(v) + "' has period 1");
    periods.push_back(c.value);
  }
  const std::uint64_t n = periods.size();
  std::uint64_t b = weighted_card(bounded, ctx) * (n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) b += std::lcm(periods[i], periods[j]);
  }
  return b - n * (n + 1) / 2;
}

bool monomial_leq(const Monomial& m1, const Monomial& m2) {
  for (const auto& [v, e] : m1.exps) {
    if (e > m2.degree(v)) return false;
  }
  return true;
}

TermNF sup_monomials(const TermNF& t) {
  TermNF out;
  for (const auto& m : t.monomials) {
    bool dominated = std::any_of(t.monomials.begin(), t.monomials.end(), [&](const Monomial& o) {
      return !(o == m) && monomial_leq(m, o);
    });
    if (!dominated) out.monomials.push_back(m);
  }
  return out;
}

std::string to_string(const Monomial& m, const NfContext& ctx) {
  if (m.exps.empty()) return "1";
  auto exps = m.exps;
  std::sort(exps.begin(), exps.end(),
            [&](const auto& a, const auto& b) { return ctx.name(a.first) < ctx.name(b.first); });
  std::string out;
  for (const auto& [v, e] : exps) {
    if (!out.empty()) out += "*";
    out += ctx.name(v);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string to_string(const TermNF& t, const NfContext& ctx) {
  if (t.monomials.empty()) return "0";
  std::string out;
  for (const auto& m : t.monomials) {
    if (!out.empty()) out += " + ";
    out += to_string(m, ctx);
  }
  return out;
}

TermNF parse_termnf(std::string_view text, const NfContext& ctx) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  auto split = [](std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      if (i == s.size() || s[i] == sep) {
        parts.push_back(s.substr(start, i - start));
        start = i + 1;
      }
    }
    return parts;
  };
  std::string_view body = trim(text);
  if (body == "0") return term_zero();
  std::vector<Monomial> ms;
  for (auto mono : split(body, '+')) {
    mono = trim(mono);
    std::vector<std::pair<VarId, unsigned>> raw;
    if (mono != "1") {
      for (auto factor : split(mono, '*')) {
        factor = trim(factor);
        unsigned e = 1;
        auto caret = factor.find('^');
        if (caret != std::string_view::npos) {
          std::string digits(trim(factor.substr(caret + 1)));
          if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit)) {
            throw InputError("bad exponent in '" + std::string(factor) + "'");
          }
          e = static_cast<unsigned>(std::stoul(digits));
          factor = trim(factor.substr(0, caret));
        }
        if (factor.empty()) throw InputError("empty factor in '" + std::string(text) + "'");
        raw.emplace_back(ctx.id(factor), e);
      }
    }
    if (auto m = nf_monomial(raw, ctx)) ms.push_back(*m);
  }
  return term_from(ms);
}

std::size_t hash_value(const TermNF& t) {
  std::size_t h = t.monomials.size();
  for (const auto& m : t.monomials) {
    h = h * 1000003u ^ m.exps.size();
    for (const auto& [v, e] : m.exps) h = (h * 31 + v) * 131 + e;
  }
  return h;
}

}  // namespace spr
