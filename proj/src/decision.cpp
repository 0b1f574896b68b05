#include "spr/decision.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <stdexcept>

#include <boost/multiprecision/integer.hpp>

#include "spr/closure.hpp"

namespace spr {

namespace {

using Clock = std::chrono::steady_clock;

constexpr unsigned kExactRootBits = 1u << 16;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

/// Keeps the smaller witness; returns true when the map changed.
template <class Key>
bool keep_min(std::map<Key, SPGraph>& m, const Key& k, const SPGraph& g) {
  auto [it, inserted] = m.emplace(k, g);
  if (inserted) return true;
  if (witness_less(g, it->second)) {
    it->second = g;
    return true;
  }
  return false;
}

}  // namespace

std::set<std::string> productive_nonterminals(const Grammar& g) {
  std::set<std::string> productive;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      const auto& x = rule_lhs(r);
      if (productive.count(x) != 0) continue;
      auto vars = rule_rhs(r).vars();
      if (std::all_of(vars.begin(), vars.end(), [&](const std::string& v) { return productive.count(v) != 0; })) {
        productive.insert(x);
        changed = true;
      }
    }
  }
  return productive;
}

bool is_empty(const Grammar& g) {
  auto prod = productive_nonterminals(g);
  return std::none_of(g.axioms.begin(), g.axioms.end(), [&](const std::string& x) { return prod.count(x) != 0; });
}

std::optional<SPGraph> shortest_member(const Grammar& g) {
  std::map<std::string, SPGraph> best;
  std::function<std::optional<SPGraph>(const RhsTerm&)> build = [&](const RhsTerm& t) -> std::optional<SPGraph> {
    switch (t.kind()) {
      case RhsTerm::Kind::Label:
        return SPGraph::bridge(t.name());
      case RhsTerm::Kind::Var: {
        auto it = best.find(t.name());
        if (it == best.end()) return std::nullopt;
        return it->second;
      }
      case RhsTerm::Kind::Serial:
      case RhsTerm::Kind::Parallel: {
        auto l = build(t.left());
        if (!l) return std::nullopt;
        auto r = build(t.right());
        if (!r) return std::nullopt;
        return t.kind() == RhsTerm::Kind::Serial ? compose_serial(*l, *r) : compose_parallel(*l, *r);
      }
    }
    return std::nullopt;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      if (auto w = build(rule_rhs(r))) changed |= keep_min(best, rule_lhs(r), *w);
    }
  }
  std::optional<SPGraph> out;
  for (const auto& x : g.axioms) {
    auto it = best.find(x);
    if (it != best.end() && (!out || witness_less(it->second, *out))) out = it->second;
  }
  return out;
}

std::size_t ValueTable::size() const {
  std::size_t n = 0;
  for (const auto& [x, vs] : values) n += vs.size();
  return n;
}

std::vector<std::pair<Profile, SPGraph>> ValueTable::sorted(const std::string& x) const {
  std::vector<std::pair<Profile, SPGraph>> out;
  auto it = values.find(x);
  if (it == values.end()) return out;
  out.assign(it->second.begin(), it->second.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return witness_less(a.second, b.second); });
  return out;
}

namespace {

Profile label_value(const std::string& label, const RecognizerCtx& ctx) {
  auto it = ctx.bridges.find(label);
  if (it == ctx.bridges.end()) return ctx.empty_sprofile();
  return it->second;
}

using ValueSet = std::map<Profile, SPGraph>;

ValueSet eval_term(const RhsTerm& t, const ValueTable& table, const RecognizerCtx& ctx, std::size_t& combos) {
  switch (t.kind()) {
    case RhsTerm::Kind::Label:
      return {{label_value(t.name(), ctx), SPGraph::bridge(t.name())}};
    case RhsTerm::Kind::Var: {
      auto it = table.values.find(t.name());
      if (it == table.values.end()) return {};
      return it->second;
    }
    case RhsTerm::Kind::Serial:
    case RhsTerm::Kind::Parallel: {
      ValueSet l = eval_term(t.left(), table, ctx, combos);
      if (l.empty()) return {};
      ValueSet r = eval_term(t.right(), table, ctx, combos);
      const bool serial = t.kind() == RhsTerm::Kind::Serial;
      ValueSet out;
      for (const auto& [v1, g1] : l) {
        for (const auto& [v2, g2] : r) {
          ++combos;
          Profile v = serial ? op_serial(v1, v2, ctx) : op_parallel(v1, v2, ctx);
          keep_min(out, v, serial ? compose_serial(g1, g2) : compose_parallel(g1, g2));
        }
      }
      return out;
    }
  }
  return {};
}

Profile eval_assigned(const RhsTerm& t, const std::vector<const Profile*>& vals, std::size_t& next,
                      const RecognizerCtx& ctx) {
  switch (t.kind()) {
    case RhsTerm::Kind::Label:
      return label_value(t.name(), ctx);
    case RhsTerm::Kind::Var:
      return *vals[next++];
    case RhsTerm::Kind::Serial: {
      Profile l = eval_assigned(t.left(), vals, next, ctx);
      return op_serial(l, eval_assigned(t.right(), vals, next, ctx), ctx);
    }
    case RhsTerm::Kind::Parallel: {
      Profile l = eval_assigned(t.left(), vals, next, ctx);
      return op_parallel(l, eval_assigned(t.right(), vals, next, ctx), ctx);
    }
  }
  throw std::logic_error("unreachable term kind");
}

std::string annotated(const std::string& x, std::size_t i) { return x + "$v" + std::to_string(i); }

}  // namespace

ValueTable derivable_values(const Grammar& g1, const RecognizerCtx& ctx2) {
  ValueTable table;
  bool changed = true;
  while (changed) {
    changed = false;
    ++table.iterations;
    for (const auto& r : g1.rules) {
      ValueSet vs = eval_term(rule_rhs(r), table, ctx2, table.combinations);
      auto& dst = table.values[rule_lhs(r)];
      for (const auto& [v, w] : vs) changed |= keep_min(dst, v, w);
    }
  }
  return table;
}

Grammar filter_grammar(const Grammar& g1, const Grammar& g2, FilterMode mode) {
  RecognizerCtx ctx2 = build_ctx(g2);
  ValueTable table = derivable_values(g1, ctx2);

  std::map<std::string, std::vector<std::pair<Profile, SPGraph>>> ordered;
  std::map<std::string, std::map<Profile, std::size_t>> index;
  Grammar full;
  full.alphabet = g1.alphabet;
  for (const auto& [x, kind] : g1.nonterminals) {
    ordered[x] = table.sorted(x);
    for (std::size_t i = 0; i < ordered[x].size(); ++i) {
      index[x][ordered[x][i].first] = i;
      full.declare(annotated(x, i), kind);
    }
  }

  std::map<std::string, std::set<std::string>> edges;
  for (const auto& r : g1.rules) {
    const std::string& x = rule_lhs(r);
    RhsTerm rhs = rule_rhs(r);
    auto vars = rhs.vars();
    std::vector<std::size_t> sizes;
    for (const auto& v : vars) sizes.push_back(ordered[v].size());
    if (std::any_of(sizes.begin(), sizes.end(), [](std::size_t n) { return n == 0; })) continue;
    std::vector<std::size_t> pick(vars.size(), 0);
    while (true) {
      std::vector<const Profile*> vals;
      std::vector<std::string> names;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        vals.push_back(&ordered[vars[i]][pick[i]].first);
        names.push_back(annotated(vars[i], pick[i]));
      }
      std::size_t next = 0;
      Profile v = eval_assigned(rhs, vals, next, ctx2);
      std::string lhs = annotated(x, index.at(x).at(v));
      full.add_rule(classify_rule(full, lhs, rhs.rename_vars(names)));
      edges[lhs].insert(names.begin(), names.end());
      std::size_t k = 0;
      for (; k < pick.size(); ++k) {
        if (++pick[k] < sizes[k]) break;
        pick[k] = 0;
      }
      if (k == pick.size()) break;
    }
  }

  std::set<std::string> axioms;
  for (const auto& x : g1.axioms) {
    for (std::size_t i = 0; i < ordered[x].size(); ++i) {
      if (accepts(ordered[x][i].first, ctx2) == (mode == FilterMode::Accept)) axioms.insert(annotated(x, i));
    }
  }
  std::set<std::string> reach = axioms;
  std::vector<std::string> todo(axioms.begin(), axioms.end());
  while (!todo.empty()) {
    std::string x = todo.back();
    todo.pop_back();
    for (const auto& y : edges[x]) {
      if (reach.insert(y).second) todo.push_back(y);
    }
  }

  Grammar out;
  out.alphabet = g1.alphabet;
  for (const auto& x : reach) out.declare(x, full.nonterminals.at(x));
  for (const auto& r : full.rules) {
    if (reach.count(rule_lhs(r)) != 0) out.add_rule(r);
  }
  out.axioms = axioms;
  return out;
}

IntersectionResult intersection_empty(const std::vector<Grammar>& grammars, std::size_t cap) {
  if (grammars.empty()) throw InputError("intersection needs at least one grammar");
  const auto start = Clock::now();
  std::vector<RecognizerCtx> ctxs;
  ctxs.reserve(grammars.size());
  for (const auto& g : grammars) ctxs.push_back(build_ctx(g));
  std::set<std::string> alphabet = grammars.front().alphabet;
  for (const auto& g : grammars) {
    std::set<std::string> common;
    std::set_intersection(alphabet.begin(), alphabet.end(), g.alphabet.begin(), g.alphabet.end(),
                          std::inserter(common, common.end()));
    alphabet = std::move(common);
  }
  std::vector<const RecognizerCtx*> ptrs;
  for (const auto& c : ctxs) ptrs.push_back(&c);

  ClosureOptions opts;
  opts.cap = cap;
  opts.target = [&](const ProfileTuple& t) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (!accepts(t[k], ctxs[k])) return false;
    }
    return true;
  };
  ProfileClosure closure(ptrs, alphabet, opts);
  closure.run();

  IntersectionResult res;
  if (auto h = closure.hit()) {
    res.empty = false;
    res.witness = closure.witness(*h);
    for (const auto& c : ctxs) {
      if (!member(*res.witness, c)) throw std::logic_error("intersection witness rejected by a component");
    }
  } else {
    res.empty = true;
    res.decided = closure.saturated();
  }
  res.stats.profiles_explored = closure.explored();
  res.stats.iterations = closure.levels();
  res.stats.wall_ms = elapsed_ms(start);
  return res;
}

InclusionResult inclusion(const Grammar& g1, const Grammar& g2) {
  const auto start = Clock::now();
  RecognizerCtx ctx2 = build_ctx(g2);
  ValueTable table = derivable_values(g1, ctx2);
  InclusionResult res;
  for (const auto& x : g1.axioms) {
    auto it = table.values.find(x);
    if (it == table.values.end()) continue;
    for (const auto& [v, w] : it->second) {
      if (accepts(v, ctx2)) continue;
      if (!res.witness || witness_less(w, *res.witness)) res.witness = w;
    }
  }
  if (res.witness) {
    res.holds = false;
    if (member(*res.witness, ctx2)) throw std::logic_error("inclusion witness accepted by the right grammar");
  }
  res.stats.profiles_explored = table.size();
  res.stats.iterations = table.iterations;
  res.stats.wall_ms = elapsed_ms(start);
  return res;
}

CardinalityBound bound_cardinality_detail(const Grammar& g) {
  using boost::multiprecision::cpp_int;
  RecognizerCtx ctx = build_ctx(g);
  CardinalityBound b;
  b.s_count = ctx.ns();
  b.p_count = ctx.np();
  for (const auto& [p, m] : ctx.table.bounded) {
    for (const auto& [s, base] : m) b.b_max = std::max(b.b_max, base);
  }
  for (const auto& [p, m] : ctx.table.periodic) {
    for (const auto& [s, period] : m) {
      b.p_max = std::max(b.p_max, period);
      b.has_a_rules = true;
    }
  }
  const cpp_int S = b.s_count;
  const cpp_int P = b.p_count;
  const cpp_int one = 1;
  if (!b.has_a_rules) {
    b.p_bound = one << static_cast<unsigned>(b.b_max * S * S * P);
  } else if (b.p_max == 1) {
    b.p_bound = one << static_cast<unsigned>(2 * b.b_max * S * S * P);
  } else {
    // 2^((Bmax + Pmax^2/2) * S^2 * (S+2) * P) = sqrt(2^N) with N below. For
    // large odd N the exponent is rounded up instead of taking a huge root.
    const cpp_int n = (2 * cpp_int(b.b_max) + cpp_int(b.p_max) * b.p_max) * S * S * (S + 2) * P;
    const auto bits = static_cast<unsigned>(n);
    if (bits % 2 == 0) {
      b.p_bound = one << (bits / 2);
    } else if (bits <= kExactRootBits) {
      b.p_bound = boost::multiprecision::sqrt(cpp_int(one << bits));
    } else {
      b.p_bound = one << (bits / 2 + 1);
    }
  }
  b.s_bound = one << static_cast<unsigned>(S * (S + P + 1));
  b.total = b.p_bound + b.s_bound;
  return b;
}

boost::multiprecision::cpp_int bound_cardinality(const Grammar& g) { return bound_cardinality_detail(g).total; }

}  // namespace spr
