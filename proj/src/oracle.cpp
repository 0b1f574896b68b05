#include "spr/oracle.hpp"

#include <algorithm>
#include <functional>
#include <limits>

namespace spr {

namespace {

constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 4;

std::size_t term_min(const RhsTerm& t, const std::map<std::string, std::size_t>& msize) {
  switch (t.kind()) {
    case RhsTerm::Kind::Label:
      return 1;
    case RhsTerm::Kind::Var: {
      auto it = msize.find(t.name());
      return it == msize.end() ? kInf : it->second;
    }
    default: {
      std::size_t l = term_min(t.left(), msize);
      std::size_t r = term_min(t.right(), msize);
      return (l >= kInf || r >= kInf) ? kInf : l + r;
    }
  }
}

std::map<std::string, std::size_t> min_sizes(const Grammar& g) {
  std::map<std::string, std::size_t> msize;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      std::size_t m = term_min(rule_rhs(r), msize);
      if (m >= kInf) continue;
      auto [it, inserted] = msize.emplace(rule_lhs(r), m);
      if (inserted || m < it->second) {
        it->second = m;
        changed = true;
      }
    }
  }
  return msize;
}

/// Least edge count of the surroundings of each nonterminal in a derivation
/// from an axiom.
std::map<std::string, std::size_t> min_contexts(const Grammar& g, const std::map<std::string, std::size_t>& msize) {
  std::map<std::string, std::size_t> ctx;
  for (const auto& x : g.axioms) ctx[x] = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      auto cy = ctx.find(rule_lhs(r));
      if (cy == ctx.end()) continue;
      RhsTerm rhs = rule_rhs(r);
      std::size_t total = term_min(rhs, msize);
      if (total >= kInf) continue;
      for (const auto& v : rhs.vars()) {
        std::size_t c = cy->second + total - msize.at(v);
        auto [it, inserted] = ctx.emplace(v, c);
        if (inserted || c < it->second) {
          it->second = c;
          changed = true;
        }
      }
    }
  }
  return ctx;
}

std::vector<SPGraph> by_edges(const GraphSet& s, std::size_t budget) {
  std::vector<SPGraph> out;
  for (const auto& g : s) {
    if (g.edge_count() <= budget) out.push_back(g);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SPGraph& a, const SPGraph& b) { return a.edge_count() < b.edge_count(); });
  return out;
}

GraphSet combine(const GraphSet& l, const GraphSet& r, bool serial, std::size_t budget) {
  GraphSet out;
  auto lv = by_edges(l, budget);
  auto rv = by_edges(r, budget);
  for (const auto& a : lv) {
    for (const auto& b : rv) {
      if (a.edge_count() + b.edge_count() > budget) break;
      out.insert(serial ? compose_serial(a, b) : compose_parallel(a, b));
    }
  }
  return out;
}

GraphSet eval_lang(const RhsTerm& t, std::size_t budget, const std::map<std::string, GraphSet>& lang,
                   const std::map<std::string, std::size_t>& msize) {
  if (budget == 0) return {};
  switch (t.kind()) {
    case RhsTerm::Kind::Label:
      return {SPGraph::bridge(t.name())};
    case RhsTerm::Kind::Var: {
      auto it = lang.find(t.name());
      if (it == lang.end()) return {};
      GraphSet out;
      for (const auto& g : it->second) {
        if (g.edge_count() <= budget) out.insert(g);
      }
      return out;
    }
    default: {
      std::size_t ml = term_min(t.left(), msize);
      std::size_t mr = term_min(t.right(), msize);
      if (ml >= kInf || mr >= kInf || ml + mr > budget) return {};
      GraphSet l = eval_lang(t.left(), budget - mr, lang, msize);
      GraphSet r = eval_lang(t.right(), budget - ml, lang, msize);
      return combine(l, r, t.kind() == RhsTerm::Kind::Serial, budget);
    }
  }
}

void flatten_serial(const RhsTerm& t, std::vector<RhsTerm>& out) {
  if (t.kind() == RhsTerm::Kind::Serial) {
    flatten_serial(t.left(), out);
    flatten_serial(t.right(), out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

std::map<std::string, GraphSet> language_table(const Grammar& g, std::size_t n, bool context_budget) {
  auto msize = min_sizes(g);
  std::map<std::string, std::size_t> budget;
  if (context_budget) {
    for (const auto& [x, c] : min_contexts(g, msize)) {
      if (c < n) budget[x] = n - c;
    }
  } else {
    for (const auto& [x, kind] : g.nonterminals) budget[x] = n;
  }
  std::map<std::string, GraphSet> lang;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      auto b = budget.find(rule_lhs(r));
      if (b == budget.end()) continue;
      GraphSet gs = eval_lang(rule_rhs(r), b->second, lang, msize);
      auto& dst = lang[rule_lhs(r)];
      for (const auto& x : gs) changed |= dst.insert(x).second;
    }
  }
  return lang;
}

GraphSet language_upto(const Grammar& g, std::size_t n) {
  auto lang = language_table(g, n, true);
  GraphSet out;
  for (const auto& x : g.axioms) {
    auto it = lang.find(x);
    if (it != lang.end()) out.insert(it->second.begin(), it->second.end());
  }
  return out;
}

ViewOracle::ViewOracle(const RecognizerCtx& ctx, std::size_t max_edges) : ctx_(ctx), max_edges_(max_edges) {
  const Grammar& g = ctx.grammar;
  lang_ = language_table(g, max_edges);
  auto msize = min_sizes(g);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& r : g.rules) {
      std::vector<RhsTerm> items;
      flatten_serial(rule_rhs(r), items);
      std::set<Form> found;
      const RhsTerm& last = items.back();
      if (items.size() == 1) {
        if (last.kind() == RhsTerm::Kind::Var) {
          auto it = forms_.find(last.name());
          if (it != forms_.end()) found = it->second;
        } else {
          for (const auto& x : eval_lang(last, max_edges_, lang_, msize)) found.emplace(x, "");
        }
      } else {
        RhsTerm prefix = items[0];
        for (std::size_t i = 1; i + 1 < items.size(); ++i) prefix = RhsTerm::serial(prefix, items[i]);
        GraphSet heads = eval_lang(prefix, max_edges_, lang_, msize);
        if (last.kind() == RhsTerm::Kind::Var) {
          for (const auto& h : heads) found.emplace(h, last.name());
          auto it = forms_.find(last.name());
          if (it != forms_.end()) {
            for (const auto& h : heads) {
              for (const auto& [t, q] : it->second) {
                if (h.edge_count() + t.edge_count() <= max_edges_) found.emplace(compose_serial(h, t), q);
              }
            }
          }
        } else {
          GraphSet tails = eval_lang(last, max_edges_, lang_, msize);
          for (const auto& x : combine(heads, tails, true, max_edges_)) found.emplace(x, "");
        }
      }
      auto& dst = forms_[rule_lhs(r)];
      for (const auto& f : found) changed |= dst.insert(f).second;
    }
  }
}

TermNF ViewOracle::p_views(const SPGraph& g, std::uint32_t p) const {
  if (!g.is_parallel()) throw InputError("p_views expects a P-graph");
  const NfContext& nc = ctx_.p_ctx[p];
  std::vector<LinearTerm> factors;
  for (const auto& c : g.children()) {
    LinearTerm l;
    for (std::uint32_t s = 0; s < ctx_.ns(); ++s) {
      if (!nc.has_class(s)) continue;
      auto it = lang_.find(ctx_.s_names[s]);
      if (it != lang_.end() && it->second.count(c) != 0) l.vars.push_back(s);
    }
    factors.push_back(std::move(l));
  }
  return nf_linear_product(factors, nc);
}

SProfile ViewOracle::s_views(const SPGraph& g) const {
  if (g.is_parallel()) throw InputError("s_views expects a bridge or an S-graph");
  SProfile out = ctx_.empty_sprofile();
  for (std::uint32_t s = 0; s < ctx_.ns(); ++s) {
    auto it = forms_.find(ctx_.s_names[s]);
    if (it == forms_.end()) continue;
    for (const auto& [t, q] : it->second) {
      if (!(t == g)) continue;
      std::uint32_t col = ctx_.bot();
      if (!q.empty()) col = ctx_.grammar.is_s(q) ? ctx_.s_id.at(q) : ctx_.p_column(ctx_.p_id.at(q));
      ctx_.set(out, s, col);
    }
  }
  return out;
}

Profile ViewOracle::profile(const SPGraph& g) const {
  if (!g.is_parallel()) return s_views(g);
  PProfile out;
  for (std::uint32_t p = 0; p < ctx_.np(); ++p) out.per_p.push_back(p_views(g, p));
  return out;
}

TermNF enumerate_p_views(const SPGraph& g, const RecognizerCtx& ctx, std::uint32_t p) {
  return ViewOracle(ctx, g.edge_count()).p_views(g, p);
}

SProfile enumerate_s_views(const SPGraph& g, const RecognizerCtx& ctx) {
  return ViewOracle(ctx, g.edge_count()).s_views(g);
}

Grammar random_regular_grammar(std::mt19937_64& rng, const RandomGrammarOptions& opts) {
  auto pick = [&](unsigned lo, unsigned hi) { return std::uniform_int_distribution<unsigned>(lo, hi)(rng); };
  Grammar g;
  g.alphabet = pick(0, 1) == 0 ? std::set<std::string>{"a"} : std::set<std::string>{"a", "b"};
  std::vector<std::string> labels(g.alphabet.begin(), g.alphabet.end());
  std::vector<std::string> ps, ss;
  for (unsigned i = 0, n = pick(1, opts.max_p); i < n; ++i) ps.push_back("p" + std::to_string(i));
  for (unsigned i = 0, n = pick(1, opts.max_s); i < n; ++i) ss.push_back("s" + std::to_string(i));
  for (const auto& p : ps) g.declare(p, NtKind::P);
  for (const auto& s : ss) g.declare(s, NtKind::S);
  auto any = [&](const std::vector<std::string>& v) { return v[pick(0, static_cast<unsigned>(v.size() - 1))]; };

  g.add_rule(RuleF{any(ss), any(labels)});
  g.add_rule(RuleE{any(ps), any(labels)});
  const unsigned target = pick(opts.min_rules, opts.max_rules);
  for (unsigned guard = 0; g.rules.size() < target && guard < 100; ++guard) {
    switch (pick(0, 5)) {
      case 0:
        g.add_rule(RuleA{any(ps), any(ss), pick(1, opts.max_period)});
        break;
      case 1: {
        std::map<std::string, unsigned> body;
        unsigned sum = 0;
        for (unsigned i = 0, n = pick(1, 2); i < n; ++i) {
          unsigned e = pick(1, opts.max_exponent);
          body[any(ss)] += e;
          sum += e;
        }
        if (sum < 2) body.begin()->second = 2;
        for (auto& [s, e] : body) e = std::min(e, opts.max_exponent);
        unsigned total = 0;
        for (const auto& [s, e] : body) total += e;
        if (total < 2) break;
        g.add_rule(RuleB{any(ps), {body.begin(), body.end()}});
        break;
      }
      case 2:
        g.add_rule(RuleC{any(ss), any(ps), any(ss)});
        break;
      case 3:
        g.add_rule(RuleD{any(ss), any(ps), any(ps)});
        break;
      case 4:
        g.add_rule(RuleE{any(ps), any(labels)});
        break;
      default:
        g.add_rule(RuleF{any(ss), any(labels)});
        break;
    }
  }
  std::vector<std::string> all = ps;
  all.insert(all.end(), ss.begin(), ss.end());
  for (unsigned i = 0, n = pick(1, 2); i < n; ++i) g.axioms.insert(any(all));
  return g;
}

SPGraph random_graph(std::mt19937_64& rng, std::size_t edges, const std::vector<std::string>& alphabet) {
  if (edges <= 1) {
    return SPGraph::bridge(alphabet[std::uniform_int_distribution<std::size_t>(0, alphabet.size() - 1)(rng)]);
  }
  std::size_t left = std::uniform_int_distribution<std::size_t>(1, edges - 1)(rng);
  SPGraph l = random_graph(rng, left, alphabet);
  SPGraph r = random_graph(rng, edges - left, alphabet);
  return std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? compose_serial(l, r) : compose_parallel(l, r);
}

Grammar gen_worstcase_words(unsigned k, const std::vector<std::string>& words) {
  if (k < 2) throw InputError("gen-worstcase needs k >= 2");
  for (const auto& w : words) {
    if (w.size() != k || w.find_first_not_of("ab") != std::string::npos) {
      throw InputError("word '" + w + "' is not over {a, b} with length " + std::to_string(k));
    }
  }
  if (words.empty()) throw InputError("gen-worstcase needs at least one word");
  const std::vector<std::string> letters = {"a", "b"};
  Grammar g;
  g.alphabet = {"a", "b", "c", "dollar", "hash"};
  auto pl = [](const std::string& a) { return "pl_" + a; };
  auto ch = [](char c) { return std::string(1, c); };
  for (const auto& a : g.alphabet) {
    g.declare(pl(a), NtKind::P);
    g.add_rule(RuleE{pl(a), a});
  }
  auto s = [&](const std::string& name) {
    if (g.nonterminals.count(name) == 0) g.declare(name, NtKind::S);
    return name;
  };
  auto step = [&](const std::string& from, const std::string& label, const std::string& to) {
    g.add_rule(RuleC{s(from), pl(label), s(to)});
  };
  // e_x emits the path x.
  std::function<std::string(const std::string&)> emit = [&](const std::string& x) {
    std::string name = s("e_" + x);
    if (x.size() == 1) {
      g.add_rule(RuleF{name, x});
    } else {
      step(name, ch(x[0]), emit(x.substr(1)));
    }
    return name;
  };
  // Reading the rest of u inside the target block, then v.
  std::set<std::string> prefixes;
  for (const auto& w : words) {
    for (unsigned i = 0; i <= k; ++i) prefixes.insert(w.substr(0, i));
  }
  step("d0", "dollar", "v_");
  for (const auto& y : prefixes) {
    if (y.size() == k) continue;
    for (const auto& a : letters) {
      if (prefixes.count(y + a) != 0) step("v_" + y, a, "v_" + y + a);
    }
  }
  for (const auto& u : words) {
    for (unsigned i = 1; i < k; ++i) {
      std::string x = u.substr(i);
      step("r_" + x, ch(x[0]), x.size() == 1 ? "d0" : "r_" + x.substr(1));
    }
  }
  auto skip_block = [&](const std::string& start, const std::string& left, const std::string& right) {
    for (const auto& a : letters) {
      step(start, a, left);
      step(left, a, left);
      step(right, a, right);
    }
    step(start, "dollar", right);
    step(left, "dollar", right);
    step(right, "hash", start);
  };
  s("c0");
  g.add_rule(RuleF{"c0", "c"});
  s("s0");
  for (const auto& u : words) {
    g.declare("p_" + u, NtKind::P);
    g.add_rule(RuleB{"p_" + u, {{"c0", 1}, {s("q_" + u), 1}}});
    g.add_rule(RuleC{"s0", "p_" + u, emit(u)});
    skip_block("q_" + u, "qa_" + u, "qb_" + u);
    step("q_" + u, ch(u[0]), "r_" + u.substr(1));
  }
  for (const auto& v : words) {
    step("v_" + v, "hash", "t_" + v);
    skip_block("t_" + v, "ta_" + v, "tb_" + v);
    step("t_" + v, ch(v[0]), emit(v.substr(1)));
  }
  g.axioms = {"s0"};
  return g;
}

Grammar gen_worstcase(unsigned k) {
  if (k < 2) throw InputError("gen-worstcase needs k >= 2");
  if (k > 12) throw InputError("gen-worstcase supports k <= 12");
  std::vector<std::string> words;
  for (unsigned m = 0; m < (1u << k); ++m) {
    std::string w;
    for (unsigned i = 0; i < k; ++i) w += ((m >> (k - 1 - i)) & 1u) != 0 ? 'b' : 'a';
    words.push_back(w);
  }
  return gen_worstcase_words(k, words);
}

}  // namespace spr
