// Acceptance suite: one PASS/FAIL line per criterion.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "spr/decision.hpp"
#include "spr/grammar.hpp"
#include "spr/oracle.hpp"
#include "spr/recognizer.hpp"
#include "spr/spgraph.hpp"
#include "spr/termalg.hpp"

using namespace spr;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

Grammar load_fixture(const std::string& name) {
  std::ifstream f(std::string(SPR_FIXTURE_DIR) + "/" + name);
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_grammar(buf.str());
}

const std::vector<std::string> kRegularFixtures = {"univ.spg",   "univ_ab.spg", "univ_a.spg",       "ga.spg",
                                                   "gb.spg",     "gab.spg",     "paths_a.spg",      "even_par.spg",
                                                   "two_periods.spg", "empty.spg"};

std::vector<Grammar> random_corpus(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Grammar> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_regular_grammar(rng));
  return out;
}

NfContext vars_ctx(const std::vector<VarClass>& classes) {
  NfContext ctx;
  for (std::size_t i = 0; i < classes.size(); ++i) ctx.add("s" + std::to_string(i), classes[i]);
  return ctx;
}

TermNF parse(const std::string& text, const NfContext& ctx) { return parse_termnf(text, ctx); }

std::string diff_terms(const TermNF& got, const TermNF& want, const NfContext& ctx) {
  std::vector<Monomial> extra, missing;
  std::set_difference(got.monomials.begin(), got.monomials.end(), want.monomials.begin(), want.monomials.end(),
                      std::back_inserter(extra));
  std::set_difference(want.monomials.begin(), want.monomials.end(), got.monomials.begin(), got.monomials.end(),
                      std::back_inserter(missing));
  auto show = [&](const std::vector<Monomial>& ms) { return ms.empty() ? std::string() : to_string(TermNF{ms}, ctx); };
  return "computed " + to_string(got, ctx) + "; extra {" + show(extra) + "} missing {" + show(missing) + "}";
}

// ---------------------------------------------------------------------------

Outcome criterion1() {
  Outcome o;
  std::vector<std::string> notes;
  {
    NfContext ctx;
    for (int i = 1; i <= 4; ++i) ctx.add("s" + std::to_string(i), VarClass::threshold(2));
    auto sum = [&](std::vector<std::string> vs) {
      LinearTerm l;
      for (const auto& v : vs) l.vars.push_back(ctx.id(v));
      return l;
    };
    TermNF t = nf_linear_product({sum({"s1", "s2"}), sum({"s2", "s3"}), sum({"s3", "s4"})}, ctx);
    TermNF nf_paper = parse("s1*s2*s3 + s1*s2*s4 + s1*s3 + s1*s3*s4 + s2*s3 + s2*s3*s4", ctx);
    TermNF sup_paper = parse("s1*s2*s3 + s1*s2*s4 + s1*s3*s4 + s2*s3*s4", ctx);
    if (t != nf_paper) {
      o.pass = false;
      notes.push_back("Ex4 nf differs from the stated 6-monomial set: " + diff_terms(t, nf_paper, ctx));
    }
    if (sup_monomials(t) != sup_paper) {
      o.pass = false;
      notes.push_back("Ex4 sup differs: " + diff_terms(sup_monomials(t), sup_paper, ctx));
    } else {
      notes.push_back("Ex4 sup matches");
    }
  }
  {
    NfContext ctx;
    ctx.add("s1", VarClass::bounded(2));
    ctx.add("s2", VarClass::periodic(3));
    auto one_sum = [&](std::vector<std::string> vs) {
      LinearTerm l;
      l.one = true;
      for (const auto& v : vs) l.vars.push_back(ctx.id(v));
      return l;
    };
    TermNF t = nf_linear_product({one_sum({"s1", "s2"}), one_sum({"s1"}), one_sum({"s2"}), one_sum({"s1"}),
                                  one_sum({"s1"}), one_sum({"s1", "s2"}), one_sum({"s2"})},
                                 ctx);
    TermNF want = parse("1 + s1 + s2 + s1*s2 + s2^2 + s1*s2^2", ctx);
    if (t != want) {
      o.pass = false;
      notes.push_back("Ex5 " + diff_terms(t, want, ctx));
    } else {
      notes.push_back("Ex5 matches");
    }
  }
  {
    NfContext ctx;
    ctx.add("s0", VarClass::periodic(3));
    ctx.add("s1", VarClass::bounded(2));
    ctx.add("s2", VarClass::periodic(3));
    auto sum = [&](std::vector<std::string> vs) {
      LinearTerm l;
      for (const auto& v : vs) l.vars.push_back(ctx.id(v));
      return l;
    };
    TermNF t = nf_linear_product({sum({"s0", "s1", "s2"}), sum({"s0", "s1"}), sum({"s0", "s2"}), sum({"s0", "s1"}),
                                  sum({"s0", "s1"}), sum({"s0", "s1", "s2"}), sum({"s0", "s2"})},
                                 ctx);
    TermNF want = parse("s0 + s1 + s2 + s0^2*s1*s2 + s0^2*s2^2 + s0*s1*s2^2", ctx);
    if (t != want) {
      o.pass = false;
      notes.push_back("Ex6 " + diff_terms(t, want, ctx));
    } else {
      notes.push_back("Ex6 matches");
    }
  }
  for (const auto& n : notes) o.detail += (o.detail.empty() ? "" : "; ") + n;
  return o;
}

Outcome criterion2() {
  Outcome o;
  Grammar univ = load_fixture("univ_ab.spg");
  RecognizerCtx ctx = build_ctx(univ);
  auto graphs = enumerate_graphs({"a", "b"}, 6);
  std::size_t rejected = 0;
  for (const auto& g : graphs) {
    if (!member(g, ctx)) ++rejected;
  }
  auto corpus = random_corpus(50, 0x5eed0002);
  std::size_t failed_inclusions = 0;
  for (const auto& g : corpus) {
    if (!inclusion(g, univ).holds) ++failed_inclusions;
  }
  for (const auto& name : {"free.spg", "gab.spg", "even_par.spg", "two_periods.spg"}) {
    if (!inclusion(load_fixture(name), univ).holds) ++failed_inclusions;
  }
  o.pass = graphs.size() >= 1000 && rejected == 0 && failed_inclusions == 0;
  o.detail = std::to_string(graphs.size()) + " graphs (<= 6 edges), " + std::to_string(rejected) +
             " rejected; 54 inclusions, " + std::to_string(failed_inclusions) + " failed";
  return o;
}

Outcome criterion3(std::size_t& checked) {
  Outcome o;
  auto corpus = random_corpus(60, 0x5eed0003);
  std::size_t eval_bad = 0, member_bad = 0;
  checked = 0;
  for (const auto& g : corpus) {
    RecognizerCtx ctx = build_ctx(g);
    ViewOracle oracle(ctx, 4);
    auto lang = language_upto(g, 4);
    for (const auto& graph : enumerate_graphs(g.alphabet, 4)) {
      ++checked;
      if (!(eval_graph(graph, ctx) == oracle.profile(graph))) ++eval_bad;
      if (member(graph, ctx) != (lang.count(graph) != 0)) ++member_bad;
    }
  }
  o.pass = eval_bad == 0 && member_bad == 0;
  o.detail = std::to_string(corpus.size()) + " grammars, " + std::to_string(checked) + " graph checks; " +
             std::to_string(eval_bad) + " profile and " + std::to_string(member_bad) + " membership discrepancies";
  return o;
}

Outcome criterion4() {
  Outcome o;
  auto corpus = random_corpus(60, 0x5eed0003);
  std::size_t bad = 0, pairs = 0;
  for (const auto& g : corpus) {
    RecognizerCtx ctx = build_ctx(g);
    ViewOracle oracle(ctx, 4);
    auto graphs = enumerate_graphs(g.alphabet, 3);
    std::vector<Profile> h;
    for (const auto& x : graphs) h.push_back(eval_graph(x, ctx));
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      for (std::size_t j = 0; j < graphs.size(); ++j) {
        if (graphs[i].edge_count() + graphs[j].edge_count() > 4) continue;
        pairs += 2;
        if (!(oracle.profile(compose_serial(graphs[i], graphs[j])) == op_serial(h[i], h[j], ctx))) ++bad;
        if (!(oracle.profile(compose_parallel(graphs[i], graphs[j])) == op_parallel(h[i], h[j], ctx))) ++bad;
      }
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(pairs) + " compositions, " + std::to_string(bad) + " discrepancies";
  return o;
}

// Linear products as multisets of factor types; counts packed 4 bits per type.
struct ProductSpace {
  const NfContext& ctx;
  std::vector<LinearTerm> types;
  std::unordered_map<std::uint64_t, TermNF> memo;

  TermNF nf(std::uint64_t key) {
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    TermNF out = term_one();
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (((key >> (4 * i)) & 15u) != 0) {
        out = term_mul(nf(key - (std::uint64_t{1} << (4 * i))), linear_term(types[i], ctx), ctx);
        break;
      }
    }
    memo.emplace(key, out);
    return out;
  }

  /// Calls f on every sub-multiset key of `key`, including key itself.
  void for_each_sub(std::uint64_t key, const std::function<void(std::uint64_t)>& f) {
    std::vector<unsigned> c(types.size());
    for (std::size_t i = 0; i < types.size(); ++i) c[i] = (key >> (4 * i)) & 15u;
    std::vector<unsigned> d(types.size(), 0);
    while (true) {
      std::uint64_t k = 0;
      for (std::size_t i = 0; i < types.size(); ++i) k |= std::uint64_t{d[i]} << (4 * i);
      f(k);
      std::size_t i = 0;
      for (; i < d.size(); ++i) {
        if (++d[i] <= c[i]) break;
        d[i] = 0;
      }
      if (i == d.size()) return;
    }
  }

  /// All multisets of `length` factors, or a seeded sample when there are more than `limit`.
  std::vector<std::uint64_t> products(unsigned length, std::size_t limit, std::mt19937_64& rng) {
    std::vector<std::uint64_t> all;
    std::vector<unsigned> c(types.size(), 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
      if (all.size() > limit) return;
      if (i + 1 == types.size()) {
        if (left > 15) return;
        c[i] = left;
        std::uint64_t k = 0;
        for (std::size_t j = 0; j < types.size(); ++j) k |= std::uint64_t{c[j]} << (4 * j);
        all.push_back(k);
        return;
      }
      for (unsigned x = 0; x <= std::min(left, 15u); ++x) {
        c[i] = x;
        rec(i + 1, left - x);
      }
    };
    rec(0, length);
    if (all.size() <= limit) return all;
    std::vector<std::uint64_t> sample;
    std::uniform_int_distribution<std::size_t> pick(0, types.size() - 1);
    for (std::size_t s = 0; s < limit; ++s) {
      std::vector<unsigned> cnt(types.size(), 0);
      for (unsigned f = 0; f < length; ++f) {
        std::size_t t;
        do t = pick(rng);
        while (cnt[t] == 15);
        ++cnt[t];
      }
      std::uint64_t k = 0;
      for (std::size_t j = 0; j < types.size(); ++j) k |= std::uint64_t{cnt[j]} << (4 * j);
      sample.push_back(k);
    }
    return sample;
  }
};

std::vector<LinearTerm> subset_sums(std::size_t nvars, bool one) {
  std::vector<LinearTerm> out;
  for (unsigned mask = 1; mask < (1u << nvars); ++mask) {
    LinearTerm l;
    l.one = one;
    for (std::size_t v = 0; v < nvars; ++v) {
      if ((mask >> v) & 1u) l.vars.push_back(static_cast<VarId>(v));
    }
    out.push_back(l);
  }
  return out;
}

/// Variable class configurations up to renaming: sorted tuples over `options`.
std::vector<std::vector<VarClass>> configs(const std::vector<VarClass>& options, std::size_t max_vars) {
  std::vector<std::vector<VarClass>> out;
  std::function<void(std::vector<VarClass>&, std::size_t)> rec = [&](std::vector<VarClass>& cur, std::size_t from) {
    if (!cur.empty()) out.push_back(cur);
    if (cur.size() == max_vars) return;
    for (std::size_t i = from; i < options.size(); ++i) {
      cur.push_back(options[i]);
      rec(cur, i);
      cur.pop_back();
    }
  };
  std::vector<VarClass> cur;
  rec(cur, 0);
  return out;
}

std::vector<VarId> ids_of(const std::vector<VarClass>& cfg, VarClass::Kind kind) {
  std::vector<VarId> out;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    if (cfg[i].kind == kind) out.push_back(static_cast<VarId>(i));
  }
  return out;
}

Outcome criterion5() {
  Outcome o;
  std::mt19937_64 rng(0x5eed0005);
  std::size_t l4 = 0, l4_bad = 0, l5_bad = 0, l7 = 0, l7_bad = 0, l9 = 0, l9_bad = 0, sampled = 0;
  const std::size_t limit = 4000;

  // Lemma 4: bounded variables only.
  for (const auto& cfg : configs({VarClass::bounded(2), VarClass::bounded(3)}, 3)) {
    NfContext ctx = vars_ctx(cfg);
    std::vector<VarId> all(cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i) all[i] = static_cast<VarId>(i);
    const auto w = static_cast<unsigned>(weighted_card(all, ctx));
    ProductSpace space{ctx, subset_sums(cfg.size(), false), {}};
    for (unsigned len = w + 1; len <= w + 2; ++len) {
      for (auto key : space.products(len, 1u << 20, rng)) {
        ++l4;
        if (!space.nf(key).is_zero()) ++l4_bad;
      }
    }
  }

  // Lemma 5: threshold 2, sup equals the monomials of maximal degree.
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    NfContext ctx = vars_ctx(std::vector<VarClass>(n, VarClass::threshold(2)));
    std::vector<LinearTerm> factors(std::uniform_int_distribution<std::size_t>(1, 7)(rng));
    for (auto& f : factors) {
      unsigned mask = std::uniform_int_distribution<unsigned>(1, (1u << n) - 1)(rng);
      for (std::size_t v = 0; v < n; ++v) {
        if ((mask >> v) & 1u) f.vars.push_back(static_cast<VarId>(v));
      }
    }
    TermNF t = nf_linear_product(factors, ctx);
    unsigned maxdeg = 0;
    for (const auto& m : t.monomials) maxdeg = std::max(maxdeg, m.degree());
    TermNF top;
    for (const auto& m : t.monomials) {
      if (m.degree() == maxdeg) top.monomials.push_back(m);
    }
    if (sup_monomials(t) != top) ++l5_bad;
  }

  const std::vector<VarClass> bp = {VarClass::bounded(2), VarClass::bounded(3), VarClass::periodic(2),
                                    VarClass::periodic(3)};

  // Lemma 7: products of 1-sums beyond the weighted cardinality.
  for (const auto& cfg : configs(bp, 3)) {
    NfContext ctx = vars_ctx(cfg);
    std::vector<VarId> all(cfg.size());
    for (std::size_t i = 0; i < cfg.size(); ++i) all[i] = static_cast<VarId>(i);
    const auto w = static_cast<unsigned>(weighted_card(all, ctx));
    ProductSpace space{ctx, subset_sums(cfg.size(), true), {}};
    for (unsigned len = w + 1; len <= w + 2; ++len) {
      auto prods = space.products(len, limit, rng);
      if (prods.size() == limit) sampled += limit;
      for (auto key : prods) {
        ++l7;
        const TermNF full = space.nf(key);
        std::vector<std::uint64_t> subs;
        space.for_each_sub(key, [&](std::uint64_t k) { subs.push_back(k); });
        bool found = false;
        for (auto lo : subs) {
          if (lo == key) continue;
          bool interval_ok = true;
          space.for_each_sub(key, [&](std::uint64_t mid) {
            if (!interval_ok) return;
            bool above = true;
            for (std::size_t i = 0; i < space.types.size(); ++i) {
              if (((mid >> (4 * i)) & 15u) < ((lo >> (4 * i)) & 15u)) above = false;
            }
            if (above && space.nf(mid) != full) interval_ok = false;
          });
          if (interval_ok) {
            found = true;
            break;
          }
        }
        if (!found) ++l7_bad;
      }
    }
  }

  // Lemma 9: general linear products beyond b(B, Pi).
  for (const auto& cfg : configs(bp, 3)) {
    NfContext ctx = vars_ctx(cfg);
    const auto b = static_cast<unsigned>(cutoff_bound(ids_of(cfg, VarClass::Kind::Bounded),
                                                      ids_of(cfg, VarClass::Kind::Periodic), ctx));
    ProductSpace space{ctx, subset_sums(cfg.size(), false), {}};
    for (unsigned len = b + 1; len <= b + 2; ++len) {
      auto prods = space.products(len, limit, rng);
      if (prods.size() == limit) sampled += limit;
      for (auto key : prods) {
        ++l9;
        const TermNF full = space.nf(key);
        if (full.is_zero()) continue;
        bool found = false;
        space.for_each_sub(key, [&](std::uint64_t k) {
          if (!found && k != key && space.nf(k) == full) found = true;
        });
        if (!found) ++l9_bad;
      }
    }
  }

  o.pass = l4_bad == 0 && l5_bad == 0 && l7_bad == 0 && l9_bad == 0;
  o.detail = "L4 " + std::to_string(l4) + " products/" + std::to_string(l4_bad) + " bad; L5 500/" +
             std::to_string(l5_bad) + "; L7 " + std::to_string(l7) + "/" + std::to_string(l7_bad) + "; L9 " +
             std::to_string(l9) + "/" + std::to_string(l9_bad) + " (" + std::to_string(sampled) +
             " products sampled from oversized spaces)";
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::vector<Grammar> gs;
  for (const auto& name : kRegularFixtures) gs.push_back(load_fixture(name));
  for (auto& g : random_corpus(50, 0x5eed0006)) gs.push_back(std::move(g));
  std::size_t bad = 0;
  for (const auto& g : gs) {
    Grammar n = normalize(g);
    Grammar a = to_alternative(n);
    if (!n.is_normalized() || !a.is_alternative()) ++bad;
    for (std::size_t k = 1; k <= 4; ++k) {
      auto base = language_upto(g, k);
      if (language_upto(n, k) != base || language_upto(a, k) != base) ++bad;
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(gs.size()) + " grammars, n <= 4, " + std::to_string(bad) + " discrepancies";
  return o;
}

bool in_language(const SPGraph& w, const Grammar& g) { return language_upto(g, w.edge_count()).count(w) != 0; }

Outcome criterion7() {
  Outcome o;
  std::vector<Grammar> regular;
  for (const auto& name : kRegularFixtures) regular.push_back(load_fixture(name));
  for (auto& g : random_corpus(30, 0x5eed0007)) regular.push_back(std::move(g));
  std::vector<Grammar> lefts = regular;
  lefts.push_back(load_fixture("free.spg"));

  std::size_t checks = 0, bad = 0;
  std::vector<GraphSet> lang;
  for (const auto& g : lefts) lang.push_back(language_upto(g, 4));

  for (std::size_t i = 0; i < regular.size(); ++i) {
    for (std::size_t j = i; j < regular.size(); ++j) {
      ++checks;
      auto res = intersection_empty({regular[i], regular[j]});
      std::size_t common_min = 0;
      for (const auto& x : lang[i]) {
        if (lang[j].count(x) != 0 && (common_min == 0 || x.edge_count() < common_min)) common_min = x.edge_count();
      }
      if (!res.decided) {
        ++bad;
      } else if (res.empty) {
        if (common_min != 0) ++bad;
      } else {
        const SPGraph& w = *res.witness;
        if (!in_language(w, regular[i]) || !in_language(w, regular[j])) ++bad;
        if (common_min != 0 && w.edge_count() != common_min) ++bad;
      }
    }
  }
  for (std::size_t i = 0; i < lefts.size(); ++i) {
    for (std::size_t j = 0; j < regular.size(); ++j) {
      ++checks;
      auto res = inclusion(lefts[i], regular[j]);
      std::size_t cex_min = 0;
      for (const auto& x : lang[i]) {
        if (lang[j].count(x) == 0 && (cex_min == 0 || x.edge_count() < cex_min)) cex_min = x.edge_count();
      }
      if (res.holds) {
        if (cex_min != 0) ++bad;
      } else {
        const SPGraph& w = *res.witness;
        if (!in_language(w, lefts[i]) || in_language(w, regular[j]) || member(w, regular[j])) ++bad;
        if (cex_min != 0 && w.edge_count() != cex_min) ++bad;
      }
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(checks) + " decisions cross-checked, " + std::to_string(bad) + " discrepancies";
  return o;
}

std::string run_command(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) return out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  pclose(p);
  return out;
}

Outcome criterion8() {
  Outcome o;
  std::size_t saturated = 0, over = 0;
  std::string notes;
  for (const auto& name : kRegularFixtures) {
    Grammar g = load_fixture(name);
    auto reach = reachable_profiles(build_ctx(g), 1000000);
    if (!reach.saturated) continue;
    ++saturated;
    if (boost::multiprecision::cpp_int(reach.profiles.size()) > bound_cardinality(g)) {
      ++over;
      notes += " " + name;
    }
  }
  const std::string cli = SPR_CLI_PATH;
  const std::string wc = "/tmp/spr_acceptance_wc2.spg";
  const std::string dg = "/tmp/spr_acceptance_wc2_single.spg";
  run_command(cli + " gen-worstcase -k 2 > " + wc);
  {
    std::ofstream f(dg);
    f << write_grammar(gen_worstcase_words(2, {"ab"}));
  }
  std::size_t wc_p = 0, dg_p = 0;
  bool parsed = true;
  try {
    auto j1 = nlohmann::json::parse(run_command(cli + " --json stats " + wc));
    auto j2 = nlohmann::json::parse(run_command(cli + " --json stats " + dg));
    wc_p = j1.at("reachable_p_profiles").get<std::size_t>();
    dg_p = j2.at("reachable_p_profiles").get<std::size_t>();
    notes += " worst-case(2) " + std::to_string(wc_p) + " P-profiles (" +
             (j1.at("saturated").get<bool>() ? "saturated" : "cap reached") + "), single-word variant " +
             std::to_string(dg_p) + " (" + (j2.at("saturated").get<bool>() ? "saturated" : "cap reached") + ")";
  } catch (const std::exception& e) {
    parsed = false;
    notes += std::string(" stats output unreadable: ") + e.what();
  }
  o.pass = over == 0 && saturated > 0 && parsed && wc_p > dg_p;
  o.detail = std::to_string(saturated) + " fixtures saturated, " + std::to_string(over) + " above bound;" + notes;
  return o;
}

Outcome criterion9(double& seconds) {
  Outcome o;
  Grammar univ = load_fixture("univ_ab.spg");
  std::mt19937_64 rng(0x5eed0009);
  SPGraph g = random_graph(rng, 1000, {"a", "b"});
  const auto start = Clock::now();
  bool yes = member(g, univ);
  seconds = std::chrono::duration<double>(Clock::now() - start).count();
  o.pass = yes && seconds < 2.0;
  o.detail = std::to_string(g.edge_count()) + "-edge graph, member = " + (yes ? "true" : "false");
  return o;
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int id, double limit_s, const std::function<Outcome()>& f) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_s > 0 && s >= limit_s) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(limit_s) + " s limit";
    }
    if (!o.pass) ++failures;
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", s);
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " [" << timing << "] " << o.detail
              << std::endl;
  };
  std::size_t checked = 0;
  double member_s = 0;
  report(1, 1.0, criterion1);
  report(2, 10.0, criterion2);
  report(3, 60.0, [&] { return criterion3(checked); });
  report(4, 0, criterion4);
  report(5, 120.0, criterion5);
  report(6, 0, criterion6);
  report(7, 0, criterion7);
  report(8, 0, criterion8);
  report(9, 2.0, [&] { return criterion9(member_s); });
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
