#include "spr/recognizer.hpp"

#include <algorithm>

#include <json.hpp>

#include "spr/closure.hpp"
#include "spr/syntax.hpp"

namespace spr {

std::size_t hash_value(const Profile& x) {
  if (const auto* s = std::get_if<SProfile>(&x)) {
    std::size_t h = 0x51ed27u;
    for (auto w : s->bits) h = (h ^ static_cast<std::size_t>(w ^ (w >> 29))) * 0x100000001b3ull;
    return h;
  }
  const auto& p = std::get<PProfile>(x);
  std::size_t h = 0x9e3779b9u;
  for (const auto& t : p.per_p) h = (h ^ hash_value(t)) * 0x100000001b3ull + 7;
  return h;
}

SProfile RecognizerCtx::empty_sprofile() const {
  return SProfile{std::vector<std::uint64_t>(ns() * words_per_row(), 0)};
}

bool RecognizerCtx::test(const SProfile& x, std::uint32_t s, std::uint32_t col) const {
  return (x.bits[s * words_per_row() + col / 64] >> (col % 64)) & 1u;
}

void RecognizerCtx::set(SProfile& x, std::uint32_t s, std::uint32_t col) const {
  x.bits[s * words_per_row() + col / 64] |= std::uint64_t{1} << (col % 64);
}

std::string RecognizerCtx::column_name(std::uint32_t col) const {
  if (col < ns()) return s_names[col];
  if (col < bot()) return p_names[col - ns()];
  return "⊥";
}

RecognizerCtx build_ctx(const Grammar& g) {
  auto report = validate_regular(g, true);
  if (!report.regular) {
    throw InputError("grammar is not regular: " + report.offending.front());
  }
  RecognizerCtx ctx;
  ctx.source = g;
  ctx.grammar = to_alternative(normalize(g));
  ctx.table = compute_base_period(ctx.grammar);
  const Grammar& gr = ctx.grammar;

  ctx.s_names = gr.names_of_kind(NtKind::S);
  ctx.p_names = gr.names_of_kind(NtKind::P);
  for (std::uint32_t i = 0; i < ctx.s_names.size(); ++i) ctx.s_id[ctx.s_names[i]] = i;
  for (std::uint32_t i = 0; i < ctx.p_names.size(); ++i) ctx.p_id[ctx.p_names[i]] = i;

  ctx.p_ctx.resize(ctx.np());
  ctx.accepting.resize(ctx.np());
  ctx.seq_pairs.resize(ctx.np());
  for (std::uint32_t p = 0; p < ctx.np(); ++p) {
    NfContext& nc = ctx.p_ctx[p];
    for (const auto& s : ctx.s_names) nc.add(s);
    for (const auto& [s, base] : ctx.table.bounded[ctx.p_names[p]]) {
      nc.set_class(nc.id(s), VarClass::bounded(base));
    }
    for (const auto& [s, period] : ctx.table.periodic[ctx.p_names[p]]) {
      nc.set_class(nc.id(s), VarClass::periodic(period));
    }
  }

  std::map<std::string, std::vector<std::string>> alt_targets;  // label -> P with p ~> s_a ~> a
  std::map<std::string, std::vector<std::string>> f_rules;      // s -> labels
  for (const auto& r : gr.rules) {
    if (const auto* f = std::get_if<RuleF>(&r)) f_rules[f->s].push_back(f->a);
  }
  for (const auto& r : gr.rules) {
    if (const auto* b = std::get_if<RuleB>(&r)) {
      std::uint32_t p = ctx.p_id.at(b->p);
      std::vector<std::pair<VarId, unsigned>> raw;
      for (const auto& [s, l] : b->body) raw.emplace_back(ctx.s_id.at(s), l);
      if (auto m = nf_monomial(raw, ctx.p_ctx[p])) ctx.accepting[p].push_back(*m);
    } else if (const auto* alt = std::get_if<RuleAlt>(&r)) {
      std::uint32_t p = ctx.p_id.at(alt->p);
      if (auto m = nf_monomial({{ctx.s_id.at(alt->s), 1}}, ctx.p_ctx[p])) ctx.accepting[p].push_back(*m);
      for (const auto& a : f_rules[alt->s]) alt_targets[a].push_back(alt->p);
    } else if (const auto* c = std::get_if<RuleC>(&r)) {
      ctx.seq_pairs[ctx.p_id.at(c->p)].emplace_back(ctx.s_id.at(c->s), ctx.s_id.at(c->s1));
    } else if (const auto* d = std::get_if<RuleD>(&r)) {
      ctx.seq_pairs[ctx.p_id.at(d->p1)].emplace_back(ctx.s_id.at(d->s), ctx.p_column(ctx.p_id.at(d->p2)));
    }
  }
  for (std::uint32_t p = 0; p < ctx.np(); ++p) {
    auto& acc = ctx.accepting[p];
    std::sort(acc.begin(), acc.end());
    acc.erase(std::unique(acc.begin(), acc.end()), acc.end());
    acc.erase(std::remove_if(acc.begin(), acc.end(), [](const Monomial& m) { return m.empty(); }), acc.end());
    auto& sp = ctx.seq_pairs[p];
    std::sort(sp.begin(), sp.end());
    sp.erase(std::unique(sp.begin(), sp.end()), sp.end());
  }

  for (const auto& a : gr.alphabet) {
    SProfile x = ctx.empty_sprofile();
    for (const auto& r : gr.rules) {
      if (const auto* f = std::get_if<RuleF>(&r); f != nullptr && f->a == a) ctx.set(x, ctx.s_id.at(f->s), ctx.bot());
    }
    for (const auto& p : alt_targets[a]) {
      for (const auto& [s, col] : ctx.seq_pairs[ctx.p_id.at(p)]) ctx.set(x, s, col);
    }
    ctx.bridges.emplace(a, std::move(x));
  }

  for (const auto& x : gr.axioms) {
    if (gr.is_s(x)) ctx.s_axioms.push_back(ctx.s_id.at(x));
    else ctx.p_axioms.push_back(ctx.p_id.at(x));
  }
  return ctx;
}

SProfile bridge_profile(const std::string& label, const RecognizerCtx& ctx) {
  auto it = ctx.bridges.find(label);
  if (it == ctx.bridges.end()) throw InputError("unknown label '" + label + "'");
  return it->second;
}

std::vector<TermNF> par_map(const Profile& x, const RecognizerCtx& ctx) {
  if (const auto* p = std::get_if<PProfile>(&x)) return p->per_p;
  const auto& s = std::get<SProfile>(x);
  std::vector<TermNF> out(ctx.np());
  for (std::uint32_t p = 0; p < ctx.np(); ++p) {
    LinearTerm l;
    for (std::uint32_t v = 0; v < ctx.ns(); ++v) {
      if (ctx.p_ctx[p].has_class(v) && ctx.test(s, v, ctx.bot())) l.vars.push_back(v);
    }
    out[p] = linear_term(l, ctx.p_ctx[p]);
  }
  return out;
}

std::vector<bool> accepting_components(const std::vector<TermNF>& par, const RecognizerCtx& ctx) {
  std::vector<bool> out(ctx.np(), false);
  for (std::uint32_t p = 0; p < ctx.np(); ++p) {
    out[p] = std::any_of(ctx.accepting[p].begin(), ctx.accepting[p].end(),
                         [&](const Monomial& m) { return par[p].contains(m); });
  }
  return out;
}

SProfile seq_map(const Profile& x, const RecognizerCtx& ctx) {
  if (const auto* s = std::get_if<SProfile>(&x)) return *s;
  auto acc = accepting_components(std::get<PProfile>(x).per_p, ctx);
  SProfile out = ctx.empty_sprofile();
  for (std::uint32_t p = 0; p < ctx.np(); ++p) {
    if (!acc[p]) continue;
    for (const auto& [s, col] : ctx.seq_pairs[p]) ctx.set(out, s, col);
  }
  return out;
}

SProfile serial_parts(const SProfile& seq1, const SProfile& seq2, const std::vector<bool>& acc2,
                      const RecognizerCtx& ctx) {
  const std::size_t w = ctx.words_per_row();
  const std::uint32_t ns = static_cast<std::uint32_t>(ctx.ns());
  SProfile out = ctx.empty_sprofile();
  for (std::uint32_t s = 0; s < ns; ++s) {
    std::uint64_t* row = &out.bits[s * w];
    for (std::size_t k = 0; k < w; ++k) {
      std::uint64_t word = seq1.bits[s * w + k];
      while (word != 0) {
        std::uint32_t col = static_cast<std::uint32_t>(k * 64 + __builtin_ctzll(word));
        word &= word - 1;
        if (col < ns) {
          const std::uint64_t* src = &seq2.bits[col * w];
          for (std::size_t j = 0; j < w; ++j) row[j] |= src[j];
        } else if (col < ctx.bot() && acc2[col - ns]) {
          ctx.set(out, s, ctx.bot());
        }
      }
    }
  }
  return out;
}

PProfile parallel_parts(const std::vector<TermNF>& par1, const std::vector<TermNF>& par2,
                        const RecognizerCtx& ctx) {
  PProfile out;
  out.per_p.resize(ctx.np());
  for (std::uint32_t p = 0; p < ctx.np(); ++p) out.per_p[p] = term_mul(par1[p], par2[p], ctx.p_ctx[p]);
  return out;
}

Profile op_parallel(const Profile& x1, const Profile& x2, const RecognizerCtx& ctx) {
  return parallel_parts(par_map(x1, ctx), par_map(x2, ctx), ctx);
}

Profile op_serial(const Profile& x1, const Profile& x2, const RecognizerCtx& ctx) {
  return serial_parts(seq_map(x1, ctx), seq_map(x2, ctx), accepting_components(par_map(x2, ctx), ctx), ctx);
}

Profile eval_graph(const SPGraph& g, const RecognizerCtx& ctx) {
  if (g.is_bridge()) return bridge_profile(g.label(), ctx);
  const auto& cs = g.children();
  Profile acc = eval_graph(cs.front(), ctx);
  for (std::size_t i = 1; i < cs.size(); ++i) {
    Profile next = eval_graph(cs[i], ctx);
    acc = g.is_serial() ? op_serial(acc, next, ctx) : op_parallel(acc, next, ctx);
  }
  return acc;
}

bool accepts(const Profile& x, const RecognizerCtx& ctx) {
  if (const auto* s = std::get_if<SProfile>(&x)) {
    return std::any_of(ctx.s_axioms.begin(), ctx.s_axioms.end(),
                       [&](std::uint32_t a) { return ctx.test(*s, a, ctx.bot()); });
  }
  auto acc = accepting_components(std::get<PProfile>(x).per_p, ctx);
  return std::any_of(ctx.p_axioms.begin(), ctx.p_axioms.end(), [&](std::uint32_t p) { return acc[p]; });
}

bool labels_within(const SPGraph& g, const RecognizerCtx& ctx) {
  if (g.is_bridge()) return ctx.bridges.count(g.label()) != 0;
  return std::all_of(g.children().begin(), g.children().end(),
                     [&](const SPGraph& c) { return labels_within(c, ctx); });
}

bool member(const SPGraph& g, const Grammar& grammar) { return member(g, build_ctx(grammar)); }

bool member(const SPGraph& g, const RecognizerCtx& ctx) {
  if (!labels_within(g, ctx)) return false;
  return accepts(eval_graph(g, ctx), ctx);
}

ReachableProfiles reachable_profiles(const RecognizerCtx& ctx, std::size_t cap) {
  ClosureOptions opts;
  opts.cap = cap;
  opts.canonical_ties = false;
  ProfileClosure closure({&ctx}, ctx.grammar.alphabet, opts);
  closure.run();
  ReachableProfiles out;
  out.saturated = closure.saturated();
  out.explored = closure.explored();
  out.levels = closure.levels();
  for (const auto& e : closure.entries()) {
    out.profiles.push_back(e.value.front());
    (e.is_p ? out.p_count : out.s_count)++;
  }
  return out;
}

namespace {

std::vector<std::pair<std::string, std::string>> sorted_pairs(const SProfile& x, const RecognizerCtx& ctx) {
  std::vector<std::pair<std::string, std::string>> out;
  for (std::uint32_t s = 0; s < ctx.ns(); ++s) {
    for (std::uint32_t c = 0; c < ctx.cols(); ++c) {
      if (ctx.test(x, s, c)) out.emplace_back(ctx.s_names[s], ctx.column_name(c));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::string to_string(const Profile& x, const RecognizerCtx& ctx) {
  std::string out;
  if (const auto* s = std::get_if<SProfile>(&x)) {
    out = "{";
    for (const auto& [a, b] : sorted_pairs(*s, ctx)) {
      if (out.size() > 1) out += ", ";
      out += "(" + a + "," + b + ")";
    }
    return out + "}";
  }
  const auto& p = std::get<PProfile>(x);
  out = "[";
  for (std::uint32_t i = 0; i < ctx.np(); ++i) {
    if (i > 0) out += "; ";
    out += ctx.p_names[i] + ": " + to_string(p.per_p[i], ctx.p_ctx[i]);
  }
  return out + "]";
}

std::string to_json(const Profile& x, const RecognizerCtx& ctx) {
  nlohmann::json j;
  if (const auto* s = std::get_if<SProfile>(&x)) {
    j = nlohmann::json::array();
    for (const auto& [a, b] : sorted_pairs(*s, ctx)) j.push_back({a, b});
  } else {
    const auto& p = std::get<PProfile>(x);
    j = nlohmann::json::object();
    for (std::uint32_t i = 0; i < ctx.np(); ++i) j[ctx.p_names[i]] = to_string(p.per_p[i], ctx.p_ctx[i]);
  }
  return j.dump();
}

}  // namespace spr
