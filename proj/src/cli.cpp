#include "spr/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "spr/decision.hpp"
#include "spr/grammar.hpp"
#include "spr/oracle.hpp"
#include "spr/recognizer.hpp"

namespace spr {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Globals {
  bool json = false;
  std::uint64_t seed = 1;
  std::size_t cap = 1000000;
};

std::string read_source(const std::string& path, std::istream& in) {
  std::stringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) throw InputError("cannot open '" + path + "'");
  buf << f.rdbuf();
  return buf.str();
}

Grammar load(const std::string& path, std::istream& in) {
  try {
    return parse_grammar(read_source(path, in));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

double ms_since(Clock::time_point t) { return std::chrono::duration<double, std::milli>(Clock::now() - t).count(); }

std::string format_big(const boost::multiprecision::cpp_int& v) {
  if (v == 0) return "0";
  const auto bits = boost::multiprecision::msb(v) + 1;
  if (bits <= 128) return v.str();
  return "~2^" + std::to_string(bits - 1);
}

/// Prints a verdict and returns its exit code.
int verdict(std::ostream& out, const Globals& gl, bool holds, const std::optional<SPGraph>& witness,
            const DecisionStats& stats) {
  if (gl.json) {
    json j;
    j["holds"] = holds;
    j["witness"] = witness ? json(witness->to_string()) : json(nullptr);
    j["stats"] = {{"profiles_explored", stats.profiles_explored},
                  {"iterations", stats.iterations},
                  {"wall_ms", stats.wall_ms}};
    out << j.dump() << "\n";
  } else if (holds) {
    out << "holds\n";
  } else {
    out << "fails";
    if (witness) out << ": witness " << witness->to_string();
    out << "\n";
  }
  return holds ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Globals gl;
  CLI::App app{"Decision procedures for regular series-parallel graph grammars", "spr"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", gl.json, "JSON output");
  app.add_option("--seed", gl.seed, "Seed for randomized commands");
  app.add_option("--cap", gl.cap, "Profile closure cap")->check(CLI::PositiveNumber);

  std::string g_path, l_path, r_path, term;
  std::vector<std::string> paths;
  std::size_t n = 0, random_edges = 0;
  unsigned k = 0;
  bool reject = false, alternative = false;

  auto* check = app.add_subcommand("check", "Validate a grammar");
  check->add_option("grammar", g_path)->required();
  auto* norm = app.add_subcommand("normalize", "Print the normalized grammar");
  norm->add_option("grammar", g_path)->required();
  norm->add_flag("--alternative", alternative, "Also convert to alternative form");
  auto* mem = app.add_subcommand("member", "Membership of a graph");
  mem->add_option("-g,--grammar", g_path)->required();
  auto* mem_t = mem->add_option("-t,--term", term);
  auto* mem_r = mem->add_option("--random", random_edges, "Test a random graph with this many edges");
  mem_t->excludes(mem_r);
  auto* emp = app.add_subcommand("empty", "Emptiness of a grammar");
  emp->add_option("grammar", g_path)->required();
  auto* inter = app.add_subcommand("intersect", "Emptiness of an intersection of regular grammars");
  inter->add_option("grammars", paths)->required();
  auto* inc = app.add_subcommand("include", "Inclusion of L(left) in L(right)");
  inc->add_option("-l,--left", l_path)->required();
  inc->add_option("-r,--right", r_path)->required();
  auto* filt = app.add_subcommand("filter", "Annotated grammar for L(left) intersected with L(right)");
  filt->add_option("-l,--left", l_path)->required();
  filt->add_option("-r,--right", r_path)->required();
  filt->add_flag("--reject", reject, "Intersect with the complement of L(right)");
  auto* enu = app.add_subcommand("enumerate", "Members with at most n edges");
  enu->add_option("-g,--grammar", g_path)->required();
  enu->add_option("-n", n)->required();
  auto* st = app.add_subcommand("stats", "Reachable profiles and the cardinality bound");
  st->add_option("grammar", g_path)->required();
  auto* gen = app.add_subcommand("gen-worstcase", "Print the lower-bound grammar");
  gen->add_option("-k", k)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "spr: " << e.what() << "\n";
    return 2;
  }

  try {
    if (check->parsed()) {
      Grammar g = load(g_path, in);
      auto rep = validate_regular(g);
      if (gl.json) {
        out << json{{"regular", rep.regular}, {"offending", rep.offending}, {"normalized", g.is_normalized()}}.dump()
            << "\n";
      } else if (rep.regular) {
        out << "regular" << (g.is_normalized() ? ", normalized" : "") << "\n";
      } else {
        out << "not regular\n";
        for (const auto& o : rep.offending) out << "  " << o << "\n";
      }
      return rep.regular ? 0 : 1;
    }
    if (norm->parsed()) {
      Grammar g = normalize(load(g_path, in));
      if (alternative) g = to_alternative(g);
      out << write_grammar(g);
      return 0;
    }
    if (mem->parsed()) {
      Grammar g = load(g_path, in);
      RecognizerCtx ctx = build_ctx(g);
      SPGraph graph = SPGraph::bridge("a");
      if (mem_r->count() > 0) {
        if (random_edges == 0) throw InputError("--random needs a positive edge count");
        std::mt19937_64 rng(gl.seed);
        graph = random_graph(rng, random_edges, {g.alphabet.begin(), g.alphabet.end()});
      } else if (mem_t->count() > 0) {
        graph = parse_graph(term, &g.alphabet);
      } else {
        throw InputError("member needs -t <term> or --random <n>");
      }
      const auto start = Clock::now();
      bool yes = member(graph, ctx);
      if (gl.json) {
        out << json{{"member", yes},
                    {"edges", graph.edge_count()},
                    {"term", mem_r->count() > 0 ? graph.to_string() : term},
                    {"wall_ms", ms_since(start)}}
                   .dump()
            << "\n";
      } else {
        out << (yes ? "true" : "false") << "\n";
      }
      return yes ? 0 : 1;
    }
    if (emp->parsed()) {
      Grammar g = load(g_path, in);
      const auto start = Clock::now();
      auto w = shortest_member(g);
      DecisionStats stats;
      stats.iterations = 1;
      stats.wall_ms = ms_since(start);
      return verdict(out, gl, !w.has_value(), w, stats);
    }
    if (inter->parsed()) {
      std::vector<Grammar> gs;
      for (const auto& p : paths) gs.push_back(load(p, in));
      auto res = intersection_empty(gs, gl.cap);
      if (!res.decided) {
        err << "spr: undecided, the profile cap of " << gl.cap << " was reached\n";
        return 2;
      }
      return verdict(out, gl, res.empty, res.witness, res.stats);
    }
    if (inc->parsed()) {
      auto res = inclusion(load(l_path, in), load(r_path, in));
      return verdict(out, gl, res.holds, res.witness, res.stats);
    }
    if (filt->parsed()) {
      out << write_grammar(filter_grammar(load(l_path, in), load(r_path, in),
                                          reject ? FilterMode::Reject : FilterMode::Accept));
      return 0;
    }
    if (enu->parsed()) {
      if (n == 0) throw InputError("-n must be positive");
      auto lang = language_upto(load(g_path, in), n);
      std::vector<SPGraph> sorted(lang.begin(), lang.end());
      std::sort(sorted.begin(), sorted.end(), witness_less);
      if (gl.json) {
        json j = json::array();
        for (const auto& x : sorted) j.push_back(x.to_string());
        out << j.dump() << "\n";
      } else {
        for (const auto& x : sorted) out << x.to_string() << "\n";
      }
      return 0;
    }
    if (st->parsed()) {
      Grammar g = load(g_path, in);
      const auto start = Clock::now();
      RecognizerCtx ctx = build_ctx(g);
      auto reach = reachable_profiles(ctx, gl.cap);
      auto bound = bound_cardinality_detail(g);
      const double wall = ms_since(start);
      if (gl.json) {
        out << json{{"s_nonterminals", bound.s_count},
                    {"p_nonterminals", bound.p_count},
                    {"rules", ctx.grammar.rules.size()},
                    {"reachable_profiles", reach.profiles.size()},
                    {"reachable_p_profiles", reach.p_count},
                    {"reachable_s_profiles", reach.s_count},
                    {"saturated", reach.saturated},
                    {"b_max", bound.b_max},
                    {"p_max", bound.p_max},
                    {"bound", format_big(bound.total)},
                    {"bound_p", format_big(bound.p_bound)},
                    {"bound_s", format_big(bound.s_bound)},
                    {"wall_ms", wall}}
                   .dump()
            << "\n";
      } else {
        out << "nonterminals: " << bound.p_count << " P, " << bound.s_count << " S (normalized alternative form)\n"
            << "rules: " << ctx.grammar.rules.size() << "\n"
            << "reachable profiles: " << reach.profiles.size() << " (" << reach.p_count << " P, " << reach.s_count
            << " S)" << (reach.saturated ? ", saturated" : ", cap reached") << "\n"
            << "bound: " << format_big(bound.total) << " (P " << format_big(bound.p_bound) << ", S "
            << format_big(bound.s_bound) << ")\n";
      }
      return 0;
    }
    if (gen->parsed()) {
      out << write_grammar(gen_worstcase(k));
      return 0;
    }
  } catch (const InputError& e) {
    err << "spr: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace spr
