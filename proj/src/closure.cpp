#include "spr/closure.hpp"

#include <map>
#include <unordered_map>

namespace spr {

namespace {

struct TupleHash {
  std::size_t operator()(const ProfileTuple& t) const {
    std::size_t h = t.size();
    for (const auto& x : t) h = h * 0x9e3779b97f4a7c15ull ^ hash_value(x);
    return h;
  }
};

using SeqKey = std::vector<SProfile>;
using AtomKey = std::pair<std::vector<SProfile>, std::vector<std::vector<bool>>>;
using ParKey = std::vector<std::vector<TermNF>>;

template <class Key>
struct Groups {
  struct Group {
    Key key;
    std::size_t rep;
  };
  std::vector<Group> groups;
  std::map<Key, std::size_t> index;
  std::vector<std::vector<std::size_t>> by_level;

  void offer(Key key, std::size_t level, std::size_t rep) {
    if (index.count(key) != 0) return;
    index.emplace(key, groups.size());
    if (by_level.size() <= level) by_level.resize(level + 1);
    by_level[level].push_back(groups.size());
    groups.push_back({std::move(key), rep});
  }
  const std::vector<std::size_t>& at(std::size_t level) const {
    static const std::vector<std::size_t> none;
    return level < by_level.size() ? by_level[level] : none;
  }
};

}  // namespace

struct ProfileClosure::Impl {
  std::vector<const RecognizerCtx*> ctxs;
  std::set<std::string> alphabet;
  ClosureOptions options;

  std::vector<Entry> entries;
  std::unordered_map<ProfileTuple, std::size_t, TupleHash> index;
  std::vector<std::optional<SPGraph>> witnesses;

  Groups<SeqKey> seq_groups;    // any entry, by seq image
  Groups<AtomKey> atom_groups;  // bridges and P-entries, by seq image and accepting components
  Groups<ParKey> par_any;       // any entry, by par image
  Groups<ParKey> par_s;         // S-entries, by par image

  bool saturated = false;
  bool done = false;
  std::optional<std::size_t> hit;
  std::size_t explored = 0;
  std::size_t levels = 0;

  std::size_t add_entry(Entry e) {
    const std::size_t id = entries.size();
    index.emplace(e.value, id);
    const std::size_t n = ctxs.size();
    SeqKey seq(n);
    ParKey par(n);
    std::vector<std::vector<bool>> acc(n);
    for (std::size_t k = 0; k < n; ++k) {
      seq[k] = seq_map(e.value[k], *ctxs[k]);
      par[k] = par_map(e.value[k], *ctxs[k]);
      acc[k] = accepting_components(par[k], *ctxs[k]);
    }
    const bool atom = e.is_p || e.op == Op::Bridge;
    const bool is_p = e.is_p;
    const std::size_t level = e.level;
    entries.push_back(std::move(e));
    witnesses.emplace_back();
    if (!is_p) par_s.offer(par, level, id);
    par_any.offer(std::move(par), level, id);
    if (atom) atom_groups.offer({seq, std::move(acc)}, level, id);
    seq_groups.offer(std::move(seq), level, id);
    return id;
  }

  SPGraph witness(std::size_t i) {
    if (witnesses[i]) return *witnesses[i];
    const Entry& e = entries[i];
    SPGraph g = e.op == Op::Bridge    ? SPGraph::bridge(e.label)
                : e.op == Op::Serial ? compose_serial(witness(e.a), witness(e.b))
                                     : compose_parallel(witness(e.a), witness(e.b));
    witnesses[i] = g;
    return g;
  }

  SPGraph candidate_graph(Op op, std::size_t a, std::size_t b) {
    return op == Op::Serial ? compose_serial(witness(a), witness(b)) : compose_parallel(witness(a), witness(b));
  }

  bool matches(const ProfileTuple& t) const { return options.target && options.target(t); }

  /// Records the minimal matching entry among `fresh`; returns true on a hit.
  bool check_target(const std::vector<std::size_t>& fresh) {
    if (!options.target) return false;
    for (std::size_t i : fresh) {
      if (!matches(entries[i].value)) continue;
      if (!hit || (options.canonical_ties && witness(i) < witness(*hit))) hit = i;
      if (!options.canonical_ties) break;
    }
    return hit.has_value();
  }

  void run() {
    if (done) return;
    done = true;
    std::vector<std::size_t> fresh;
    for (const auto& a : alphabet) {
      ProfileTuple t;
      for (const auto* c : ctxs) t.push_back(bridge_profile(a, *c));
      ++explored;
      if (index.count(t) != 0) continue;
      Entry e;
      e.value = std::move(t);
      e.level = 1;
      e.op = Op::Bridge;
      e.label = a;
      fresh.push_back(add_entry(std::move(e)));
    }
    levels = 1;
    if (fresh.empty()) {
      saturated = true;
      return;
    }
    std::size_t max_level = 1;
    if (check_target(fresh)) return;
    if (entries.size() > options.cap) return;

    const std::size_t n = ctxs.size();
    for (std::size_t level = 2; level <= 2 * max_level; ++level) {
      levels = level;
      struct Candidate {
        bool is_p;
        Op op;
        std::size_t a, b;
      };
      std::map<ProfileTuple, Candidate> found;
      auto offer = [&](ProfileTuple t, Candidate c) {
        ++explored;
        if (index.count(t) != 0) return;
        auto [it, inserted] = found.emplace(std::move(t), c);
        if (!inserted && options.canonical_ties) {
          const Candidate& old = it->second;
          if (candidate_graph(c.op, c.a, c.b) < candidate_graph(old.op, old.a, old.b)) it->second = c;
        }
      };
      for (std::size_t i = 1; i < level; ++i) {
        for (std::size_t x : seq_groups.at(i)) {
          const auto& sx = seq_groups.groups[x];
          for (std::size_t y : atom_groups.at(level - i)) {
            const auto& ay = atom_groups.groups[y];
            ProfileTuple t(n);
            for (std::size_t k = 0; k < n; ++k) {
              t[k] = serial_parts(sx.key[k], ay.key.first[k], ay.key.second[k], *ctxs[k]);
            }
            offer(std::move(t), {false, Op::Serial, sx.rep, ay.rep});
          }
        }
        for (std::size_t x : par_any.at(i)) {
          const auto& px = par_any.groups[x];
          for (std::size_t y : par_s.at(level - i)) {
            const auto& py = par_s.groups[y];
            ProfileTuple t(n);
            for (std::size_t k = 0; k < n; ++k) t[k] = parallel_parts(px.key[k], py.key[k], *ctxs[k]);
            offer(std::move(t), {true, Op::Parallel, px.rep, py.rep});
          }
        }
      }
      fresh.clear();
      for (auto& [t, c] : found) {
        Entry e;
        e.value = t;
        e.is_p = c.is_p;
        e.level = level;
        e.op = c.op;
        e.a = c.a;
        e.b = c.b;
        fresh.push_back(add_entry(std::move(e)));
      }
      if (!fresh.empty()) max_level = level;
      if (check_target(fresh)) return;
      if (entries.size() > options.cap) return;
    }
    saturated = true;
  }
};

ProfileClosure::ProfileClosure(std::vector<const RecognizerCtx*> ctxs, std::set<std::string> alphabet,
                               ClosureOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->ctxs = std::move(ctxs);
  impl_->alphabet = std::move(alphabet);
  impl_->options = std::move(options);
}

ProfileClosure::~ProfileClosure() = default;

void ProfileClosure::run() { impl_->run(); }
const std::vector<ProfileClosure::Entry>& ProfileClosure::entries() const { return impl_->entries; }
bool ProfileClosure::saturated() const { return impl_->saturated; }
std::optional<std::size_t> ProfileClosure::hit() const { return impl_->hit; }
SPGraph ProfileClosure::witness(std::size_t index) { return impl_->witness(index); }
std::size_t ProfileClosure::explored() const { return impl_->explored; }
std::size_t ProfileClosure::levels() const { return impl_->levels; }

}  // namespace spr
