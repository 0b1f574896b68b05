#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "spr/recognizer.hpp"

namespace spr {

using ProfileTuple = std::vector<Profile>;

struct ClosureOptions {
  std::size_t cap = 1000000;
  /// Break ties between equal-size witnesses by the canonical graph order.
  bool canonical_ties = true;
  /// When set, stop after the first size level holding a matching tuple.
  std::function<bool(const ProfileTuple&)> target;
};

/// Least set of profile tuples containing the bridge tuples and closed under
/// componentwise serial and parallel composition, explored by witness size.
/// Every graph decomposes as G' . A with A a bridge or P-graph, and as
/// G' || B with B an S-graph, so those are the only combinations tried.
/// Each tuple is found at the size of its smallest witness.
class ProfileClosure {
 public:
  enum class Op { Bridge, Serial, Parallel };
  struct Entry {
    ProfileTuple value;
    bool is_p = false;
    std::size_t level = 0;
    Op op = Op::Bridge;
    std::size_t a = 0;
    std::size_t b = 0;
    std::string label;
  };

  ProfileClosure(std::vector<const RecognizerCtx*> ctxs, std::set<std::string> alphabet,
                 ClosureOptions options);
  ~ProfileClosure();
  ProfileClosure(const ProfileClosure&) = delete;
  ProfileClosure& operator=(const ProfileClosure&) = delete;

  void run();

  const std::vector<Entry>& entries() const;
  bool saturated() const;
  /// Index of the minimal entry matching the target, if any.
  std::optional<std::size_t> hit() const;
  SPGraph witness(std::size_t index);
  std::size_t explored() const;
  std::size_t levels() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace spr
