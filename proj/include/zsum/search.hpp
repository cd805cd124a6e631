#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>

#include "zsum/group.hpp"
#include "zsum/length_set.hpp"
#include "zsum/sequence.hpp"

namespace zsum {

/// s_L(G) is infinite: L misses every multiple of exp(G).
class InfiniteInvariant : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct SearchLimits {
  std::uint64_t max_nodes = 0;  // 0 = unlimited
  double max_seconds = 0;       // 0 = unlimited
  unsigned workers = 1;
  /// Admissible cap: s_L(G) <= upper_bound is known, so the search stops as
  /// soon as a witness of length upper_bound - 1 appears.
  std::optional<Int> upper_bound;
  /// Subtree size after which a worker hands unexplored siblings to the pool.
  std::uint64_t split_threshold = 1u << 14;
};

struct SearchOutcome {
  Int max_length = 0;
  Sequence witness{GroupSpec{}};
  std::uint64_t nodes_expanded = 0;
  std::chrono::duration<double> wall_time{};
  /// False when a node or time limit cut the search; max_length is then only
  /// a lower bound for s_L(G) - 1.
  bool exact = true;
  bool capped = false;  // terminated early by reaching upper_bound - 1
};

/// Longest sequence over g with no nonempty zero-sum subsequence of length in
/// L, by depth-first search over canonical multisets with reach-table
/// pruning. The witness is the canonically least one of maximal length,
/// independent of the worker count.
SearchOutcome max_extremal(const GroupSpec& g, const LengthSet& lengths, const SearchLimits& limits = {});

/// Throws InfiniteInvariant when L and exp(G)N are disjoint.
void check_finite(const GroupSpec& g, const LengthSet& lengths);

}  // namespace zsum
