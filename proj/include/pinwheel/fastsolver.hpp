#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pinwheel/folding.hpp"
#include "pinwheel/instance.hpp"
#include "pinwheel/solver.hpp"

namespace pinwheel {

// A candidate partition with the instance it folds to and its ordering key.
// Lower scores look cheaper to search: the product term is a state-space-size
// proxy and the density term punishes folds that sit close to the
// infeasibility cliff at 0.95.
struct ScoredPartition {
  Partition partition;
  Instance folded;
  double density = 0.0;
  double score = 0.0;  // sqrt(product of folded elements) / (0.95 - density)^2
};

struct FastSolveConfig {
  long long time_limit_ms = 60000;  // global budget
  long long per_attempt_ms = 10000;  // slice per folded attempt, clamped to remaining
  // Nonzero switches both budgets off in favour of a fixed node count per
  // attempt, which makes the whole run independent of wall-clock speed.
  long long per_attempt_nodes = 0;
  std::size_t max_partitions = 4096;
};

// All partitions of positions of `a` into disjoint groups of size 2, 3 or 5
// that pass group_fits. The empty partition always comes first; after it the
// walk prefers grouping the smallest open position over leaving it out, so
// richly folded candidates surface before the cap bites.
std::vector<Partition> enumerate_partitions(const Instance& a,
                                            std::size_t cap = 4096);

// Folds `a` by `p` and scores the result. Density is compared exactly against
// the cap; nullopt means the fold is too dense to be worth attempting.
// Fractional folded elements are rounded up inside the product.
std::optional<ScoredPartition> score_partition(const Instance& a,
                                               const Partition& p);

// Serialized form used for deterministic tie-breaking: "[[0,1],[2,3]]".
std::string partition_key(const Partition& p);

// Tries folded variants of `a` in ascending score order, each through solve()
// with a slice of the budget, and lifts the first cycle found back to `a`
// (verified). Incomplete by design: a failed attempt proves nothing, so the
// outcome is Schedulable or Timeout, never Unschedulable.
SolveResult fast_solve(const Instance& a, const FastSolveConfig& cfg = {});

}  // namespace pinwheel
