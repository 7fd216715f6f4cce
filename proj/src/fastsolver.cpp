#include "pinwheel/fastsolver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace pinwheel {

std::string partition_key(const Partition& p) {
  std::ostringstream out;
  out << '[';
  for (std::size_t g = 0; g < p.size(); ++g) {
    if (g) out << ',';
    out << '[';
    for (std::size_t i = 0; i < p[g].size(); ++i) {
      if (i) out << ',';
      out << p[g][i];
    }
    out << ']';
  }
  out << ']';
  return out.str();
}

std::vector<Partition> enumerate_partitions(const Instance& a, std::size_t cap) {
  std::vector<Partition> out;
  if (cap == 0) return out;
  out.emplace_back();  // the unfolded baseline is always a candidate
  const std::size_t n = a.size();
  std::vector<char> used(n, 0);
  Partition current;

  auto walk = [&](auto&& self, std::size_t from) -> void {
    if (out.size() >= cap) return;
    std::size_t i = from;
    while (i < n && used[i]) ++i;
    if (i == n) {
      if (!current.empty()) out.push_back(current);
      return;
    }
    used[i] = 1;
    std::vector<std::size_t> open;
    for (std::size_t j = i + 1; j < n; ++j)
      if (!used[j]) open.push_back(j);
    auto attempt = [&](std::initializer_list<std::size_t> rest) {
      if (out.size() >= cap) return;
      std::vector<std::size_t> group{i};
      group.insert(group.end(), rest.begin(), rest.end());
      if (!group_fits(a, group)) return;
      for (std::size_t j : rest) used[j] = 1;
      current.push_back(std::move(group));
      self(self, i + 1);
      current.pop_back();
      for (std::size_t j : rest) used[j] = 0;
    };
    // Group the seed position first, smaller groups and partners first; the
    // leave-it-out branch comes last so a tight cap still yields folds.
    for (std::size_t x = 0; x < open.size(); ++x) attempt({open[x]});
    for (std::size_t x = 0; x < open.size(); ++x)
      for (std::size_t y = x + 1; y < open.size(); ++y)
        attempt({open[x], open[y]});
    for (std::size_t x = 0; x < open.size(); ++x)
      for (std::size_t y = x + 1; y < open.size(); ++y)
        for (std::size_t z = y + 1; z < open.size(); ++z)
          for (std::size_t u = z + 1; u < open.size(); ++u)
            attempt({open[x], open[y], open[z], open[u]});
    self(self, i + 1);
    used[i] = 0;
  };
  walk(walk, 0);
  return out;
}

std::optional<ScoredPartition> score_partition(const Instance& a,
                                               const Partition& p) {
  // Structural validity is the caller's precondition; the closeness filter is
  // enumeration's concern, so hand-picked loose partitions score fine.
  FoldResult fr = fold_by_partition(a, p, GroupCheck::skip);
  const Rat density = fr.folded.density();
  if (density >= Rat(19, 20)) return std::nullopt;
  double product = 1.0;
  for (const Period& e : fr.folded.periods())
    product *= static_cast<double>(e.ceil());
  ScoredPartition sp;
  sp.partition = p;
  sp.folded = std::move(fr.folded);
  sp.density = density.to_double();
  sp.score = std::sqrt(product) / std::pow(0.95 - sp.density, 2.0);
  return sp;
}

SolveResult fast_solve(const Instance& a, const FastSolveConfig& cfg) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_integer())
      throw std::invalid_argument("fast_solve: integer periods required");
  if (cfg.time_limit_ms <= 0 && cfg.per_attempt_nodes <= 0)
    throw std::invalid_argument("fast_solve: no budget");
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - start)
        .count();
  };

  std::vector<ScoredPartition> ranked;
  bool baseline_ranked = false;
  for (const Partition& p : enumerate_partitions(a, cfg.max_partitions)) {
    if (auto sp = score_partition(a, p)) {
      baseline_ranked = baseline_ranked || p.empty();
      ranked.push_back(std::move(*sp));
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const ScoredPartition& x, const ScoredPartition& y) {
                     if (x.score != y.score) return x.score < y.score;
                     return partition_key(x.partition) < partition_key(y.partition);
                   });
  if (!baseline_ranked && cfg.max_partitions > 0) {
    // The density cap dropped the unfolded instance. Keep it as a last
    // resort anyway so delegation to the plain solver always exists.
    ScoredPartition base;
    base.partition = {};
    base.folded = a;
    base.density = a.density().to_double();
    base.score = std::numeric_limits<double>::infinity();
    ranked.push_back(std::move(base));
  }

  SolveResult out;
  out.outcome = Outcome::timeout;
  for (const ScoredPartition& sp : ranked) {
    SolveConfig sub;
    if (cfg.per_attempt_nodes > 0) {
      sub.max_nodes = cfg.per_attempt_nodes;
    } else {
      const long long remaining = cfg.time_limit_ms - elapsed_ms();
      if (remaining <= 0) break;
      sub.time_limit_ms = cfg.per_attempt_ms > 0
                              ? std::min(cfg.per_attempt_ms, remaining)
                              : remaining;
    }
    SolveResult attempt = solve(sp.folded, sub);
    out.nodes += attempt.nodes;
    if (attempt.outcome == Outcome::schedulable) {
      // Refold to recover the rewrite log for this partition, then expand the
      // folded cycle into one for the original instance.
      const FoldTrace trace =
          fold_by_partition(a, sp.partition, GroupCheck::skip).trace;
      out.schedule = lift_schedule(*attempt.schedule, trace);
      out.outcome = Outcome::schedulable;
      break;
    }
  }
  out.elapsed_ms = elapsed_ms();
  return out;
}

}  // namespace pinwheel
