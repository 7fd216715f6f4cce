#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pinwheel/instance.hpp"
#include "pinwheel/schedule.hpp"

namespace pinwheel {

// Per-job search state: how long since the job last ran (end-of-day count, 0
// right after running) and, for fractional periods, whether the most recent
// gap(s) hit the ceiling. Flags stay false until enough gaps exist.
struct JobState {
  int elapsed = 0;
  bool last_gap_ceil = false;
  bool prev_gap_ceil = false;
};

enum class FracVerdict { pass, violated };

// Whether appending occurrence time `next` to `history` breaks the pattern
// rules for a fractional period: too many consecutive ceiling-sized gaps
// starve a later window. Denominator 2 forbids two ceiling gaps in a row;
// denominator 3 forbids three, tightening to two when the numerator is
// 1 mod 3. Short histories always pass. Throws for integer periods,
// denominators above 3, or non-increasing times.
FracVerdict check_fractional(const Period& j, const std::vector<long long>& history,
                             long long next);

// Same rule driven by the compressed state; `gap` is the candidate gap the
// job would realize if scheduled now.
FracVerdict check_fractional(const Period& j, const JobState& state, long long gap);

struct SolveConfig {
  long long time_limit_ms = 60000;
  std::uint64_t max_nodes = 0;  // 0 = no node budget; nonzero makes runs clock-independent
  bool complete = false;
  // Upper bound on memoized failed states; roughly 100 bytes apiece, so the
  // default keeps a long run under a gigabyte. Past the cap the search still
  // works, it just re-explores.
  std::size_t memo_cap = std::size_t(1) << 23;
};

enum class Outcome { schedulable, unschedulable, timeout };

struct SolveResult {
  Outcome outcome = Outcome::timeout;
  std::optional<Schedule> schedule;  // present iff schedulable; always verified
  double elapsed_ms = 0;
  std::uint64_t nodes = 0;
};

// Day-by-day depth-first search for a repeating cycle. Each day the candidate
// jobs are those whose gap would stay legal (within the ceiling, and past
// check_fractional for fractional periods), tried most-urgent-first with idle
// last; a job out of slack is scheduled unconditionally. Branches die early
// when more jobs need the next k days than k days can hold. Revisiting a
// state on the current path closes a cycle, which is returned verified.
// Exhausting the whole graph (with failed states memoized) proves there is no
// cycle. Periods must have denominator 1, 2 or 3. Throws when both limits in
// the config are zero.
SolveResult solve(const Instance& a, const SolveConfig& cfg = {});

}  // namespace pinwheel
