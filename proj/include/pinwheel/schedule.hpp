#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pinwheel/instance.hpp"

namespace pinwheel {

// A repeating cycle of day assignments. Entry 0 means idle, entries 1..n name
// jobs by their position in the sorted instance.
struct Schedule {
  std::vector<int> days;
  bool verified = false;

  std::size_t length() const { return days.size(); }

  // Text form: parenthesised day list, e.g. "(1, 2, 1, 0)".
  std::string str() const;
  static Schedule parse(const std::string& text);

  bool operator==(const Schedule& o) const { return days == o.days; }
};

struct Violation {
  int job = 0;             // 1-based
  long long start = 0;     // 0-based day within the cycle
  long long length = 0;    // window length in days
  bool operator==(const Violation& o) const {
    return job == o.job && start == o.start && length == o.length;
  }
};

struct VerifyResult {
  std::optional<Violation> violation;
  bool ok() const { return !violation.has_value(); }
};

// Checks the cycle against every window constraint of every job, treating the
// cycle as repeating forever. A job with period p/q must appear at least
// floor(a*q/p) times in every a-day window, for every a. Windows are examined
// across the wrap. Throws std::invalid_argument for an empty cycle or an
// out-of-range day entry.
VerifyResult verify_schedule(const Instance& instance, const Schedule& schedule);

}  // namespace pinwheel
