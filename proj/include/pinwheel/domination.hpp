#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "pinwheel/instance.hpp"

namespace pinwheel {

// Positions in `cover` chosen to stand in for each position of `target`.
struct CoverWitness {
  std::vector<std::size_t> cover_position;  // index j of target -> index in cover
};

// True when `cover` contains a sub-multiset that is elementwise <= `target`.
// Any valid day plan for `cover` then yields one for `target`: each target job
// inherits the matched cover job's days (its period is no larger), and
// unmatched cover jobs become idle. Greedy matching over the sorted lists
// finds a witness whenever one exists.
std::optional<CoverWitness> covers(const Instance& cover, const Instance& target);

}  // namespace pinwheel
