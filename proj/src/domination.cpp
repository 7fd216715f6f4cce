#include "pinwheel/domination.hpp"

namespace pinwheel {

std::optional<CoverWitness> covers(const Instance& cover, const Instance& target) {
  if (cover.size() < target.size()) return std::nullopt;
  CoverWitness w;
  w.cover_position.reserve(target.size());
  // Both sides ascending: match each target element with the smallest unused
  // cover element. If that one is already too large, every later one is too.
  for (std::size_t j = 0; j < target.size(); ++j) {
    if (target[j] < cover[j]) return std::nullopt;
    w.cover_position.push_back(j);
  }
  return w;
}

}  // namespace pinwheel
