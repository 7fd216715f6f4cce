#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "pinwheel/period.hpp"
#include "pinwheel/rational.hpp"

namespace pinwheel {

// A multiset of periods, kept sorted ascending. Position in the sorted order
// doubles as the 1-based job index used by schedules.
class Instance {
 public:
  Instance() = default;
  explicit Instance(std::vector<Period> periods);
  Instance(std::initializer_list<long long> ints);

  std::size_t size() const { return periods_.size(); }
  bool empty() const { return periods_.empty(); }
  const Period& operator[](std::size_t i) const { return periods_[i]; }
  auto begin() const { return periods_.begin(); }
  auto end() const { return periods_.end(); }
  const std::vector<Period>& periods() const { return periods_; }

  bool all_integer() const;

  // Sum of reciprocals.
  Rat density() const;

  // Density after one folding stage at threshold theta: elements strictly
  // below theta/2 count as 1/a, the rest as 1/(a+1). Integer elements only.
  Rat folded_density(long long theta) const;

  // Text form: comma-separated values in brackets, e.g. "[3, 5, 8/2]".
  // Parsing accepts denominators 1, 2 and 3 only.
  std::string str() const;
  static Instance parse(const std::string& text);

  bool operator==(const Instance& o) const { return periods_ == o.periods_; }
  std::strong_ordering operator<=>(const Instance& o) const;

 private:
  std::vector<Period> periods_;
};

}  // namespace pinwheel
