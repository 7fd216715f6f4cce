#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "pinwheel/instance.hpp"
#include "pinwheel/rational.hpp"
#include "pinwheel/schedule.hpp"

namespace pinwheel {

// Folding rewrites an instance into one with fewer or smaller periods such
// that any day plan for the folded instance can be mechanically expanded into
// one for the original. Every rewrite is logged so the expansion can replay
// it backwards. Elements get stable ids: the original periods take 0..n-1 in
// sorted order, every inserted element takes the next fresh id.

// Two oversized periods collapse into half the smaller one: the two jobs will
// share the new job's slots alternately.
struct PairFoldStep {
  int removed_id;    // the larger of the two
  int halved_id;     // the smaller; its half is what gets inserted
  int inserted_id;
  Period inserted;
};

// One oversized period is tightened to exactly the threshold.
struct ThetaReplaceStep {
  int removed_id;
  int inserted_id;
  long long theta;
};

// A whole group collapses into one period; members take turns round-robin.
struct GroupFoldStep {
  std::vector<int> member_ids;  // ascending by (value, id)
  int inserted_id;
  Period inserted;
};

using FoldStep = std::variant<PairFoldStep, ThetaReplaceStep, GroupFoldStep>;

struct FoldTrace {
  Instance source;
  std::vector<FoldStep> steps;
  std::vector<int> result_ids;  // id held by each position of the folded instance

  // One audit line per step, bracketed by the source and folded instances.
  std::string str() const;
};

struct FoldResult {
  Instance folded;
  FoldTrace trace;
};

// Repeatedly rewrites the largest period while it exceeds theta: if the
// second-largest also exceeds theta the two pair-fold, otherwise the largest
// alone becomes theta. Result has every element <= theta. Requires theta >= 2.
FoldResult fold(const Instance& a, long long theta);

// fold(), then every fractional or exactly-theta element is rounded up and
// decremented by one day. The result is an integer instance with all elements
// <= theta - 1, and position j of the result corresponds to position j of the
// plain fold (the rewrite never reorders the sorted list).
Instance integer_fold(const Instance& a, long long theta);

// Groups of positions (into the sorted instance) that fold jointly. Indices
// within a group must be strictly ascending and groups disjoint.
using Partition = std::vector<std::vector<std::size_t>>;

// Whether a group is tight enough to fold without losing schedulability in
// practice: the members' values must huddle around the smallest one. Groups
// of size 2 and 3 fold to an exact fraction of the minimum; size 5 folds to
// a fifth of the minimum rounded down to a multiple-of-5 anchor.
bool group_fits(const Instance& a, const std::vector<std::size_t>& group);

enum class GroupCheck { enforce, skip };

// Folds each group of the partition into a single period: size 2 -> min/2,
// size 3 -> min/3, size 5 -> floor(min/5). Ungrouped elements carry over.
// Integer instances only. With GroupCheck::enforce every group must satisfy
// group_fits; skip trusts the caller (the expansion stays sound either way,
// the folded instance is just less likely to be schedulable).
FoldResult fold_by_partition(const Instance& a, const Partition& partition,
                             GroupCheck check = GroupCheck::enforce);

// All instances one stage earlier that could integer-fold (at threshold
// theta) onto a member of `removed`, kept only when their folded density at
// theta + 2 stays within bound + 1/(theta + 2). Each member element is either
// carried, or reconstructed from what the theta-stage rewrites would have
// produced: a theta/2 element may expand into a pair of theta+1 elements, and
// at most one theta-1 element may revert to theta or theta+1. Duplicates are
// removed; output is sorted. Requires even theta >= 4 and member elements
// within [min_value, theta - 1].
std::vector<Instance> unfold(const std::vector<Instance>& removed, long long theta,
                             const Rat& bound, long long min_value);

// Expands a verified cycle for the folded instance into one for the source,
// replaying the trace backwards. Pair-folded jobs alternate (smaller first),
// group-folded jobs rotate round-robin; the cycle is replicated as needed so
// occurrence counts divide evenly. The result is re-verified against the
// source before returning. Throws std::invalid_argument when the schedule
// does not fit the folded instance or the trace is inconsistent.
Schedule lift_schedule(const Schedule& folded_schedule, const FoldTrace& trace);

}  // namespace pinwheel
