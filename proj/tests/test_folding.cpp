#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <stdexcept>

#include "pinwheel/folding.hpp"

using namespace pinwheel;

namespace {

const Instance kBig17{14, 14, 14, 14, 15, 18, 18, 19, 20, 22, 22, 23, 23, 23, 24, 25, 27};
const Partition kBig17Partition{{0, 1}, {2, 3}, {5, 6}, {9, 10}, {14, 15, 16}};

}  // namespace

TEST_CASE("fold halves oversized pairs and caps stragglers") {
  Instance a1{5, 7, 11, 15, 15, 15, 16, 17, 17, 17, 17};
  auto r1 = fold(a1, 16);
  CHECK(r1.folded.str() == "[5, 7, 17/2, 17/2, 11, 15, 15, 15, 16]");
  CHECK(r1.trace.steps.size() == 2);

  // Same folded list, but the 16 now comes from capping a lone 17.
  Instance a2{5, 7, 11, 15, 15, 15, 17, 17, 17, 17, 17};
  auto r2 = fold(a2, 16);
  CHECK(r2.folded == r1.folded);
  CHECK(r2.trace.steps.size() == 3);
  CHECK(std::holds_alternative<ThetaReplaceStep>(r2.trace.steps.back()));
}

TEST_CASE("fold can halve repeatedly, leaving quarters") {
  CHECK(fold(Instance{41, 45, 46}, 12).folded.str() == "[45/4]");
  CHECK(fold(Instance{25, 25, 14}, 12).folded.str() == "[25/4]");
  CHECK(integer_fold(Instance{25, 25, 14}, 12).str() == "[6]");
}

TEST_CASE("fold leaves small instances alone") {
  Instance a{5, 7, 16};
  auto r = fold(a, 16);
  CHECK(r.folded == a);
  CHECK(r.trace.steps.empty());
  CHECK(fold(Instance{}, 12).folded.empty());
  CHECK_THROWS_AS(fold(Instance{5}, 1), std::invalid_argument);
}

TEST_CASE("fold trace serialises each rewrite") {
  auto r = fold(Instance{41, 45, 46}, 12);
  CHECK(r.trace.str() ==
        "source=[41, 45, 46]\n"
        "pair:2,1->3=45/2\n"
        "pair:0,3->4=45/4\n"
        "result=4\n");
  // Equal values: the later position counts as larger and is removed first.
  auto tie = fold(Instance{17, 17}, 16);
  CHECK(tie.trace.str() ==
        "source=[17, 17]\n"
        "pair:1,0->2=17/2\n"
        "result=2\n");
}

TEST_CASE("integer fold decrements rounded and capped elements") {
  Instance a1{5, 7, 11, 15, 15, 15, 16, 17, 17, 17, 17};
  Instance a2{5, 7, 11, 15, 15, 15, 17, 17, 17, 17, 17};
  Instance want{5, 7, 8, 8, 11, 15, 15, 15, 15};
  CHECK(integer_fold(a1, 16) == want);
  CHECK(integer_fold(a2, 16) == want);

  CHECK(integer_fold(Instance{13}, 12) == Instance{12 - 1});
  CHECK(integer_fold(Instance{12}, 12) == Instance{11});
  CHECK(integer_fold(Instance{11}, 12) == Instance{11});
}

TEST_CASE("group filter accepts only tight clusters") {
  CHECK(group_fits(Instance{14, 14, 20}, {0, 1}));
  CHECK(group_fits(Instance{14, 16, 20}, {0, 1}));
  CHECK_FALSE(group_fits(Instance{14, 17, 20}, {0, 1}));

  CHECK(group_fits(Instance{18, 19, 19}, {0, 1, 2}));
  CHECK_FALSE(group_fits(Instance{24, 25, 27}, {0, 1, 2}));

  CHECK(group_fits(Instance{10, 10, 10, 11, 11}, {0, 1, 2, 3, 4}));
  CHECK_FALSE(group_fits(Instance{10, 11, 11, 11, 11}, {0, 1, 2, 3, 4}));
  // The anchor rounds down to a multiple of five, so 11s alone spread too far.
  CHECK_FALSE(group_fits(Instance{11, 11, 11, 11, 11}, {0, 1, 2, 3, 4}));
  CHECK(group_fits(Instance{5, 5, 5, 5, 6}, {0, 1, 2, 3, 4}));

  CHECK_FALSE(group_fits(Instance{3, 4, 5, 6}, {0, 1, 2, 3}));  // only 2, 3, 5 fold
  CHECK_FALSE(group_fits(Instance::parse("[5/2, 3]"), {0, 1}));
  CHECK_THROWS_AS(group_fits(Instance{4, 5}, {0, 7}), std::out_of_range);
  CHECK_THROWS_AS(group_fits(Instance{4, 5}, {1, 0}), std::invalid_argument);
}

TEST_CASE("partition fold reproduces the 17-element worked example") {
  // The [24, 25, 27] group spreads too far for the filter, so this published
  // transition only folds with the check waived.
  CHECK_THROWS_AS(fold_by_partition(kBig17, kBig17Partition), std::invalid_argument);
  auto r = fold_by_partition(kBig17, kBig17Partition, GroupCheck::skip);
  CHECK(r.folded == Instance{7, 7, 8, 9, 11, 15, 19, 20, 23, 23, 23});
  CHECK(r.trace.steps.size() == 5);
}

TEST_CASE("partition fold validates its input") {
  Instance a{10, 10, 11, 12};
  CHECK_THROWS_AS(fold_by_partition(a, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(fold_by_partition(a, {{0}}), std::invalid_argument);
  CHECK_THROWS_AS(fold_by_partition(a, {{0, 1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(fold_by_partition(Instance::parse("[5/2, 3]"), {{0, 1}}),
                  std::invalid_argument);
}

TEST_CASE("partition fold halves, thirds and fifths the group minimum") {
  auto r = fold_by_partition(Instance{14, 15, 18, 19, 19, 25}, {{0, 1}, {2, 3, 4}});
  CHECK(r.folded.str() == "[6, 7, 25]");  // 18/3 = 6, 14/2 = 7

  auto r5 = fold_by_partition(Instance{10, 10, 10, 11, 11}, {{0, 1, 2, 3, 4}});
  CHECK(r5.folded == Instance{2});
}

TEST_CASE("unfold reconstructs the stage-16 preimages") {
  Instance b{5, 7, 8, 8, 11, 15, 15, 15, 15};
  auto out = unfold({b}, 16, rat(84, 100), 5);
  Instance list1{5, 7, 11, 15, 15, 15, 16, 17, 17, 17, 17};
  Instance list2{5, 7, 11, 15, 15, 15, 17, 17, 17, 17, 17};
  REQUIRE(out.size() == 2);
  CHECK(out[0] == list1);
  CHECK(out[1] == list2);
  // Sanity: each survivor folds back onto b and respects the tighter bound.
  for (const Instance& a : out) {
    CHECK(integer_fold(a, 16) == b);
    CHECK(a.folded_density(18) <= rat(84, 100) + rat(1, 18));
  }
}

TEST_CASE("unfold merges duplicates across members") {
  // Both members can reach [4, 11, 13, 13]-shaped candidates; a loose bound
  // keeps everything so the overlap is visible.
  auto out = unfold({Instance{4, 6}, Instance{4, 6, 11}}, 12, Rat(1), 4);
  for (std::size_t i = 0; i + 1 < out.size(); ++i) CHECK(out[i] < out[i + 1]);
  for (const Instance& a : out) {
    Instance back = integer_fold(a, 12);
    CHECK((back == Instance{4, 6} || back == Instance{4, 6, 11}));
  }
  CHECK(std::find(out.begin(), out.end(), Instance{4, 6}) != out.end());
  CHECK(std::find(out.begin(), out.end(), Instance{4, 13, 13}) != out.end());
  CHECK(std::find(out.begin(), out.end(), Instance{4, 6, 12}) != out.end());
}

TEST_CASE("unfold validates members and parameters") {
  CHECK_THROWS_AS(unfold({Instance{4, 12}}, 12, Rat(1), 4), std::invalid_argument);
  CHECK_THROWS_AS(unfold({Instance{3}}, 12, Rat(1), 4), std::invalid_argument);
  CHECK_THROWS_AS(unfold({Instance{4}}, 13, Rat(1), 4), std::invalid_argument);
  CHECK_THROWS_AS(unfold({Instance::parse("[9/2]")}, 12, Rat(1), 4),
                  std::invalid_argument);
}

TEST_CASE("lifting a pair fold alternates the two constituents") {
  auto r = fold(Instance{15, 16}, 8);
  REQUIRE(r.folded.str() == "[15/2]");
  // Gaps of 7 and 8 satisfy 15/2 even though 8 would overshoot a plain 7.
  Schedule s;
  s.days.assign(15, 0);
  s.days[0] = s.days[7] = 1;
  REQUIRE(verify_schedule(r.folded, s).ok());

  Schedule lifted = lift_schedule(s, r.trace);
  CHECK(lifted.verified);
  REQUIRE(lifted.days.size() == 15);
  CHECK(lifted.days[0] == 1);  // smaller period goes first
  CHECK(lifted.days[7] == 2);
}

TEST_CASE("lifting replicates the cycle until counts divide evenly") {
  auto r = fold(Instance{41, 45, 46}, 12);
  Schedule s;
  s.days.assign(11, 0);
  s.days[0] = 1;
  REQUIRE(verify_schedule(r.folded, s).ok());

  Schedule lifted = lift_schedule(s, r.trace);
  REQUIRE(lifted.days.size() == 44);  // doubled twice
  std::vector<int> want(44, 0);
  want[0] = 2;
  want[11] = 1;
  want[22] = 3;
  want[33] = 1;
  CHECK(lifted.days == want);
}

TEST_CASE("lifting a group fold deals members round-robin") {
  auto r3 = fold_by_partition(Instance{6, 7, 8}, {{0, 1, 2}}, GroupCheck::skip);
  REQUIRE(r3.folded == Instance{2});
  Schedule s{{1, 0}};
  Schedule lifted = lift_schedule(s, r3.trace);
  CHECK(lifted.days == std::vector<int>{1, 0, 2, 0, 3, 0});

  auto r5 = fold_by_partition(Instance{10, 10, 10, 11, 11}, {{0, 1, 2, 3, 4}});
  Schedule lifted5 = lift_schedule(s, r5.trace);
  CHECK(lifted5.days == std::vector<int>{1, 0, 2, 0, 3, 0, 4, 0, 5, 0});
}

TEST_CASE("lifting handles several groups in one trace") {
  auto rp = fold_by_partition(Instance{14, 14, 15, 16}, {{0, 1}, {2, 3}});
  REQUIRE(rp.folded.str() == "[7, 15/2]");
  Schedule s;
  s.days.assign(15, 0);
  for (int t = 0; t < 15; t += 4) s.days[t] = 1;      // 7-job at 0,4,8,12
  s.days[2] = s.days[9] = 2;                          // 15/2-job, gaps 7 and 8
  REQUIRE(verify_schedule(rp.folded, s).ok());
  Schedule lifted = lift_schedule(s, rp.trace);
  CHECK(lifted.verified);
  CHECK(verify_schedule(Instance{14, 14, 15, 16}, lifted).ok());
}

TEST_CASE("lifting rejects schedules and traces that do not fit") {
  auto r = fold(Instance{41, 45, 46}, 12);
  Schedule empty_days{{0, 0, 0}};
  CHECK_THROWS_AS(lift_schedule(empty_days, r.trace), std::invalid_argument);

  FoldTrace tampered = r.trace;
  tampered.result_ids[0] = 99;
  Schedule s;
  s.days.assign(11, 0);
  s.days[0] = 1;
  CHECK_THROWS_AS(lift_schedule(s, tampered), std::invalid_argument);

  // A source whose second element contradicts the recorded half.
  FoldTrace wrong_src = r.trace;
  wrong_src.source = Instance{41, 44, 46};
  CHECK_THROWS_AS(lift_schedule(s, wrong_src), std::invalid_argument);
}
