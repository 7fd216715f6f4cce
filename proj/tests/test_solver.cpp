#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "pinwheel/solver.hpp"

using namespace pinwheel;

TEST_CASE("fractional checker follows the ceiling-pattern rules") {
  Period half15(15, 2);  // ceiling 8
  CHECK(check_fractional(half15, std::vector<long long>{0, 8}, 16) == FracVerdict::violated);
  CHECK(check_fractional(half15, std::vector<long long>{0, 7}, 15) == FracVerdict::pass);
  CHECK(check_fractional(half15, std::vector<long long>{0, 8}, 15) == FracVerdict::pass);
  CHECK(check_fractional(half15, std::vector<long long>{0}, 8) == FracVerdict::pass);  // not enough history
  CHECK(check_fractional(half15, std::vector<long long>(), 8) == FracVerdict::pass);

  Period third13(13, 3);  // 13 = 1 mod 3, ceiling 5
  CHECK(check_fractional(third13, std::vector<long long>{0, 5, 8}, 13) == FracVerdict::violated);
  CHECK(check_fractional(third13, std::vector<long long>{0, 3, 8}, 13) == FracVerdict::violated);
  CHECK(check_fractional(third13, std::vector<long long>{0, 4, 8}, 13) == FracVerdict::pass);
  CHECK(check_fractional(third13, std::vector<long long>{0, 5}, 10) == FracVerdict::violated);
  CHECK(check_fractional(third13, std::vector<long long>{0, 4}, 9) == FracVerdict::pass);

  Period third17(17, 3);  // 17 = 2 mod 3, ceiling 6
  CHECK(check_fractional(third17, std::vector<long long>{0, 6, 12}, 18) == FracVerdict::violated);
  CHECK(check_fractional(third17, std::vector<long long>{0, 6, 11}, 17) == FracVerdict::pass);
  CHECK(check_fractional(third17, std::vector<long long>{0, 5, 11}, 17) == FracVerdict::pass);
  CHECK(check_fractional(third17, std::vector<long long>{0, 6, 12}, 17) == FracVerdict::pass);
}

TEST_CASE("fractional checker rejects bad inputs") {
  CHECK_THROWS_AS(check_fractional(Period(7), std::vector<long long>{0, 7}, 14), std::invalid_argument);
  CHECK_THROWS_AS(check_fractional(Period(9, 4), std::vector<long long>{0, 3}, 6), std::invalid_argument);
  CHECK_THROWS_AS(check_fractional(Period(15, 2), std::vector<long long>{8, 0}, 16), std::invalid_argument);
  CHECK_THROWS_AS(check_fractional(Period(15, 2), std::vector<long long>{0, 8}, 8), std::invalid_argument);
}

TEST_CASE("both checker forms agree on replayed histories") {
  for (Period j : {Period(5, 2), Period(7, 2), Period(13, 3), Period(14, 3), Period(17, 3)}) {
    const long long c = j.ceil();
    // Enumerate gap strings over {c-2, c-1, c} and compare the incremental
    // state against the full history at every step.
    std::vector<long long> gaps;
    auto run = [&](auto&& self, int depth) -> void {
      std::vector<long long> times{0};
      JobState st;
      for (long long g : gaps) {
        const long long next = times.back() + g;
        CHECK(check_fractional(j, times, next) == check_fractional(j, st, g));
        if (j.den() == 3) st.prev_gap_ceil = st.last_gap_ceil;
        st.last_gap_ceil = (g == c);
        st.elapsed = 0;
        times.push_back(next);
      }
      for (long long cand = 1; cand <= c; ++cand)
        CHECK(check_fractional(j, times, times.back() + cand) ==
              check_fractional(j, st, cand));
      if (depth == 5) return;
      for (long long g = c - 2; g <= c; ++g) {
        gaps.push_back(g);
        self(self, depth + 1);
        gaps.pop_back();
      }
    };
    run(run, 0);
  }
}

TEST_CASE("solve finds round-robin cycles") {
  auto r = solve(Instance{4, 4, 4, 4});
  REQUIRE(r.outcome == Outcome::schedulable);
  CHECK(r.schedule->verified);
  CHECK(verify_schedule(Instance{4, 4, 4, 4}, *r.schedule).ok());

  CHECK(solve(Instance{2, 4, 8, 8}).outcome == Outcome::schedulable);
  CHECK(solve(Instance{1}).outcome == Outcome::schedulable);
  CHECK(solve(Instance{}).outcome == Outcome::schedulable);
}

TEST_CASE("solve proves unschedulability by exhaustion") {
  SolveConfig complete;
  complete.complete = true;
  CHECK(solve(Instance{2, 3, 6}, complete).outcome == Outcome::unschedulable);
  CHECK(solve(Instance{2, 3, 50}, complete).outcome == Outcome::unschedulable);
  CHECK(solve(Instance{3, 4, 4, 20}, complete).outcome == Outcome::unschedulable);
  CHECK(solve(Instance{1, 9}, complete).outcome == Outcome::unschedulable);
  CHECK(solve(Instance{1, 1}, complete).outcome == Outcome::unschedulable);
}

TEST_CASE("solve handles fractional periods") {
  CHECK(solve(Instance::parse("[5/2]")).outcome == Outcome::schedulable);
  CHECK(solve(Instance::parse("[3/2, 3]")).outcome == Outcome::schedulable);
  auto r = solve(Instance::parse("[5/2, 16/3, 7]"));
  if (r.outcome == Outcome::schedulable) CHECK(r.schedule->verified);

  // Two jobs at half-density each leave no room for a third.
  SolveConfig complete;
  complete.complete = true;
  CHECK(solve(Instance::parse("[3/2, 3/2]"), complete).outcome == Outcome::unschedulable);
}

TEST_CASE("solve validates configuration and periods") {
  SolveConfig no_budget;
  no_budget.time_limit_ms = 0;
  CHECK_THROWS_AS(solve(Instance{4, 4}, no_budget), std::invalid_argument);
  CHECK_THROWS_AS(solve(Instance(std::vector<Period>{Period(9, 4)})), std::invalid_argument);
}

TEST_CASE("solve reports timeout under a node budget") {
  SolveConfig tiny;
  tiny.max_nodes = 10;
  auto r = solve(Instance{4, 5, 6, 7, 8, 9, 10, 11}, tiny);
  CHECK(r.outcome == Outcome::timeout);
  CHECK(r.nodes == 10);
}

TEST_CASE("solve is deterministic") {
  auto r1 = solve(Instance{3, 5, 8, 8, 12});
  auto r2 = solve(Instance{3, 5, 8, 8, 12});
  REQUIRE(r1.outcome == Outcome::schedulable);
  REQUIRE(r2.outcome == Outcome::schedulable);
  CHECK(r1.schedule->days == r2.schedule->days);
  CHECK(r1.nodes == r2.nodes);
}

TEST_CASE("solve agrees with the cycle oracle on tiny instances") {
  SolveConfig complete;
  complete.complete = true;
  // All multisets with up to two periods from [1, 5].
  for (long long a = 1; a <= 5; ++a) {
    CHECK(solve(Instance{a}, complete).outcome == Outcome::schedulable);
    for (long long b = a; b <= 5; ++b) {
      Instance inst{a, b};
      CAPTURE(inst.str());
      const bool want = oracles::cycle_oracle(inst);
      CHECK((solve(inst, complete).outcome == Outcome::schedulable) == want);
      CHECK(oracles::graph_oracle(inst) == want);
    }
  }
}

TEST_CASE("solve agrees with the graph oracle on random instances") {
  std::mt19937 rng(777);
  SolveConfig complete;
  complete.complete = true;
  for (int iter = 0; iter < 60; ++iter) {
    const int n = 2 + static_cast<int>(rng() % 3);
    std::vector<Period> ps;
    for (int i = 0; i < n; ++i) ps.emplace_back(2 + rng() % 9);
    Instance inst(ps);
    CAPTURE(inst.str());
    auto r = solve(inst, complete);
    REQUIRE(r.outcome != Outcome::timeout);
    CHECK((r.outcome == Outcome::schedulable) == oracles::graph_oracle(inst));
  }
}
