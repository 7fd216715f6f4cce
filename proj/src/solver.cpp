#include "pinwheel/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pinwheel {

namespace {

void validate_fractional(const Period& j) {
  if (j.is_integer()) throw std::invalid_argument("fractional check needs a fractional period");
  if (j.den() != 2 && j.den() != 3)
    throw std::invalid_argument("fractional denominator must be 2 or 3");
}

}  // namespace

FracVerdict check_fractional(const Period& j, const std::vector<long long>& history,
                             long long next) {
  validate_fractional(j);
  for (std::size_t i = 0; i + 1 < history.size(); ++i)
    if (history[i] >= history[i + 1])
      throw std::invalid_argument("history times must be strictly increasing");
  if (!history.empty() && next <= history.back())
    throw std::invalid_argument("candidate time must follow the history");

  const long long c = j.ceil();
  const std::size_t k = history.size();
  if (k < 2) {
    // One prior time yields no prior gap for denominator 2 either, and the
    // candidate gap alone is never enough evidence.
    return FracVerdict::pass;
  }
  const long long cand = next - history[k - 1];
  const long long g1 = history[k - 1] - history[k - 2];
  if (j.den() == 2)
    return (g1 == c && cand == c) ? FracVerdict::violated : FracVerdict::pass;

  const bool g2_ceil = k >= 3 && history[k - 2] - history[k - 3] == c;
  if (j.num() % 3 == 1)
    return (cand == c && (g1 == c || g2_ceil)) ? FracVerdict::violated : FracVerdict::pass;
  return (cand == c && g1 == c && g2_ceil) ? FracVerdict::violated : FracVerdict::pass;
}

FracVerdict check_fractional(const Period& j, const JobState& state, long long gap) {
  validate_fractional(j);
  const long long c = j.ceil();
  if (gap != c) return FracVerdict::pass;
  if (j.den() == 2)
    return state.last_gap_ceil ? FracVerdict::violated : FracVerdict::pass;
  if (j.num() % 3 == 1)
    return (state.last_gap_ceil || state.prev_gap_ceil) ? FracVerdict::violated
                                                        : FracVerdict::pass;
  return (state.last_gap_ceil && state.prev_gap_ceil) ? FracVerdict::violated
                                                      : FracVerdict::pass;
}

namespace {

struct JobInfo {
  int cap = 0;   // ceiling of the period
  int den = 1;   // 1, 2 or 3
  int pmod = 0;  // numerator mod 3, for denominator 3
};

struct Frame {
  std::string key;
  std::vector<std::int8_t> cands;  // -1 idle, else job index
  std::size_t next = 0;
  // Undo record for the day that led into this frame.
  std::int8_t chosen = -2;  // -2 for the root
  int saved_elapsed = 0;
  unsigned char saved_flags = 0;
};

}  // namespace

SolveResult solve(const Instance& a, const SolveConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  if (cfg.time_limit_ms <= 0 && cfg.max_nodes == 0)
    throw std::invalid_argument("solve needs a positive time limit or node budget");

  const int n = static_cast<int>(a.size());
  if (n > 120) throw std::invalid_argument("instance too large for the day-state encoding");
  std::vector<JobInfo> info(n);
  int max_cap = 1;
  for (int i = 0; i < n; ++i) {
    const Period& p = a[i];
    if (p.den() > 3)
      throw std::invalid_argument("periods must have denominator 1, 2 or 3");
    info[i] = {static_cast<int>(p.ceil()), static_cast<int>(p.den()),
               static_cast<int>(p.num() % 3)};
    max_cap = std::max(max_cap, info[i].cap);
  }
  const int bytes_per_job = max_cap < (1 << 14) ? 2 : 4;

  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  };

  // Day state. elapsed counts end-of-day days since the job last ran; flag
  // bit 0 marks a ceiling-sized last gap, bit 1 the one before (denominator 3).
  std::vector<int> elapsed(n, 0);
  std::vector<unsigned char> flags(n, 0);

  auto encode = [&]() {
    std::string key(static_cast<std::size_t>(n) * bytes_per_job, '\0');
    char* out = key.data();
    for (int i = 0; i < n; ++i) {
      std::uint32_t v = (static_cast<std::uint32_t>(elapsed[i]) << 2) | flags[i];
      for (int b = 0; b < bytes_per_job; ++b) *out++ = static_cast<char>((v >> (8 * b)) & 0xff);
    }
    return key;
  };

  // A fractional job that just realized a forbidden ceiling pattern must not
  // take another ceiling gap, shrinking its effective deadline by one.
  auto ceiling_forbidden = [&](int i) -> bool {
    if (info[i].den == 1) return false;
    if (info[i].den == 2) return flags[i] & 1;
    if (info[i].pmod == 1) return flags[i] & 3;
    return (flags[i] & 3) == 3;
  };

  std::vector<int> slack(n), start(n + 2);
  auto gen_candidates = [&]() -> std::vector<std::int8_t> {
    for (int i = 0; i < n; ++i) {
      const int eff = info[i].cap - (ceiling_forbidden(i) ? 1 : 0);
      const int s = eff - elapsed[i] - 1;
      if (s < 0) return {};  // already starved
      slack[i] = std::min(s, n);
    }
    // More jobs due within the next t+1 days than days available: dead end.
    std::fill(start.begin(), start.end(), 0);
    for (int i = 0; i < n; ++i) ++start[slack[i] + 1];
    int cum = 0;
    for (int t = 0; t < n; ++t) {
      cum += start[t + 1];
      if (cum > t + 1) return {};
    }
    if (start[1] == 1) {
      // Exactly one job with no slack: every other branch dies tomorrow.
      for (int i = 0; i < n; ++i)
        if (slack[i] == 0) return {static_cast<std::int8_t>(i)};
    }
    // Counting sort by slack keeps ties in position order; idling comes last.
    for (int t = 0; t <= n; ++t) start[t + 1] += start[t];
    std::vector<std::int8_t> cands(n + 1);
    for (int i = 0; i < n; ++i) cands[start[slack[i]]++] = static_cast<std::int8_t>(i);
    cands[n] = -1;
    return cands;
  };

  auto apply = [&](std::int8_t choice, Frame& child) {
    child.chosen = choice;
    if (choice >= 0) {
      child.saved_elapsed = elapsed[choice];
      child.saved_flags = flags[choice];
      if (info[choice].den != 1) {
        const bool ceil_hit = elapsed[choice] + 1 == info[choice].cap;
        const unsigned char last = flags[choice] & 1;
        flags[choice] = static_cast<unsigned char>(
            (info[choice].den == 3 && last ? 2 : 0) | (ceil_hit ? 1 : 0));
      }
    }
    for (int i = 0; i < n; ++i) ++elapsed[i];
    if (choice >= 0) elapsed[choice] = 0;
  };
  auto undo = [&](const Frame& child) {
    for (int i = 0; i < n; ++i) --elapsed[i];
    if (child.chosen >= 0) {
      elapsed[child.chosen] = child.saved_elapsed;
      flags[child.chosen] = child.saved_flags;
    }
  };

  std::unordered_map<std::string, int> on_path;
  std::unordered_set<std::string> failed;
  std::vector<Frame> stack;
  std::vector<std::int8_t> choices;

  SolveResult res;
  std::uint64_t nodes = 0;
  const bool timed = cfg.time_limit_ms > 0;
  const double deadline = static_cast<double>(cfg.time_limit_ms);

  Frame root;
  root.key = encode();
  root.cands = gen_candidates();
  on_path.emplace(root.key, 0);
  stack.push_back(std::move(root));

  while (!stack.empty()) {
    Frame& fr = stack.back();
    if (fr.next >= fr.cands.size()) {
      // All branches failed from here. The cap stops the memo from growing
      // unboundedly; skipped inserts only cost re-exploration.
      if (failed.size() < cfg.memo_cap) failed.insert(fr.key);
      on_path.erase(fr.key);
      Frame done = std::move(stack.back());
      stack.pop_back();
      if (!stack.empty()) {
        undo(done);
        choices.pop_back();
      }
      continue;
    }
    const std::int8_t choice = fr.cands[fr.next++];
    Frame child;
    apply(choice, child);
    choices.push_back(choice);
    ++nodes;
    if ((cfg.max_nodes && nodes >= cfg.max_nodes) ||
        (timed && (nodes & 1023) == 0 && elapsed_ms() >= deadline)) {
      res.outcome = Outcome::timeout;
      res.nodes = nodes;
      res.elapsed_ms = elapsed_ms();
      return res;
    }
    child.key = encode();
    if (auto hit = on_path.find(child.key); hit != on_path.end()) {
      // Closed a loop in day-state space: the days since that visit repeat
      // forever as a valid cycle.
      Schedule s;
      s.days.reserve(choices.size() - hit->second);
      for (std::size_t d = hit->second; d < choices.size(); ++d)
        s.days.push_back(choices[d] == -1 ? 0 : choices[d] + 1);
      if (!verify_schedule(a, s).ok())
        throw std::logic_error("search produced a cycle that fails verification");
      s.verified = true;
      res.outcome = Outcome::schedulable;
      res.schedule = std::move(s);
      res.nodes = nodes;
      res.elapsed_ms = elapsed_ms();
      return res;
    }
    if (failed.count(child.key)) {
      undo(child);
      choices.pop_back();
      continue;
    }
    child.cands = gen_candidates();
    on_path.emplace(child.key, static_cast<int>(choices.size()));
    stack.push_back(std::move(child));
  }

  res.outcome = Outcome::unschedulable;
  res.nodes = nodes;
  res.elapsed_ms = elapsed_ms();
  return res;
}

}  // namespace pinwheel
