#include "pinwheel/schedule.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace pinwheel {

std::string Schedule::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < days.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(days[i]);
  }
  return s + ")";
}

Schedule Schedule::parse(const std::string& text) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&]() -> void { throw std::invalid_argument("malformed schedule: " + text); };

  skip_ws();
  if (i >= text.size() || text[i] != '(') fail();
  ++i;
  Schedule s;
  skip_ws();
  if (i < text.size() && text[i] == ')') {
    ++i;
  } else {
    while (true) {
      skip_ws();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || i - start > 9) fail();
      s.days.push_back(std::stoi(text.substr(start, i - start)));
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      fail();
    }
  }
  skip_ws();
  if (i != text.size()) fail();
  return s;
}

namespace {

// Smallest window length that obliges at least c occurrences of a p/q job.
long long window_for_count(long long c, long long p, long long q) {
  return (c * p + q - 1) / q;
}

// Occurrences of a job inside [s, s+len-1] when its in-cycle occurrence list
// is occ and the cycle repeats with length L.
long long count_in_window(const std::vector<long long>& occ, long long L, long long s,
                          long long len) {
  long long total = 0;
  for (long long t : occ) {
    // Number of m with s <= t + m*L <= s+len-1.
    long long hi = s + len - 1 - t;
    long long lo = s - t;
    if (hi < 0) continue;
    long long m_hi = hi >= 0 ? hi / L : -((-hi + L - 1) / L);
    long long m_lo = lo > 0 ? (lo + L - 1) / L : -((-lo) / L);
    if (m_hi >= m_lo) total += m_hi - m_lo + 1;
  }
  return total;
}

}  // namespace

VerifyResult verify_schedule(const Instance& instance, const Schedule& schedule) {
  const long long L = static_cast<long long>(schedule.days.size());
  const int n = static_cast<int>(instance.size());
  if (L == 0) throw std::invalid_argument("schedule cycle is empty");
  for (int d : schedule.days)
    if (d < 0 || d > n) throw std::invalid_argument("schedule names a job outside the instance");

  std::vector<std::vector<long long>> occ(n);
  for (long long t = 0; t < L; ++t)
    if (schedule.days[t] > 0) occ[schedule.days[t] - 1].push_back(t);

  for (int i = 0; i < n; ++i) {
    const long long p = instance[i].num(), q = instance[i].den();
    const std::vector<long long>& ts = occ[i];
    const long long k = static_cast<long long>(ts.size());

    // Windows no longer than the cycle, hardest case first. A window needing c
    // occurrences is satisfiable iff the worst c-step gap stays within the
    // shortest such window. Checking these before the per-cycle count keeps
    // the reported window tight when both fail.
    const long long need_L = L * q / p;
    for (long long c = 1; c <= std::min(k, need_L); ++c) {
      long long worst = 0, worst_j = 0;
      for (long long j = 0; j < k; ++j) {
        long long next = (j + c < k) ? ts[j + c] : ts[j + c - k] + L;
        if (next - ts[j] > worst) {
          worst = next - ts[j];
          worst_j = j;
        }
      }
      long long a = window_for_count(c, p, q);
      if (worst > a)
        return {Violation{i + 1, (ts[worst_j] + 1) % L, a}};
    }

    // Enough occurrences per cycle for the schedule to repeat indefinitely.
    if (k * p < L * q) {
      // Find a concrete starving window to report. The window just past the
      // last occurrence usually is one; otherwise whole-cycle multiples
      // always produce one because the long-run rate falls short.
      long long a = window_for_count(k + 1, p, q);
      long long from = k > 0 ? (ts[k - 1] + 1) % L : 0;
      if (count_in_window(ts, L, from, a) < (a * q) / p)
        return {Violation{i + 1, from, a}};
      for (long long N = 1;; ++N) {
        long long len = N * L;
        if (len * q / p > N * k)
          for (long long s = 0; s < L; ++s)
            if (count_in_window(ts, L, s, len) < (len * q) / p)
              return {Violation{i + 1, s, len}};
      }
    }
  }
  return {};
}

}  // namespace pinwheel
