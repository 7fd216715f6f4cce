#include "pinwheel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pinwheel {

Rng::Rng(std::uint64_t seed)
    : state_(seed ? seed : 0x9E3779B97F4A7C15ULL) {}

std::uint64_t Rng::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 2685821657736338717ULL;
}

long long Rng::uniform(long long lo, long long hi) {
  if (lo > hi) throw std::invalid_argument("uniform: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long long>(next() % span);
}

namespace {

const Rat kDensityLo(89, 100);
const Rat kDensityHi(91, 100);

Instance sample(Rng& rng, long long n_lo, long long n_hi, long long v_lo,
                long long v_hi) {
  // Rejection sampling against the exact density window. The window is a
  // narrow tail event but still plentiful; the cap only guards against a
  // misconfigured range where it becomes unreachable.
  for (int tries = 0; tries < 50'000'000; ++tries) {
    const long long n = rng.uniform(n_lo, n_hi);
    std::vector<Period> values;
    values.reserve(n);
    for (long long i = 0; i < n; ++i) values.emplace_back(rng.uniform(v_lo, v_hi));
    Instance candidate(values);
    const Rat d = candidate.density();
    if (kDensityLo <= d && d <= kDensityHi) return candidate;
  }
  throw std::runtime_error("sample: density window unreachable");
}

}  // namespace

std::vector<Instance> gen_density(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample(rng, 10, 15, 1, 25));
  return out;
}

std::vector<Instance> gen_scaling(long long max_param, std::uint64_t seed,
                                  std::size_t count) {
  if (max_param < 6)
    throw std::invalid_argument("gen_scaling: max_param must be at least 6");
  Rng rng(seed);
  std::vector<Instance> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
    out.push_back(sample(rng, max_param / 3, 2 * max_param / 3, max_param / 2,
                         max_param));
  return out;
}

std::vector<BenchRecord> bench_run(const std::vector<Instance>& instances,
                                   const std::vector<std::string>& solvers,
                                   const BenchConfig& cfg) {
  for (const std::string& s : solvers)
    if (s != "foresight" && s != "fast")
      throw std::invalid_argument("bench_run: unknown solver " + s);
  std::vector<BenchRecord> out;
  out.reserve(instances.size() * solvers.size());
  for (const std::string& s : solvers) {
    for (const Instance& inst : instances) {
      BenchRecord rec;
      rec.instance = inst.str();
      rec.solver = s;
      rec.seed = cfg.seed;
      rec.max_param = cfg.max_param;
      const auto t0 = std::chrono::steady_clock::now();
      if (s == "foresight") {
        SolveConfig sc;
        sc.time_limit_ms = cfg.time_limit_ms;
        rec.outcome = solve(inst, sc).outcome;
      } else {
        FastSolveConfig fc = cfg.fast;
        fc.time_limit_ms = cfg.time_limit_ms;
        rec.outcome = fast_solve(inst, fc).outcome;
      }
      rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

namespace {

const char kHeader[] = "instance,solver,outcome,elapsed_ms,seed,max_param";

std::string outcome_name(Outcome o) {
  switch (o) {
    case Outcome::schedulable: return "schedulable";
    case Outcome::unschedulable: return "unschedulable";
    case Outcome::timeout: return "timeout";
  }
  throw std::logic_error("outcome_name: bad enum");
}

Outcome outcome_from(const std::string& s) {
  if (s == "schedulable") return Outcome::schedulable;
  if (s == "unschedulable") return Outcome::unschedulable;
  if (s == "timeout") return Outcome::timeout;
  throw std::invalid_argument("bench csv: bad outcome " + s);
}

}  // namespace

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream out;
  out << kHeader << '\n';
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const BenchRecord& r : records) {
    out << '"';
    for (char c : r.instance) {
      if (c == '"') out << '"';
      out << c;
    }
    out << '"' << ',' << r.solver << ',' << outcome_name(r.outcome) << ','
        << r.elapsed_ms << ',' << r.seed << ',';
    if (r.max_param) out << *r.max_param;
    out << '\n';
  }
  return out.str();
}

std::vector<BenchRecord> parse_bench_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kHeader)
    throw std::invalid_argument("bench csv: bad header");
  std::vector<BenchRecord> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    BenchRecord rec;
    std::size_t pos = 0;
    if (pos >= line.size() || line[pos] != '"')
      throw std::invalid_argument("bench csv: instance must be quoted");
    ++pos;
    while (true) {
      if (pos >= line.size()) throw std::invalid_argument("bench csv: unterminated quote");
      if (line[pos] == '"') {
        if (pos + 1 < line.size() && line[pos + 1] == '"') {
          rec.instance += '"';
          pos += 2;
          continue;
        }
        ++pos;
        break;
      }
      rec.instance += line[pos++];
    }
    if (pos >= line.size() || line[pos] != ',')
      throw std::invalid_argument("bench csv: malformed row");
    ++pos;
    std::vector<std::string> rest;
    std::string field;
    for (; pos <= line.size(); ++pos) {
      if (pos == line.size() || line[pos] == ',') {
        rest.push_back(field);
        field.clear();
      } else {
        field += line[pos];
      }
    }
    if (rest.size() != 5) throw std::invalid_argument("bench csv: malformed row");
    rec.solver = rest[0];
    rec.outcome = outcome_from(rest[1]);
    rec.elapsed_ms = std::stod(rest[2]);
    rec.seed = std::stoull(rest[3]);
    if (!rest[4].empty()) rec.max_param = std::stoll(rest[4]);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<SolverSummary> summarize(const std::vector<BenchRecord>& records,
                                     std::size_t k) {
  std::vector<SolverSummary> out;
  for (const BenchRecord& r : records) {
    SolverSummary* row = nullptr;
    for (SolverSummary& s : out)
      if (s.solver == r.solver) row = &s;
    if (!row) {
      out.push_back(SolverSummary{});
      out.back().solver = r.solver;
      row = &out.back();
    }
    ++row->runs;
    if (r.outcome == Outcome::schedulable) ++row->solved;
  }
  for (SolverSummary& s : out) {
    std::vector<double> times;
    double cum = 0;
    std::size_t solved = 0;
    for (const BenchRecord& r : records) {
      if (r.solver != s.solver) continue;
      times.push_back(r.elapsed_ms);
      if (!s.time_to_k_ms) {
        cum += r.elapsed_ms;
        if (r.outcome == Outcome::schedulable && ++solved == k)
          s.time_to_k_ms = cum;
      }
    }
    if (!times.empty()) {
      double sum = 0;
      for (double t : times) sum += t;
      s.mean_ms = sum / static_cast<double>(times.size());
      std::sort(times.begin(), times.end());
      const std::size_t mid = times.size() / 2;
      s.median_ms = times.size() % 2 ? times[mid]
                                     : (times[mid - 1] + times[mid]) / 2.0;
    }
  }
  return out;
}

}  // namespace pinwheel
