#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pinwheel/fastsolver.hpp"
#include "pinwheel/instance.hpp"
#include "pinwheel/solver.hpp"

namespace pinwheel {

// xorshift* stream with the 64-bit triple (12, 25, 27) and the standard
// multiplier. Fixed constants so runs reproduce anywhere; a zero seed is
// remapped to the golden-ratio constant because the all-zero state is a fixed
// point of the shifts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform draw via modulo reduction. The slight bias (< 2^-50 for the small
  // ranges used here) is accepted; the reduction rule is part of the
  // reproducibility contract.
  long long uniform(long long lo, long long hi);

 private:
  std::uint64_t state_;
};

// Rejection sampler: n uniform in [10, 15], values uniform in [1, 25], keep
// the draw only when the exact density lands in [0.89, 0.91]. A drawn value
// of 1 simply forces a redraw. Deterministic given the seed.
std::vector<Instance> gen_density(std::uint64_t seed, std::size_t count);

// Same shape scaled by a size knob: n uniform in [max/3, 2*max/3], values
// uniform in [max/2, max] (all floors), same exact density window.
// Requires max_param >= 6.
std::vector<Instance> gen_scaling(long long max_param, std::uint64_t seed,
                                  std::size_t count);

struct BenchRecord {
  std::string instance;
  std::string solver;  // "foresight" or "fast"
  Outcome outcome = Outcome::timeout;
  double elapsed_ms = 0;
  std::uint64_t seed = 0;
  std::optional<long long> max_param;

  bool operator==(const BenchRecord&) const = default;
};

struct BenchConfig {
  long long time_limit_ms = 3600000;
  std::uint64_t seed = 0;               // provenance only, copied into records
  std::optional<long long> max_param;   // provenance only
  FastSolveConfig fast;                 // knobs for "fast"; its global budget
                                        // is overridden by time_limit_ms
};

// Runs every instance through every named solver, one at a time, timing just
// the solver call on the monotonic clock. Records come out solver-major in
// input order. Throws on a solver name outside {foresight, fast}.
std::vector<BenchRecord> bench_run(const std::vector<Instance>& instances,
                                   const std::vector<std::string>& solvers,
                                   const BenchConfig& cfg);

// CSV with header instance,solver,outcome,elapsed_ms,seed,max_param. The
// instance field is quoted (it contains commas); elapsed_ms keeps full double
// precision so parse(emit(x)) == x.
std::string bench_csv(const std::vector<BenchRecord>& records);
std::vector<BenchRecord> parse_bench_csv(const std::string& text);

struct SolverSummary {
  std::string solver;
  std::size_t runs = 0;
  std::size_t solved = 0;
  double mean_ms = 0;
  double median_ms = 0;
  // Cumulative elapsed, in record order, up to and including the k-th solved
  // instance; empty when fewer than k solves.
  std::optional<double> time_to_k_ms;
};

std::vector<SolverSummary> summarize(const std::vector<BenchRecord>& records,
                                     std::size_t k);

}  // namespace pinwheel
