#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pinwheel/domination.hpp"
#include "pinwheel/fastsolver.hpp"
#include "pinwheel/instance.hpp"
#include "pinwheel/rational.hpp"
#include "pinwheel/schedule.hpp"

namespace pinwheel {

// The pipeline that backs the density bound: enumerate every base shape at
// the first threshold, schedule what the solver can crack, carry the rest
// forward by unfolding to the next threshold, and leave behind artifact files
// that a re-solve-free certifier can check end to end.

struct ProofParams {
  long long m = 4;          // smallest permitted period
  Rat d = Rat(21, 25);      // density bound the chain establishes
  long long theta_min = 12;
  long long theta_max = 30;  // both thresholds even, theta_min <= theta_max
};

enum class BaseMode { saturated, all };

// Integer multisets over [m, theta-1] whose folded density at theta stays
// within d + 1/theta, sorted ascending. The default emits only saturated
// ones: appending one more theta-1 element would break the bound. Every
// other qualifying multiset turns into a saturated one by padding with
// theta-1 elements, and the padded multiset covers it, so saturated sets
// suffice for coverage checks. `all` enumerates every nonempty qualifying
// multiset; meant as a cross-check oracle at small theta.
std::vector<Instance> enumerate_base(long long theta, long long m, const Rat& d,
                                     BaseMode mode = BaseMode::saturated);

struct Classification {
  std::vector<std::pair<Instance, Schedule>> l;  // solved, ascending by instance
  std::vector<Instance> r;                       // deferred, ascending
};

struct ClassifyConfig {
  // Budgets for the per-candidate fast_solve call. Node budgets rather than
  // wall-clock keep the split reproducible across machines.
  FastSolveConfig fast;
  int threads = 0;  // 0: honour PINWHEEL_THREADS, default 1
};

// Runs fast_solve on every candidate: verified schedules land in l, the rest
// in r. Candidates must be sorted; the split preserves that order and is
// deterministic for node-budget configs regardless of thread count.
Classification classify(const std::vector<Instance>& candidates,
                        const ClassifyConfig& cfg);

struct ProofStage {
  long long theta = 0;
  std::vector<Instance> candidates;  // what classification saw; not persisted
  std::vector<std::pair<Instance, Schedule>> l;
  std::vector<Instance> r;
};

// Builds the stage at prev.theta + 2: candidates are the unfoldings of what
// the previous stage deferred, classified under cfg.
ProofStage advance_stage(const ProofStage& prev, const ProofParams& params,
                         const ClassifyConfig& cfg);

struct ProofChain {
  ProofParams params;
  std::vector<ProofStage> stages;  // theta_min, theta_min+2, ..., theta_max
};

struct ProveConfig {
  // Per-stage node budget for each folded attempt inside fast_solve, indexed
  // by stage ordinal; the last entry repeats for later stages. Early stages
  // stay cheap on purpose: anything they miss gets retried at the next
  // threshold through its unfoldings, never re-queued at the same stage.
  std::vector<long long> stage_attempt_nodes{60'000, 1'500'000, 6'000'000};
  // When positive, classification runs on wall-clock budgets instead: this
  // many milliseconds per candidate, every stage. Chains built this way are
  // machine-dependent; only node budgets reproduce bit-identical stages.
  long long attempt_ms = 0;
  std::size_t max_partitions = 256;
  int threads = 0;
};

// Runs the full chain from theta_min to theta_max. Deterministic: identical
// params and budgets give identical stages.
ProofChain prove(const ProofParams& params, const ProveConfig& cfg = {});

// Artifact layout under `dir`:
//   manifest                 key=value: m, d, theta_min, theta_max,
//                            digest:<relative path>=<sha256 hex>
//   theta_NN/lists.csv       solved instances, one per line: "4,5,11"
//   theta_NN/removed.csv     deferred instances, same format
//   theta_NN/schedules.csv   "instance|cycle", cycle as 1-based day entries
//                            with 0 for idle: "4,5,11|1,2,3,0,1"
void write_chain(const ProofChain& chain, const std::string& dir);

// Loads params and stage files; digests are not rechecked here (that is
// certify's job) and candidates come back empty.
ProofChain read_chain(const std::string& dir);

// First threshold whose solved list covers the integer fold of `a`, walking
// theta_min upward in steps of two. Empty when no stage covers it, which the
// chain rules out for integer instances with min >= m and density <= d.
std::optional<long long> theta_generator(const Instance& a,
                                         const ProofChain& chain);

// Turns the chain into an actual verified schedule for `a`: fold at the
// threshold theta_generator picks, borrow the stored schedule of the covering
// solved instance, and lift it back through the fold trace.
Schedule schedule_via_proof(const Instance& a, const ProofChain& chain);

struct CertifyResult {
  bool accepted = false;
  std::vector<std::string> reasons;  // machine-readable "kind:detail" entries
};

// Re-checks a written artifact without any solver calls: manifest digests,
// file canonicality, base-candidate coverage at theta_min, unfold coverage at
// every later stage, every stored schedule verifies, and the final deferred
// set is empty.
CertifyResult certify(const std::string& dir);

// Helpers shared by the artifact files and the certifier.
std::string sha256_hex(const std::string& bytes);
std::string instance_line(const Instance& a);
Instance parse_instance_line(const std::string& line);

}  // namespace pinwheel
