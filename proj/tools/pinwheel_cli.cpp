// Command-line front end: solving single instances, running the proof
// pipeline and its certifier, the enumeration/unfold helpers behind it, and
// the benchmark harness. Exit codes for solve-like commands: 0 schedulable,
// 1 unschedulable, 2 timeout, 3 error.

#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pinwheel/harness.hpp"
#include "pinwheel/proofkit.hpp"

namespace {

using namespace pinwheel;

constexpr int kExitSchedulable = 0;
constexpr int kExitUnschedulable = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitError = 3;

// Accepts both "[4, 5, 11]" and bare "4,5,11"; values may be fractions.
Instance parse_instance_arg(const std::string& text) {
  if (text.find('[') != std::string::npos) return Instance::parse(text);
  return Instance::parse("[" + text + "]");
}

// "84/100" or a bare integer.
Rat parse_bound_arg(const std::string& text) {
  const std::size_t slash = text.find('/');
  std::size_t used = 0;
  const long long num = std::stoll(text.substr(0, slash), &used);
  if (used != (slash == std::string::npos ? text.size() : slash))
    throw std::invalid_argument("bad bound '" + text + "'");
  if (slash == std::string::npos) return Rat(num);
  const std::string den = text.substr(slash + 1);
  const long long d = std::stoll(den, &used);
  if (used != den.size()) throw std::invalid_argument("bad bound '" + text + "'");
  return rat(num, d);
}

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::schedulable: return "schedulable";
    case Outcome::unschedulable: return "unschedulable";
    default: return "timeout";
  }
}

int outcome_exit(Outcome o) {
  switch (o) {
    case Outcome::schedulable: return kExitSchedulable;
    case Outcome::unschedulable: return kExitUnschedulable;
    default: return kExitTimeout;
  }
}

std::string cycle_text(const Schedule& s) {
  std::string out;
  for (std::size_t i = 0; i < s.days.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.days[i]);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct SolveArgs {
  std::string instance;
  std::string solver = "foresight";
  bool complete = false;
  long long timeout_ms = 60000;
  long long per_attempt_ms = 10000;
  std::size_t max_partitions = 4096;
  std::string emit_schedule;
};

int cmd_solve(const SolveArgs& args) {
  const Instance a = parse_instance_arg(args.instance);
  Outcome outcome;
  std::optional<Schedule> schedule;
  double elapsed_ms = 0;
  std::uint64_t nodes = 0;
  if (args.solver == "foresight") {
    SolveConfig cfg;
    cfg.time_limit_ms = args.timeout_ms;
    cfg.complete = args.complete;
    SolveResult r = solve(a, cfg);
    outcome = r.outcome;
    schedule = std::move(r.schedule);
    elapsed_ms = r.elapsed_ms;
    nodes = r.nodes;
  } else if (args.solver == "fast") {
    if (args.complete)
      throw std::invalid_argument("--complete requires --solver foresight");
    FastSolveConfig cfg;
    cfg.time_limit_ms = args.timeout_ms;
    cfg.per_attempt_ms = args.per_attempt_ms;
    cfg.max_partitions = args.max_partitions;
    SolveResult r = fast_solve(a, cfg);
    outcome = r.outcome;
    schedule = std::move(r.schedule);
    elapsed_ms = r.elapsed_ms;
    nodes = r.nodes;
  } else {
    throw std::invalid_argument("unknown solver '" + args.solver + "'");
  }

  std::cout << outcome_name(outcome) << " instance=" << a.str()
            << " elapsed_ms=" << elapsed_ms << " nodes=" << nodes << "\n";
  if (schedule) {
    std::cout << "cycle=" << cycle_text(*schedule) << "\n";
    if (!args.emit_schedule.empty())
      write_text(args.emit_schedule, cycle_text(*schedule) + "\n");
  }
  return outcome_exit(outcome);
}

struct ProveArgs {
  std::string out;
  long long min = 4;
  std::string bound = "84/100";
  long long theta_min = 12;
  long long theta_max = 30;
  long long budget_ms = 0;
};

int cmd_prove(const ProveArgs& args) {
  ProofParams params;
  params.m = args.min;
  params.d = parse_bound_arg(args.bound);
  params.theta_min = args.theta_min;
  params.theta_max = args.theta_max;
  ProveConfig cfg;
  cfg.attempt_ms = args.budget_ms;  // 0 keeps the default node budgets
  ProofChain chain = prove(params, cfg);
  for (const ProofStage& stage : chain.stages)
    std::cout << "theta=" << stage.theta << " candidates=" << stage.candidates.size()
              << " solved=" << stage.l.size() << " deferred=" << stage.r.size()
              << "\n";
  write_chain(chain, args.out);
  std::cout << "wrote " << args.out << "\n";
  return chain.stages.back().r.empty() ? 0 : 1;
}

int cmd_certify(const std::string& dir) {
  CertifyResult res = certify(dir);
  if (res.accepted) {
    std::cout << "accept\n";
    return 0;
  }
  std::cout << "reject\n";
  for (const std::string& reason : res.reasons) std::cout << reason << "\n";
  return 1;
}

struct EnumerateArgs {
  long long theta = 12;
  long long min = 4;
  std::string bound = "84/100";
  bool all = false;
};

int cmd_enumerate(const EnumerateArgs& args) {
  const auto base =
      enumerate_base(args.theta, args.min, parse_bound_arg(args.bound),
                     args.all ? BaseMode::all : BaseMode::saturated);
  for (const Instance& a : base) std::cout << instance_line(a) << "\n";
  return 0;
}

struct UnfoldArgs {
  long long theta = 12;
  long long min = 4;
  std::string bound = "84/100";
  std::string in;
  std::string out;
};

int cmd_unfold(const UnfoldArgs& args) {
  std::vector<Instance> members;
  std::istringstream in(read_text(args.in));
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) members.push_back(parse_instance_line(line));
  const auto candidates =
      unfold(members, args.theta, parse_bound_arg(args.bound), args.min);
  std::string text;
  for (const Instance& a : candidates) text += instance_line(a) + "\n";
  write_text(args.out, text);
  std::cout << "unfolded " << members.size() << " members into "
            << candidates.size() << " candidates\n";
  return 0;
}

int cmd_theta_gen(const std::string& dir, const std::string& instance) {
  const ProofChain chain = read_chain(dir);
  const auto theta = theta_generator(parse_instance_arg(instance), chain);
  if (!theta) {
    std::cout << "none\n";
    return 1;
  }
  std::cout << *theta << "\n";
  return 0;
}

struct GenArgs {
  std::string mode;
  std::size_t count = 50;
  std::uint64_t seed = 0;
  long long max = 0;
  std::string out;
};

int cmd_gen(const GenArgs& args) {
  std::vector<Instance> instances;
  if (args.mode == "density") {
    if (args.max != 0)
      throw std::invalid_argument("--max only applies to --mode scaling");
    instances = gen_density(args.seed, args.count);
  } else if (args.mode == "scaling") {
    instances = gen_scaling(args.max, args.seed, args.count);
  } else {
    throw std::invalid_argument("mode must be density or scaling");
  }
  std::ostringstream text;
  text << "# seed=" << args.seed << " max=" << args.max << "\n";
  for (const Instance& a : instances) text << a.str() << "\n";
  write_text(args.out, text.str());
  std::cout << "wrote " << instances.size() << " instances to " << args.out << "\n";
  return 0;
}

struct BenchArgs {
  std::string instances;
  std::string solvers = "fast,foresight";
  long long timeout_ms = 60000;
  std::string out;
};

int cmd_bench(const BenchArgs& args) {
  BenchConfig cfg;
  cfg.time_limit_ms = args.timeout_ms;
  std::vector<Instance> instances;
  std::istringstream in(read_text(args.instances));
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      // Provenance header written by `gen`: "# seed=S max=M".
      std::istringstream header(line.substr(1));
      std::string token;
      while (header >> token) {
        if (token.rfind("seed=", 0) == 0)
          cfg.seed = std::stoull(token.substr(5));
        else if (token.rfind("max=", 0) == 0)
          if (const long long m = std::stoll(token.substr(4)); m != 0)
            cfg.max_param = m;
      }
      continue;
    }
    instances.push_back(Instance::parse(line));
  }

  std::vector<std::string> solvers;
  std::istringstream names(args.solvers);
  std::string name;
  while (std::getline(names, name, ',')) solvers.push_back(name);

  const auto records = bench_run(instances, solvers, cfg);
  write_text(args.out, bench_csv(records));
  for (const SolverSummary& s : summarize(records, instances.size())) {
    std::cout << s.solver << ": runs=" << s.runs << " solved=" << s.solved
              << " mean_ms=" << s.mean_ms << " median_ms=" << s.median_ms;
    if (s.time_to_k_ms)
      std::cout << " time_to_" << instances.size() << "_ms=" << *s.time_to_k_ms;
    std::cout << "\n";
  }
  std::cout << "wrote " << args.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pinwheel scheduling toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  SolveArgs solve_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance");
  solve_cmd->add_option("instance", solve_args.instance, "periods, e.g. \"[4, 5, 11]\"")
      ->required();
  solve_cmd->add_option("--solver", solve_args.solver, "foresight or fast");
  solve_cmd->add_flag("--complete", solve_args.complete,
                      "exhaust the search space to prove unschedulability");
  solve_cmd->add_option("--timeout-ms", solve_args.timeout_ms, "overall budget");
  solve_cmd->add_option("--per-attempt-ms", solve_args.per_attempt_ms,
                        "fast solver: budget per partition attempt");
  solve_cmd->add_option("--max-partitions", solve_args.max_partitions,
                        "fast solver: candidate partition cap");
  solve_cmd->add_option("--emit-schedule", solve_args.emit_schedule,
                        "write the cycle (comma-separated, 0 = idle) here");
  solve_cmd->callback([&] { exit_code = cmd_solve(solve_args); });

  ProveArgs prove_args;
  CLI::App* prove_cmd =
      app.add_subcommand("prove", "run the staged pipeline and write artifacts");
  prove_cmd->add_option("--out", prove_args.out, "artifact directory")->required();
  prove_cmd->add_option("--min", prove_args.min, "smallest permitted period");
  prove_cmd->add_option("--bound", prove_args.bound, "density bound, e.g. 84/100");
  prove_cmd->add_option("--theta-min", prove_args.theta_min, "first threshold");
  prove_cmd->add_option("--theta-max", prove_args.theta_max, "last threshold");
  prove_cmd->add_option("--budget-ms", prove_args.budget_ms,
                        "per-candidate wall-clock budget; 0 = default node budgets");
  prove_cmd->callback([&] { exit_code = cmd_prove(prove_args); });

  std::string certify_dir;
  CLI::App* certify_cmd =
      app.add_subcommand("certify", "re-check a written artifact without solving");
  certify_cmd->add_option("--dir", certify_dir, "artifact directory")->required();
  certify_cmd->callback([&] { exit_code = cmd_certify(certify_dir); });

  EnumerateArgs enum_args;
  CLI::App* enum_cmd =
      app.add_subcommand("enumerate", "list base candidates at a threshold");
  enum_cmd->add_option("--theta", enum_args.theta, "threshold (even)")->required();
  enum_cmd->add_option("--min", enum_args.min, "smallest permitted period");
  enum_cmd->add_option("--bound", enum_args.bound, "density bound")->required();
  enum_cmd->add_flag("--all", enum_args.all,
                     "every qualifying multiset, not just saturated ones");
  enum_cmd->callback([&] { exit_code = cmd_enumerate(enum_args); });

  UnfoldArgs unfold_args;
  CLI::App* unfold_cmd = app.add_subcommand(
      "unfold", "expand deferred instances to the next threshold");
  unfold_cmd->add_option("--theta", unfold_args.theta, "threshold the input lives at")
      ->required();
  unfold_cmd->add_option("--min", unfold_args.min, "smallest permitted period");
  unfold_cmd->add_option("--bound", unfold_args.bound, "density bound")->required();
  unfold_cmd->add_option("--in", unfold_args.in, "removed.csv-style input")
      ->required();
  unfold_cmd->add_option("--out", unfold_args.out, "candidate output file")
      ->required();
  unfold_cmd->callback([&] { exit_code = cmd_unfold(unfold_args); });

  std::string theta_dir;
  std::string theta_instance;
  CLI::App* theta_cmd = app.add_subcommand(
      "theta-gen", "first threshold whose solved list covers the instance");
  theta_cmd->add_option("--dir", theta_dir, "artifact directory")->required();
  theta_cmd->add_option("instance", theta_instance, "periods")->required();
  theta_cmd->callback([&] { exit_code = cmd_theta_gen(theta_dir, theta_instance); });

  GenArgs gen_args;
  CLI::App* gen_cmd = app.add_subcommand("gen", "sample benchmark instances");
  gen_cmd->add_option("--mode", gen_args.mode, "density or scaling")->required();
  gen_cmd->add_option("--count", gen_args.count, "instances to emit");
  gen_cmd->add_option("--seed", gen_args.seed, "stream seed");
  gen_cmd->add_option("--max", gen_args.max, "size knob for scaling mode");
  gen_cmd->add_option("--out", gen_args.out, "output file")->required();
  gen_cmd->callback([&] { exit_code = cmd_gen(gen_args); });

  BenchArgs bench_args;
  CLI::App* bench_cmd = app.add_subcommand("bench", "time solvers over a file");
  bench_cmd->add_option("--instances", bench_args.instances, "file from gen")
      ->required();
  bench_cmd->add_option("--solvers", bench_args.solvers, "comma list");
  bench_cmd->add_option("--timeout-ms", bench_args.timeout_ms, "budget per solve");
  bench_cmd->add_option("--out", bench_args.out, "CSV output")->required();
  bench_cmd->callback([&] { exit_code = cmd_bench(bench_args); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return exit_code;
}
