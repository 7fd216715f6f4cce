#include "pinwheel/proofkit.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pinwheel/folding.hpp"

namespace fs = std::filesystem;

namespace pinwheel {

namespace {

// D'_theta contribution of a single integer element.
Rat folded_contribution(long long v, long long theta) {
  return 2 * v < theta ? Rat(1, v) : Rat(1, v + 1);
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PINWHEEL_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return 1;
}

}  // namespace

std::vector<Instance> enumerate_base(long long theta, long long m, const Rat& d,
                                     BaseMode mode) {
  if (theta % 2 != 0)
    throw std::invalid_argument("enumerate_base: threshold must be even");
  if (m < 2 || m >= theta)
    throw std::invalid_argument("enumerate_base: minimum period must lie in [2, theta)");
  const Rat bound = d + Rat(1, theta);
  const Rat wall = folded_contribution(theta - 1, theta);
  std::vector<Instance> out;
  std::vector<Period> cur;
  // Walk values ascending, choosing a copy count for each while the folded
  // density stays within bound; every qualifying multiset shows up exactly
  // once as one count path.
  auto rec = [&](auto&& self, long long v, const Rat& sum) -> void {
    if (v == theta) {
      if (cur.empty()) return;
      if (mode == BaseMode::saturated && sum + wall <= bound) return;
      out.emplace_back(cur);
      return;
    }
    self(self, v + 1, sum);
    const Rat step = folded_contribution(v, theta);
    Rat s = sum;
    std::size_t pushed = 0;
    while (true) {
      s += step;
      if (s > bound) break;
      cur.emplace_back(v);
      ++pushed;
      self(self, v + 1, s);
    }
    while (pushed--) cur.pop_back();
  };
  rec(rec, m, Rat(0));
  std::sort(out.begin(), out.end());
  return out;
}

Classification classify(const std::vector<Instance>& candidates,
                        const ClassifyConfig& cfg) {
  const int threads = resolve_threads(cfg.threads);
  std::vector<std::optional<Schedule>> found(candidates.size());
  auto work = [&](std::size_t first) {
    for (std::size_t i = first; i < candidates.size();
         i += static_cast<std::size_t>(threads)) {
      SolveResult r = fast_solve(candidates[i], cfg.fast);
      if (r.outcome == Outcome::schedulable) found[i] = std::move(*r.schedule);
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (std::thread& t : pool) t.join();
  }
  Classification out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (found[i])
      out.l.emplace_back(candidates[i], std::move(*found[i]));
    else
      out.r.push_back(candidates[i]);
  }
  return out;
}

ProofStage advance_stage(const ProofStage& prev, const ProofParams& params,
                         const ClassifyConfig& cfg) {
  if (prev.theta + 2 > params.theta_max)
    throw std::invalid_argument("advance_stage: already at theta_max");
  ProofStage next;
  next.theta = prev.theta + 2;
  next.candidates = unfold(prev.r, prev.theta, params.d, params.m);
  Classification split = classify(next.candidates, cfg);
  next.l = std::move(split.l);
  next.r = std::move(split.r);
  return next;
}

namespace {

void validate_params(const ProofParams& p) {
  if (p.theta_min % 2 != 0 || p.theta_max % 2 != 0)
    throw std::invalid_argument("proof params: thresholds must be even");
  if (p.theta_min > p.theta_max)
    throw std::invalid_argument("proof params: theta_min must not exceed theta_max");
  if (p.m < 2 || p.m >= p.theta_min)
    throw std::invalid_argument("proof params: minimum period must lie in [2, theta_min)");
  if (!(p.d < Rat(1)) || p.d < Rat(0))
    throw std::invalid_argument("proof params: density bound must lie in [0, 1)");
}

ClassifyConfig stage_config(const ProveConfig& cfg, std::size_t stage_index) {
  ClassifyConfig out;
  out.fast.max_partitions = cfg.max_partitions;
  out.threads = cfg.threads;
  if (cfg.attempt_ms > 0) {
    out.fast.time_limit_ms = cfg.attempt_ms;
    out.fast.per_attempt_ms = std::min<long long>(10'000, cfg.attempt_ms);
    return out;
  }
  if (cfg.stage_attempt_nodes.empty())
    throw std::invalid_argument("prove: no stage budgets");
  const std::size_t i =
      std::min(stage_index, cfg.stage_attempt_nodes.size() - 1);
  if (cfg.stage_attempt_nodes[i] <= 0)
    throw std::invalid_argument("prove: stage budget must be positive");
  out.fast.per_attempt_nodes = cfg.stage_attempt_nodes[i];
  return out;
}

}  // namespace

ProofChain prove(const ProofParams& params, const ProveConfig& cfg) {
  validate_params(params);
  ProofChain chain;
  chain.params = params;
  ProofStage first;
  first.theta = params.theta_min;
  first.candidates = enumerate_base(params.theta_min, params.m, params.d);
  Classification split = classify(first.candidates, stage_config(cfg, 0));
  first.l = std::move(split.l);
  first.r = std::move(split.r);
  chain.stages.push_back(std::move(first));
  for (long long theta = params.theta_min + 2; theta <= params.theta_max;
       theta += 2) {
    chain.stages.push_back(advance_stage(chain.stages.back(), params,
                                         stage_config(cfg, chain.stages.size())));
  }
  return chain;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) != 1 ||
      EVP_DigestFinal_ex(ctx, md, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw std::runtime_error("sha256 failure");
  }
  EVP_MD_CTX_free(ctx);
  static const char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 15];
  }
  return out;
}

std::string instance_line(const Instance& a) {
  std::ostringstream out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_integer())
      throw std::invalid_argument("instance_line: integer instance required");
    if (i) out << ',';
    out << a[i].num();
  }
  return out.str();
}

Instance parse_instance_line(const std::string& line) {
  if (line.empty()) throw std::invalid_argument("instance line: empty");
  std::vector<Period> values;
  std::size_t pos = 0;
  long long prev = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) comma = line.size();
    const std::string token = line.substr(pos, comma - pos);
    std::size_t used = 0;
    long long v;
    try {
      v = std::stoll(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("instance line: bad value '" + token + "'");
    }
    if (used != token.size() || v < 1)
      throw std::invalid_argument("instance line: bad value '" + token + "'");
    if (!values.empty() && v < prev)
      throw std::invalid_argument("instance line: values must ascend");
    values.emplace_back(v);
    prev = v;
    pos = comma + 1;
    if (comma == line.size()) break;
  }
  return Instance(values);
}

namespace {

std::string stage_dir_name(long long theta) {
  return "theta_" + std::to_string(theta);
}

std::string schedule_cycle(const Schedule& s) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.days.size(); ++i) {
    if (i) out << ',';
    out << s.days[i];
  }
  return out.str();
}

std::vector<int> parse_cycle(const std::string& text) {
  std::vector<int> days;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string token = text.substr(pos, comma - pos);
    std::size_t used = 0;
    int v;
    try {
      v = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("cycle: bad entry '" + token + "'");
    }
    if (used != token.size() || v < 0)
      throw std::invalid_argument("cycle: bad entry '" + token + "'");
    days.push_back(v);
    pos = comma + 1;
    if (comma == text.size()) break;
  }
  if (days.empty()) throw std::invalid_argument("cycle: empty");
  return days;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

void write_chain(const ProofChain& chain, const std::string& dir) {
  validate_params(chain.params);
  fs::create_directories(dir);
  std::map<std::string, std::string> digests;  // relative path -> hex
  for (const ProofStage& stage : chain.stages) {
    const std::string rel = stage_dir_name(stage.theta);
    fs::create_directories(fs::path(dir) / rel);
    std::string lists, removed, schedules;
    for (const auto& [inst, sched] : stage.l) {
      lists += instance_line(inst) + "\n";
      schedules += instance_line(inst) + "|" + schedule_cycle(sched) + "\n";
    }
    for (const Instance& inst : stage.r) removed += instance_line(inst) + "\n";
    const std::pair<std::string, std::string> files[] = {
        {"lists.csv", lists}, {"removed.csv", removed}, {"schedules.csv", schedules}};
    for (const auto& [name, content] : files) {
      write_file(fs::path(dir) / rel / name, content);
      digests[rel + "/" + name] = sha256_hex(content);
    }
  }
  std::ostringstream manifest;
  manifest << "m=" << chain.params.m << "\n";
  manifest << "d=" << chain.params.d.str() << "\n";
  manifest << "theta_min=" << chain.params.theta_min << "\n";
  manifest << "theta_max=" << chain.params.theta_max << "\n";
  for (const auto& [path, hex] : digests)
    manifest << "digest:" << path << "=" << hex << "\n";
  write_file(fs::path(dir) / "manifest", manifest.str());
}

namespace {

struct Manifest {
  ProofParams params;
  std::map<std::string, std::string> digests;
};

// Parses the manifest; structural complaints land in `reasons` and leave the
// result empty.
std::optional<Manifest> parse_manifest(const std::string& text,
                                       std::vector<std::string>& reasons) {
  Manifest out;
  std::map<std::string, std::string> keys;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      reasons.push_back("manifest:not-key-value:" + line);
      return std::nullopt;
    }
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key.rfind("digest:", 0) == 0) {
      if (!out.digests.emplace(key.substr(7), value).second) {
        reasons.push_back("manifest:duplicate-digest:" + key.substr(7));
        return std::nullopt;
      }
    } else if (!keys.emplace(key, value).second) {
      reasons.push_back("manifest:duplicate-key:" + key);
      return std::nullopt;
    }
  }
  auto want_int = [&](const char* key, long long& into) {
    auto it = keys.find(key);
    if (it == keys.end()) {
      reasons.push_back(std::string("manifest:missing-key:") + key);
      return false;
    }
    try {
      std::size_t used = 0;
      into = std::stoll(it->second, &used);
      if (used != it->second.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      reasons.push_back(std::string("manifest:bad-value:") + key);
      return false;
    }
    keys.erase(it);
    return true;
  };
  if (!want_int("m", out.params.m)) return std::nullopt;
  if (!want_int("theta_min", out.params.theta_min)) return std::nullopt;
  if (!want_int("theta_max", out.params.theta_max)) return std::nullopt;
  auto it = keys.find("d");
  if (it == keys.end()) {
    reasons.push_back("manifest:missing-key:d");
    return std::nullopt;
  }
  try {
    const std::string& v = it->second;
    const std::size_t slash = v.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const long long num = std::stoll(v, &used);
      if (used != v.size()) throw std::invalid_argument("trailing");
      out.params.d = Rat(num);
    } else {
      const std::string ns = v.substr(0, slash), ds = v.substr(slash + 1);
      const long long num = std::stoll(ns, &used);
      if (used != ns.size()) throw std::invalid_argument("trailing");
      const long long den = std::stoll(ds, &used);
      if (used != ds.size()) throw std::invalid_argument("trailing");
      out.params.d = Rat(num, den);
    }
  } catch (const std::exception&) {
    reasons.push_back("manifest:bad-value:d");
    return std::nullopt;
  }
  keys.erase(it);
  for (const auto& [key, value] : keys)
    reasons.push_back("manifest:unknown-key:" + key);
  if (!keys.empty()) return std::nullopt;
  try {
    validate_params(out.params);
  } catch (const std::exception& e) {
    reasons.push_back(std::string("manifest:bad-params:") + e.what());
    return std::nullopt;
  }
  return out;
}

}  // namespace

ProofChain read_chain(const std::string& dir) {
  const auto manifest_text = read_file(fs::path(dir) / "manifest");
  if (!manifest_text) throw std::runtime_error("read_chain: missing manifest");
  std::vector<std::string> reasons;
  const auto manifest = parse_manifest(*manifest_text, reasons);
  if (!manifest)
    throw std::runtime_error("read_chain: " +
                             (reasons.empty() ? "bad manifest" : reasons.front()));
  ProofChain chain;
  chain.params = manifest->params;
  for (long long theta = chain.params.theta_min; theta <= chain.params.theta_max;
       theta += 2) {
    ProofStage stage;
    stage.theta = theta;
    const fs::path base = fs::path(dir) / stage_dir_name(theta);
    const auto lists = read_file(base / "lists.csv");
    const auto removed = read_file(base / "removed.csv");
    const auto schedules = read_file(base / "schedules.csv");
    if (!lists || !removed || !schedules)
      throw std::runtime_error("read_chain: missing stage files for theta " +
                               std::to_string(theta));
    std::istringstream rin(*removed);
    std::string line;
    while (std::getline(rin, line))
      if (!line.empty()) stage.r.push_back(parse_instance_line(line));
    std::vector<Instance> keys;
    std::istringstream lin(*lists);
    while (std::getline(lin, line))
      if (!line.empty()) keys.push_back(parse_instance_line(line));
    std::istringstream sin(*schedules);
    std::size_t at = 0;
    while (std::getline(sin, line)) {
      if (line.empty()) continue;
      const std::size_t bar = line.find('|');
      if (bar == std::string::npos)
        throw std::runtime_error("read_chain: malformed schedule line");
      Instance inst = parse_instance_line(line.substr(0, bar));
      Schedule sched;
      sched.days = parse_cycle(line.substr(bar + 1));
      if (at >= keys.size() || !(keys[at] == inst))
        throw std::runtime_error("read_chain: schedules do not match lists");
      stage.l.emplace_back(std::move(inst), std::move(sched));
      ++at;
    }
    if (at != keys.size())
      throw std::runtime_error("read_chain: schedules do not match lists");
    chain.stages.push_back(std::move(stage));
  }
  return chain;
}

namespace {

void check_chain_shape(const ProofChain& chain) {
  if (chain.stages.empty())
    throw std::invalid_argument("proof chain has no stages");
  long long want = chain.params.theta_min;
  for (const ProofStage& stage : chain.stages) {
    if (stage.theta != want)
      throw std::invalid_argument("proof chain missing stage for theta " +
                                  std::to_string(want));
    want += 2;
  }
  if (want != chain.params.theta_max + 2)
    throw std::invalid_argument("proof chain missing stage for theta " +
                                std::to_string(want));
}

}  // namespace

std::optional<long long> theta_generator(const Instance& a,
                                         const ProofChain& chain) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_integer())
      throw std::invalid_argument("theta_generator: integer instance required");
  check_chain_shape(chain);
  for (const ProofStage& stage : chain.stages) {
    const Instance f = integer_fold(a, stage.theta);
    for (const auto& [inst, sched] : stage.l)
      if (covers(inst, f)) return stage.theta;
  }
  return std::nullopt;
}

Schedule schedule_via_proof(const Instance& a, const ProofChain& chain) {
  const auto theta = theta_generator(a, chain);
  if (!theta)
    throw std::runtime_error(
        "schedule_via_proof: no stage covers the instance; is its density "
        "within the chain's bound?");
  const ProofStage* stage = nullptr;
  for (const ProofStage& s : chain.stages)
    if (s.theta == *theta) stage = &s;
  const Instance f = integer_fold(a, *theta);
  for (const auto& [inst, stored] : stage->l) {
    const auto witness = covers(inst, f);
    if (!witness) continue;
    // Job j of the fold inherits the days of its witness job; cover jobs
    // nobody claimed go idle.
    std::vector<int> relabel(inst.size() + 1, 0);
    for (std::size_t j = 0; j < witness->cover_position.size(); ++j)
      relabel[witness->cover_position[j] + 1] = static_cast<int>(j + 1);
    Schedule folded;
    folded.days.reserve(stored.days.size());
    for (int v : stored.days) folded.days.push_back(relabel[v]);
    return lift_schedule(folded, fold(a, *theta).trace);
  }
  throw std::logic_error("schedule_via_proof: covering stage lost its witness");
}

namespace {

struct StageFiles {
  long long theta = 0;
  std::vector<Instance> lists;
  std::vector<Instance> removed;
  std::vector<std::pair<Instance, Schedule>> schedules;
  bool parsed = false;  // structural parse succeeded; deeper checks allowed
};

// Instances parsed from one file plus canonicality complaints.
std::vector<Instance> parse_instance_file(const std::string& text,
                                          const std::string& rel,
                                          long long m, long long theta,
                                          std::vector<std::string>& reasons,
                                          bool& ok) {
  std::vector<Instance> out;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) {
      reasons.push_back("parse:" + rel + ":empty-line");
      ok = false;
      continue;
    }
    Instance inst;
    try {
      inst = parse_instance_line(line);
    } catch (const std::exception& e) {
      reasons.push_back("parse:" + rel + ":" + e.what());
      ok = false;
      continue;
    }
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const long long v = inst[i].num();
      if (v < m || v > theta - 1) {
        reasons.push_back("range:" + rel + ":" + line);
        ok = false;
        break;
      }
    }
    if (!out.empty() && !(out.back() < inst)) {
      reasons.push_back("unsorted:" + rel + ":line " + std::to_string(lineno));
      ok = false;
    }
    out.push_back(std::move(inst));
  }
  return out;
}

// True when some member covers the candidate. Exact membership is the hot
// path: untampered artifacts classify the very set they store.
bool covered_by(const Instance& candidate, const std::set<Instance>& exact,
                const std::vector<const Instance*>& members) {
  if (exact.count(candidate)) return true;
  for (const Instance* m : members)
    if (covers(*m, candidate)) return true;
  return false;
}

}  // namespace

CertifyResult certify(const std::string& dir) {
  CertifyResult result;
  std::vector<std::string>& reasons = result.reasons;
  const auto manifest_text = read_file(fs::path(dir) / "manifest");
  if (!manifest_text) {
    reasons.push_back("missing-file:manifest");
    return result;
  }
  const auto manifest = parse_manifest(*manifest_text, reasons);
  if (!manifest) return result;
  const ProofParams& params = manifest->params;

  // Pass 1: digests and structural parsing.
  std::vector<StageFiles> stages;
  std::set<std::string> expected_paths;
  for (long long theta = params.theta_min; theta <= params.theta_max;
       theta += 2) {
    StageFiles stage;
    stage.theta = theta;
    stage.parsed = true;
    const std::string rel_dir = stage_dir_name(theta);
    std::map<std::string, std::string> contents;
    for (const char* name : {"lists.csv", "removed.csv", "schedules.csv"}) {
      const std::string rel = rel_dir + "/" + name;
      expected_paths.insert(rel);
      const auto text = read_file(fs::path(dir) / rel);
      if (!text) {
        reasons.push_back("missing-file:" + rel);
        stage.parsed = false;
        continue;
      }
      const auto digest = manifest->digests.find(rel);
      if (digest == manifest->digests.end()) {
        reasons.push_back("manifest:missing-digest:" + rel);
        stage.parsed = false;
      } else if (digest->second != sha256_hex(*text)) {
        reasons.push_back("digest-mismatch:" + rel);
        stage.parsed = false;
      }
      contents[name] = *text;
    }
    if (stage.parsed) {
      stage.lists = parse_instance_file(contents["lists.csv"], rel_dir + "/lists.csv",
                                        params.m, theta, reasons, stage.parsed);
      stage.removed =
          parse_instance_file(contents["removed.csv"], rel_dir + "/removed.csv",
                              params.m, theta, reasons, stage.parsed);
      // schedules.csv must pair off with lists.csv line by line.
      std::istringstream in(contents["schedules.csv"]);
      std::string line;
      std::size_t at = 0;
      while (std::getline(in, line)) {
        if (line.empty()) {
          reasons.push_back("parse:" + rel_dir + "/schedules.csv:empty-line");
          stage.parsed = false;
          continue;
        }
        const std::size_t bar = line.find('|');
        if (bar == std::string::npos) {
          reasons.push_back("parse:" + rel_dir + "/schedules.csv:no-separator");
          stage.parsed = false;
          continue;
        }
        try {
          Instance inst = parse_instance_line(line.substr(0, bar));
          Schedule sched;
          sched.days = parse_cycle(line.substr(bar + 1));
          if (at >= stage.lists.size() || !(stage.lists[at] == inst)) {
            reasons.push_back("schedules:" + rel_dir + ":key-mismatch:" +
                              line.substr(0, bar));
            stage.parsed = false;
          }
          stage.schedules.emplace_back(std::move(inst), std::move(sched));
        } catch (const std::exception& e) {
          reasons.push_back("parse:" + rel_dir + "/schedules.csv:" + e.what());
          stage.parsed = false;
        }
        ++at;
      }
      if (at != stage.lists.size()) {
        reasons.push_back("schedules:" + rel_dir + ":count-mismatch");
        stage.parsed = false;
      }
      std::set<Instance> lset(stage.lists.begin(), stage.lists.end());
      for (const Instance& inst : stage.removed)
        if (lset.count(inst)) {
          reasons.push_back("overlap:" + rel_dir + ":" + instance_line(inst));
          stage.parsed = false;
        }
    }
    stages.push_back(std::move(stage));
  }
  for (const auto& [path, hex] : manifest->digests)
    if (!expected_paths.count(path))
      reasons.push_back("manifest:unexpected-digest:" + path);

  // Property 3: every stored schedule verifies.
  for (const StageFiles& stage : stages) {
    if (!stage.parsed) continue;
    for (const auto& [inst, sched] : stage.schedules) {
      try {
        if (!verify_schedule(inst, sched).ok())
          reasons.push_back("property3:" + stage_dir_name(stage.theta) + ":" +
                            instance_line(inst));
      } catch (const std::exception&) {
        reasons.push_back("property3:" + stage_dir_name(stage.theta) + ":" +
                          instance_line(inst));
      }
    }
  }

  // Properties 1 and 2: candidate coverage, with candidates re-derived from
  // the params (base stage) and from the stored deferred sets (later stages).
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const StageFiles& stage = stages[i];
    if (!stage.parsed) continue;
    std::vector<Instance> candidates;
    const char* label;
    if (i == 0) {
      label = "property1";
      candidates = enumerate_base(params.theta_min, params.m, params.d);
    } else {
      label = "property2";
      if (!stages[i - 1].parsed) continue;
      try {
        candidates =
            unfold(stages[i - 1].removed, stage.theta - 2, params.d, params.m);
      } catch (const std::exception& e) {
        reasons.push_back(std::string("property2:") +
                          stage_dir_name(stage.theta) + ":unfold:" + e.what());
        continue;
      }
    }
    std::set<Instance> exact(stage.lists.begin(), stage.lists.end());
    exact.insert(stage.removed.begin(), stage.removed.end());
    std::vector<const Instance*> members;
    for (const Instance& m : stage.lists) members.push_back(&m);
    for (const Instance& m : stage.removed) members.push_back(&m);
    for (const Instance& cand : candidates)
      if (!covered_by(cand, exact, members))
        reasons.push_back(std::string(label) + ":" +
                          stage_dir_name(stage.theta) + ":uncovered:" +
                          instance_line(cand));
  }

  // Property 4: nothing left over at the final threshold.
  if (!stages.empty() && stages.back().parsed && !stages.back().removed.empty())
    reasons.push_back("property4:nonempty:" +
                      std::to_string(stages.back().removed.size()));

  result.accepted = reasons.empty();
  return result;
}

}  // namespace pinwheel
