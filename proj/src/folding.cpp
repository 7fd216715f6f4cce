#include "pinwheel/folding.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace pinwheel {

namespace {

struct Elem {
  Period p;
  int id;
};

bool elem_less(const Elem& x, const Elem& y) {
  if (x.p != y.p) return x.p < y.p;
  return x.id < y.id;
}

void insert_sorted(std::vector<Elem>& v, Elem e) {
  v.insert(std::upper_bound(v.begin(), v.end(), e, elem_less), std::move(e));
}

std::vector<Elem> elems_of(const Instance& a) {
  std::vector<Elem> v;
  v.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v.push_back({a[i], static_cast<int>(i)});
  return v;  // instance is sorted, ids ascending, so already elem_less-ordered
}

FoldResult pack_result(const Instance& source, std::vector<FoldStep> steps,
                       std::vector<Elem> work) {
  FoldResult r;
  r.trace.source = source;
  r.trace.steps = std::move(steps);
  std::vector<Period> ps;
  ps.reserve(work.size());
  for (const Elem& e : work) {
    ps.push_back(e.p);
    r.trace.result_ids.push_back(e.id);
  }
  r.folded = Instance(std::move(ps));
  return r;
}

}  // namespace

FoldResult fold(const Instance& a, long long theta) {
  if (theta < 2) throw std::invalid_argument("fold threshold must be at least 2");
  const Period cap(theta);
  std::vector<Elem> work = elems_of(a);
  std::vector<FoldStep> steps;
  int next_id = static_cast<int>(a.size());
  while (!work.empty() && cap < work.back().p) {
    Elem big = work.back();
    work.pop_back();
    if (!work.empty() && cap < work.back().p) {
      Elem second = work.back();
      work.pop_back();
      Elem ins{second.p.halved(), next_id++};
      steps.push_back(PairFoldStep{big.id, second.id, ins.id, ins.p});
      insert_sorted(work, ins);
    } else {
      Elem ins{cap, next_id++};
      steps.push_back(ThetaReplaceStep{big.id, ins.id, theta});
      insert_sorted(work, ins);
    }
  }
  return pack_result(a, std::move(steps), std::move(work));
}

Instance integer_fold(const Instance& a, long long theta) {
  Instance folded = fold(a, theta).folded;
  const Period cap(theta);
  std::vector<Period> out;
  out.reserve(folded.size());
  for (const Period& p : folded) {
    if (!p.is_integer() || p == cap)
      out.emplace_back(p.ceil() - 1);
    else
      out.push_back(p);
  }
  return Instance(std::move(out));
}

bool group_fits(const Instance& a, const std::vector<std::size_t>& group) {
  for (std::size_t idx : group)
    if (idx >= a.size()) throw std::out_of_range("group index outside the instance");
  for (std::size_t i = 0; i + 1 < group.size(); ++i)
    if (group[i] >= group[i + 1])
      throw std::invalid_argument("group indices must be strictly ascending");
  for (std::size_t idx : group)
    if (!a[idx].is_integer()) return false;

  const std::size_t g = group.size();
  if (g != 2 && g != 3 && g != 5) return false;
  const long long v0 = a[group[0]].num();
  if (g == 2) return a[group[1]].num() - v0 <= 2;
  if (g == 3) return (a[group[1]].num() - v0) + (a[group[2]].num() - v0) <= 2;
  const long long anchor = 5 * (v0 / 5);
  long long spread = 0;
  for (std::size_t idx : group) spread += a[idx].num() - anchor;
  return spread <= 3;
}

FoldResult fold_by_partition(const Instance& a, const Partition& partition, GroupCheck check) {
  if (!a.all_integer()) throw std::invalid_argument("partition folding needs integer periods");
  std::vector<char> used(a.size(), 0);
  for (const auto& group : partition) {
    if (group.size() != 2 && group.size() != 3 && group.size() != 5)
      throw std::invalid_argument("group sizes must be 2, 3 or 5");
    bool fits = group_fits(a, group);  // also validates indices and ordering
    if (check == GroupCheck::enforce && !fits)
      throw std::invalid_argument("group spread too wide to fold");
    for (std::size_t idx : group) {
      if (used[idx]) throw std::invalid_argument("groups must be disjoint");
      used[idx] = 1;
    }
  }

  std::vector<Elem> work;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!used[i]) work.push_back({a[i], static_cast<int>(i)});
  std::vector<FoldStep> steps;
  int next_id = static_cast<int>(a.size());
  for (const auto& group : partition) {
    const long long minv = a[group[0]].num();
    Period folded = group.size() == 2   ? Period(minv, 2)
                    : group.size() == 3 ? Period(minv, 3)
                                        : Period(minv / 5);
    std::vector<int> ids(group.begin(), group.end());
    steps.push_back(GroupFoldStep{ids, next_id, folded});
    insert_sorted(work, Elem{folded, next_id});
    ++next_id;
  }
  return pack_result(a, std::move(steps), std::move(work));
}

std::vector<Instance> unfold(const std::vector<Instance>& removed, long long theta,
                             const Rat& bound, long long min_value) {
  if (theta < 4 || theta % 2 != 0)
    throw std::invalid_argument("threshold must be even and at least 4");
  if (min_value < 1) throw std::invalid_argument("minimum value must be at least 1");
  const Rat limit = bound + rat(1, theta + 2);
  const long long half = theta / 2;

  std::set<Instance> out;
  for (const Instance& b : removed) {
    std::vector<long long> carried;
    long long halves = 0, walls = 0;
    for (const Period& p : b) {
      if (!p.is_integer()) throw std::invalid_argument("stage members must be integer instances");
      const long long v = p.num();
      if (v < min_value || v > theta - 1)
        throw std::invalid_argument("stage member value out of range");
      if (v == half)
        ++halves;
      else if (v == theta - 1)
        ++walls;
      else
        carried.push_back(v);
    }
    // Choose how many of the theta/2 elements came from a pair of theta+1
    // periods, then optionally revert one theta-1 element to theta or theta+1.
    for (long long e = 0; e <= halves; ++e) {
      std::vector<long long> base = carried;
      for (long long i = 0; i < halves - e; ++i) base.push_back(half);
      for (long long i = 0; i < 2 * e; ++i) base.push_back(theta + 1);
      for (int variant = 0; variant < 3; ++variant) {
        if (variant > 0 && walls == 0) break;
        std::vector<long long> vals = base;
        const long long keep_walls = walls - (variant > 0 ? 1 : 0);
        for (long long i = 0; i < keep_walls; ++i) vals.push_back(theta - 1);
        if (variant == 1) vals.push_back(theta);
        if (variant == 2) vals.push_back(theta + 1);
        std::vector<Period> ps;
        ps.reserve(vals.size());
        for (long long v : vals) ps.emplace_back(v);
        Instance cand(std::move(ps));
        if (cand.folded_density(theta + 2) <= limit) out.insert(std::move(cand));
      }
    }
  }
  return {out.begin(), out.end()};
}

std::string FoldTrace::str() const {
  std::string s = "source=" + source.str() + "\n";
  for (const FoldStep& step : steps) {
    if (const auto* pf = std::get_if<PairFoldStep>(&step)) {
      s += "pair:" + std::to_string(pf->removed_id) + "," + std::to_string(pf->halved_id) +
           "->" + std::to_string(pf->inserted_id) + "=" + pf->inserted.str() + "\n";
    } else if (const auto* tr = std::get_if<ThetaReplaceStep>(&step)) {
      s += "theta-replace:" + std::to_string(tr->removed_id) + "->" +
           std::to_string(tr->inserted_id) + "=" + std::to_string(tr->theta) + "\n";
    } else {
      const auto& gf = std::get<GroupFoldStep>(step);
      s += "group:";
      for (std::size_t i = 0; i < gf.member_ids.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(gf.member_ids[i]);
      }
      s += "->" + std::to_string(gf.inserted_id) + "=" + gf.inserted.str() + "\n";
    }
  }
  s += "result=";
  for (std::size_t i = 0; i < result_ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(result_ids[i]);
  }
  return s + "\n";
}

namespace {

[[noreturn]] void bad_trace() { throw std::invalid_argument("inconsistent fold trace"); }

// Re-assign every occurrence of `target` to the members in rotation,
// replicating the cycle first so the occurrence count splits evenly.
void round_robin(std::vector<int>& cycle, int target, const std::vector<int>& members) {
  long long k = std::count(cycle.begin(), cycle.end(), target);
  if (k == 0) bad_trace();
  const long long g = static_cast<long long>(members.size());
  const long long f = g / std::gcd(k, g);
  const std::vector<int> base = cycle;
  for (long long i = 1; i < f; ++i) cycle.insert(cycle.end(), base.begin(), base.end());
  long long idx = 0;
  for (int& c : cycle)
    if (c == target) c = members[idx++ % g];
}

}  // namespace

Schedule lift_schedule(const Schedule& folded_schedule, const FoldTrace& trace) {
  const Instance& src = trace.source;
  std::map<int, Period> period_of;
  std::vector<Elem> work = elems_of(src);
  for (const Elem& e : work) period_of.emplace(e.id, e.p);

  auto remove_id = [&](int id) -> Period {
    for (auto it = work.begin(); it != work.end(); ++it)
      if (it->id == id) {
        Period p = it->p;
        work.erase(it);
        return p;
      }
    bad_trace();
  };
  auto add_elem = [&](Period p, int id) {
    if (!period_of.emplace(id, p).second) bad_trace();  // ids are never reused
    insert_sorted(work, Elem{p, id});
  };

  // Forward replay: recover the folded instance and each id's period.
  for (const FoldStep& step : trace.steps) {
    if (const auto* pf = std::get_if<PairFoldStep>(&step)) {
      Period big = remove_id(pf->removed_id);
      Period small = remove_id(pf->halved_id);
      if (big < small || small.halved() != pf->inserted) bad_trace();
      add_elem(pf->inserted, pf->inserted_id);
    } else if (const auto* tr = std::get_if<ThetaReplaceStep>(&step)) {
      Period gone = remove_id(tr->removed_id);
      if (gone < Period(tr->theta)) bad_trace();
      add_elem(Period(tr->theta), tr->inserted_id);
    } else {
      const auto& gf = std::get<GroupFoldStep>(step);
      const std::size_t g = gf.member_ids.size();
      if (g != 2 && g != 3 && g != 5) bad_trace();
      long long minv = -1;
      Period prev(1);
      for (std::size_t i = 0; i < g; ++i) {
        Period p = remove_id(gf.member_ids[i]);
        if (!p.is_integer() || (i > 0 && p < prev)) bad_trace();
        if (minv < 0 || p.num() < minv) minv = p.num();
        prev = p;
      }
      Period expect = g == 2 ? Period(minv, 2) : g == 3 ? Period(minv, 3) : Period(minv / 5);
      if (expect != gf.inserted) bad_trace();
      add_elem(gf.inserted, gf.inserted_id);
    }
  }
  if (work.size() != trace.result_ids.size()) bad_trace();
  std::vector<Period> folded_ps;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (work[i].id != trace.result_ids[i]) bad_trace();
    folded_ps.push_back(work[i].p);
  }
  Instance folded(std::move(folded_ps));

  if (!verify_schedule(folded, folded_schedule).ok())
    throw std::invalid_argument("schedule does not satisfy the folded instance");

  // Replace day entries by ids, undo the rewrites newest-first, then map the
  // surviving original ids back to 1-based positions.
  std::vector<int> cycle;
  cycle.reserve(folded_schedule.days.size());
  for (int d : folded_schedule.days) cycle.push_back(d == 0 ? -1 : work[d - 1].id);

  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    if (const auto* pf = std::get_if<PairFoldStep>(&*it)) {
      Elem a{period_of.at(pf->removed_id), pf->removed_id};
      Elem b{period_of.at(pf->halved_id), pf->halved_id};
      std::vector<int> members = elem_less(b, a) ? std::vector<int>{b.id, a.id}
                                                 : std::vector<int>{a.id, b.id};
      round_robin(cycle, pf->inserted_id, members);
    } else if (const auto* tr = std::get_if<ThetaReplaceStep>(&*it)) {
      for (int& c : cycle)
        if (c == tr->inserted_id) c = tr->removed_id;
    } else {
      const auto& gf = std::get<GroupFoldStep>(*it);
      round_robin(cycle, gf.inserted_id, gf.member_ids);
    }
  }

  Schedule out;
  out.days.reserve(cycle.size());
  for (int c : cycle) {
    if (c == -1) {
      out.days.push_back(0);
    } else {
      if (c < 0 || c >= static_cast<int>(src.size())) bad_trace();
      out.days.push_back(c + 1);
    }
  }
  if (!verify_schedule(src, out).ok())
    throw std::logic_error("lifted schedule failed verification against the source");
  out.verified = true;
  return out;
}

}  // namespace pinwheel
