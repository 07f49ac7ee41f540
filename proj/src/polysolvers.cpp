#include "parsched/polysolvers.hpp"

#include <algorithm>
#include <numeric>

#include "parsched/poset.hpp"

namespace parsched {
namespace polysolvers {

namespace {

void require(bool ok, const char* msg) {
  if (!ok) throw DispatchError(msg);
}

bool all_unit(const Instance& inst) {
  for (const Job& j : inst.jobs)
    for (Time p : j.proc)
      if (p != 1) return false;
  return true;
}

bool any_deadline(const Instance& inst) {
  return std::any_of(inst.jobs.begin(), inst.jobs.end(), [](const Job& j) { return j.has_deadline(); });
}

}  // namespace

std::optional<Solved> greedy_prec_unit(const Instance& inst, int k) {
  require(inst.machines.kind != MachineKind::Unrelated, "greedy_prec_unit: identical machines only");
  require(all_unit(inst), "greedy_prec_unit: unit processing times only");
  require(!any_deadline(inst), "greedy_prec_unit: deadlines not supported");
  if (k <= 0) return Solved{0, Schedule{}};
  int n = inst.job_count();
  if (k > n) return std::nullopt;

  PrecedenceGraph g = PrecedenceGraph::build(inst);
  int m = inst.machine_count();
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  Schedule sched;
  int placed = 0;
  Time horizon = g.max_rho() + k;
  for (Time slot = 1; slot <= horizon && placed < k; ++slot) {
    // Collect the slot's picks first: a job completing at this slot must
    // not unlock a same-slot successor.
    std::vector<int> picked;
    for (int j = 0; j < n; ++j) {
      if (static_cast<int>(picked.size()) >= m || placed + static_cast<int>(picked.size()) >= k) break;
      if (done[static_cast<std::size_t>(j)] || g.rho(j) > slot) continue;
      bool ready = true;
      g.pred_row(j).for_each([&](int u) {
        if (u != j && !done[static_cast<std::size_t>(u)]) ready = false;
      });
      if (ready) picked.push_back(j);
    }
    for (std::size_t i = 0; i < picked.size(); ++i) {
      int j = picked[i];
      sched.entries.push_back({g.id_of(j), static_cast<int>(i), slot - 1});
      done[static_cast<std::size_t>(j)] = 1;
      ++placed;
    }
  }
  if (placed < k) return std::nullopt;
  Time makespan = 0;
  for (const auto& e : sched.entries) makespan = std::max(makespan, e.start + 1);
  return Solved{makespan, std::move(sched)};
}

std::optional<Solved> greedy_edd_unit(const Instance& inst, int k) {
  require(inst.machines.kind != MachineKind::Unrelated, "greedy_edd_unit: identical machines only");
  require(all_unit(inst), "greedy_edd_unit: unit processing times only");
  require(inst.prec.empty(), "greedy_edd_unit: precedence not supported");
  if (k <= 0) return Solved{0, Schedule{}};
  int n = inst.job_count();
  if (k > n) return std::nullopt;

  int m = inst.machine_count();
  Time horizon = 0;
  for (const Job& j : inst.jobs) horizon = std::max(horizon, j.release + 1);
  horizon += k;

  std::vector<char> done(static_cast<std::size_t>(n), 0);
  Schedule sched;
  int placed = 0;
  for (Time slot = 1; slot <= horizon && placed < k; ++slot) {
    // Up to m released, unexpired jobs by earliest deadline, ties by index.
    std::vector<int> avail;
    for (int j = 0; j < n; ++j) {
      const Job& job = inst.jobs[static_cast<std::size_t>(j)];
      if (done[static_cast<std::size_t>(j)] || job.release + 1 > slot) continue;
      if (job.deadline < slot) continue;
      avail.push_back(j);
    }
    std::stable_sort(avail.begin(), avail.end(), [&](int a, int b) {
      return inst.jobs[static_cast<std::size_t>(a)].deadline < inst.jobs[static_cast<std::size_t>(b)].deadline;
    });
    for (int i = 0; i < m && i < static_cast<int>(avail.size()) && placed < k; ++i) {
      int j = avail[static_cast<std::size_t>(i)];
      sched.entries.push_back({inst.jobs[static_cast<std::size_t>(j)].id, i, slot - 1});
      done[static_cast<std::size_t>(j)] = 1;
      ++placed;
    }
  }
  if (placed < k) return std::nullopt;
  Time makespan = 0;
  for (const auto& e : sched.entries) makespan = std::max(makespan, e.start + 1);
  return Solved{makespan, std::move(sched)};
}

MooreResult moore_max_ontime(const std::vector<std::pair<Time, Time>>& jobs) {
  std::vector<int> order(jobs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return jobs[static_cast<std::size_t>(a)].second < jobs[static_cast<std::size_t>(b)].second;
  });

  MooreResult result;
  Time clock = 0;
  for (int j : order) {
    result.ontime.push_back(j);
    clock += jobs[static_cast<std::size_t>(j)].first;
    if (clock > jobs[static_cast<std::size_t>(j)].second) {
      // First late job: drop the largest processing time seen so far.
      auto victim = std::max_element(result.ontime.begin(), result.ontime.end(), [&](int a, int b) {
        return jobs[static_cast<std::size_t>(a)].first < jobs[static_cast<std::size_t>(b)].first;
      });
      clock -= jobs[static_cast<std::size_t>(*victim)].first;
      result.rejected.push_back(*victim);
      result.ontime.erase(victim);
    }
  }
  return result;
}

namespace {

/// Max on-time count when every deadline is additionally capped at `cap`.
MooreResult moore_capped(const std::vector<std::pair<Time, Time>>& jobs, Time cap) {
  std::vector<std::pair<Time, Time>> capped = jobs;
  for (auto& [p, d] : capped) d = std::min(d, cap);
  return moore_max_ontime(capped);
}

std::optional<Solved> solve_plain(const Instance& inst, int k) {
  // 1|| : the k smallest processing times, back to back from 0.
  std::vector<int> order(static_cast<std::size_t>(inst.job_count()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return inst.proc_on(a, 0) < inst.proc_on(b, 0);
  });
  Schedule sched;
  Time clock = 0;
  for (int i = 0; i < k; ++i) {
    int j = order[static_cast<std::size_t>(i)];
    sched.entries.push_back({inst.jobs[static_cast<std::size_t>(j)].id, 0, clock});
    clock += inst.proc_on(j, 0);
  }
  return Solved{clock, std::move(sched)};
}

std::optional<Solved> solve_deadlines(const Instance& inst, int k) {
  // 1|d_j| : feasibility at cap c is Moore with deadlines min(d, c); the
  // smallest feasible cap is the optimal makespan.
  std::vector<std::pair<Time, Time>> jobs;
  Time total = 0;
  for (int j = 0; j < inst.job_count(); ++j) {
    jobs.emplace_back(inst.proc_on(j, 0), inst.jobs[static_cast<std::size_t>(j)].deadline);
    total += inst.proc_on(j, 0);
  }
  if (static_cast<int>(moore_capped(jobs, total).ontime.size()) < k) return std::nullopt;

  Time lo = 0, hi = total;  // invariant: feasible at hi, infeasible at lo (lo=0: p >= 1)
  while (lo + 1 < hi) {
    Time mid = lo + (hi - lo) / 2;
    if (static_cast<int>(moore_capped(jobs, mid).ontime.size()) >= k)
      hi = mid;
    else
      lo = mid;
  }

  MooreResult at_best = moore_capped(jobs, hi);
  std::vector<int> pick = at_best.ontime;
  std::stable_sort(pick.begin(), pick.end(),
                   [&](int a, int b) { return jobs[static_cast<std::size_t>(a)].first < jobs[static_cast<std::size_t>(b)].first; });
  pick.resize(static_cast<std::size_t>(k));
  std::stable_sort(pick.begin(), pick.end(),
                   [&](int a, int b) { return jobs[static_cast<std::size_t>(a)].second < jobs[static_cast<std::size_t>(b)].second; });

  Schedule sched;
  Time clock = 0;
  for (int j : pick) {
    sched.entries.push_back({inst.jobs[static_cast<std::size_t>(j)].id, 0, clock});
    clock += jobs[static_cast<std::size_t>(j)].first;
  }
  return Solved{clock, std::move(sched)};
}

std::optional<Solved> solve_releases(const Instance& inst, int k) {
  // 1|r_j| : reverse time at horizon M; release dates become deadlines
  // M - r_j. Smallest feasible M is the optimum.
  int n = inst.job_count();
  Time max_r = 0, total = 0;
  for (int j = 0; j < n; ++j) {
    max_r = std::max(max_r, inst.jobs[static_cast<std::size_t>(j)].release);
    total += inst.proc_on(j, 0);
  }
  Time ub = max_r + total;

  auto reversed = [&](Time horizon) {
    std::vector<std::pair<Time, Time>> jobs;
    for (int j = 0; j < n; ++j)
      jobs.emplace_back(inst.proc_on(j, 0), horizon - inst.jobs[static_cast<std::size_t>(j)].release);
    return jobs;
  };
  auto feasible = [&](Time horizon) {
    auto jobs = reversed(horizon);
    return static_cast<int>(moore_max_ontime(jobs).ontime.size()) >= k;
  };
  if (!feasible(ub)) return std::nullopt;

  Time lo = 0, hi = ub;
  while (lo + 1 < hi) {
    Time mid = lo + (hi - lo) / 2;
    if (feasible(mid))
      hi = mid;
    else
      lo = mid;
  }

  auto jobs = reversed(hi);
  MooreResult at_best = moore_max_ontime(jobs);
  std::vector<int> pick = at_best.ontime;
  std::stable_sort(pick.begin(), pick.end(),
                   [&](int a, int b) { return jobs[static_cast<std::size_t>(a)].first < jobs[static_cast<std::size_t>(b)].first; });
  pick.resize(static_cast<std::size_t>(k));
  std::stable_sort(pick.begin(), pick.end(),
                   [&](int a, int b) { return jobs[static_cast<std::size_t>(a)].second < jobs[static_cast<std::size_t>(b)].second; });

  // Pack the chosen jobs from 0 in the reversed schedule, then map back.
  Schedule sched;
  Time clock = 0;
  for (int j : pick) {
    Time rev_completion = clock + jobs[static_cast<std::size_t>(j)].first;
    sched.entries.push_back({inst.jobs[static_cast<std::size_t>(j)].id, 0, hi - rev_completion});
    clock = rev_completion;
  }
  return Solved{hi, std::move(sched)};
}

}  // namespace

std::optional<Solved> solve_single_machine(const Instance& inst, int k) {
  require(inst.machine_count() == 1, "solve_single_machine: one machine only");
  require(inst.prec.empty(), "solve_single_machine: precedence not supported");
  bool has_r = std::any_of(inst.jobs.begin(), inst.jobs.end(), [](const Job& j) { return j.release > 0; });
  bool has_d = any_deadline(inst);
  require(!(has_r && has_d), "solve_single_machine: releases and deadlines together route elsewhere");
  if (k <= 0) return Solved{0, Schedule{}};
  if (k > inst.job_count()) return std::nullopt;

  if (has_d) return solve_deadlines(inst, k);
  if (has_r) return solve_releases(inst, k);
  return solve_plain(inst, k);
}

}  // namespace polysolvers
}  // namespace parsched
