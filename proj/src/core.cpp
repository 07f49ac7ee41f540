#include "parsched/core.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace parsched {

namespace {

std::string fmt_edge(const JobId& u, const JobId& v) { return "(" + u + "," + v + ")"; }

}  // namespace

ValidationReport validate_instance(const Instance& inst) {
  ValidationReport report;
  auto err = [&](const std::string& m) { report.errors.push_back(m); };
  auto warn = [&](const std::string& m) { report.warnings.push_back(m); };

  if (inst.machine_count() < 1) err("machine count must be >= 1");
  if (inst.machines.kind == MachineKind::Single && inst.machine_count() != 1)
    err("single-machine environment must have count 1");

  std::map<JobId, int> index;
  for (int i = 0; i < inst.job_count(); ++i) {
    const Job& j = inst.jobs[static_cast<std::size_t>(i)];
    if (j.id.empty()) err("job at position " + std::to_string(i) + " has empty id");
    if (!index.emplace(j.id, i).second) err("duplicate job id: " + j.id);

    std::size_t want =
        inst.machines.kind == MachineKind::Unrelated ? static_cast<std::size_t>(inst.machine_count()) : 1;
    if (j.proc.size() != want)
      err("job " + j.id + ": expected " + std::to_string(want) + " processing time(s), got " +
          std::to_string(j.proc.size()));
    for (Time p : j.proc)
      if (p < 1) err("job " + j.id + ": processing time must be >= 1");
    if (j.release < 0) err("job " + j.id + ": negative release date");
    if (j.has_deadline()) {
      if (j.deadline < 1) err("job " + j.id + ": deadline must be >= 1");
      Time pmin = j.proc.empty() ? 1 : *std::min_element(j.proc.begin(), j.proc.end());
      if (!j.proc.empty() && j.release + pmin > j.deadline)
        warn("job " + j.id + " is unschedulable: release + p exceeds deadline");
    }
  }

  if (inst.k < 0) err("k must be nonnegative");
  if (inst.k == 0) warn("k = 0: the empty schedule is trivially feasible");
  if (inst.k > inst.job_count())
    err("k exceeds job count (" + std::to_string(inst.k) + " > " + std::to_string(inst.job_count()) + ")");
  if (inst.cmax_bound && *inst.cmax_bound < 0) err("cmax bound must be nonnegative");

  // Adjacency over declared jobs only; undeclared endpoints are reported and skipped.
  std::vector<std::vector<int>> adj(inst.jobs.size());
  std::vector<int> indeg(inst.jobs.size(), 0);
  for (const auto& [u, v] : inst.prec) {
    auto iu = index.find(u);
    auto iv = index.find(v);
    if (iu == index.end()) err("precedence edge " + fmt_edge(u, v) + " references unknown job " + u);
    if (iv == index.end()) err("precedence edge " + fmt_edge(u, v) + " references unknown job " + v);
    if (iu == index.end() || iv == index.end()) continue;
    if (iu->second == iv->second) {
      err("precedence edge " + fmt_edge(u, v) + " forms a cycle (self-loop)");
      continue;
    }
    adj[static_cast<std::size_t>(iu->second)].push_back(iv->second);
    ++indeg[static_cast<std::size_t>(iv->second)];
  }

  // Kahn topological sort; leftover nodes lie on a cycle.
  std::vector<int> queue;
  for (std::size_t i = 0; i < indeg.size(); ++i)
    if (indeg[i] == 0) queue.push_back(static_cast<int>(i));
  std::size_t seen = 0;
  while (seen < queue.size()) {
    int u = queue[seen++];
    for (int v : adj[static_cast<std::size_t>(u)])
      if (--indeg[static_cast<std::size_t>(v)] == 0) queue.push_back(v);
  }
  if (seen < inst.jobs.size()) {
    std::ostringstream os;
    os << "precedence constraints contain a cycle through:";
    for (std::size_t i = 0; i < indeg.size(); ++i)
      if (indeg[i] > 0) os << ' ' << inst.jobs[i].id;
    err(os.str());
  }

  return report;
}

FeasibilityVerdict check_schedule(const Instance& inst, const Schedule& sched) {
  FeasibilityVerdict verdict;
  auto bad = [&](const std::string& m) { verdict.violations.push_back(m); };

  std::map<JobId, int> index;
  for (int i = 0; i < inst.job_count(); ++i) index.emplace(inst.jobs[static_cast<std::size_t>(i)].id, i);

  struct Placed {
    int job;
    int machine;
    Time start;
    Time end;
  };
  std::vector<Placed> placed;
  std::map<int, std::size_t> by_job;

  for (const ScheduleEntry& e : sched.entries) {
    auto it = index.find(e.job);
    if (it == index.end()) throw StructuralError("schedule references unknown job: " + e.job);
    if (e.machine < 0 || e.machine >= inst.machine_count())
      throw StructuralError("schedule references unknown machine index " + std::to_string(e.machine) +
                            " for job " + e.job);
    int j = it->second;
    if (by_job.count(j)) {
      bad("job " + e.job + " scheduled more than once");
      continue;
    }
    const Job& job = inst.jobs[static_cast<std::size_t>(j)];
    Time p = inst.proc_on(j, e.machine);
    Placed pl{j, e.machine, e.start, e.start + p};
    if (e.start < 0) bad("job " + e.job + ": negative start");
    if (e.start < job.release) bad("job " + e.job + ": release violated");
    if (job.has_deadline() && pl.end > job.deadline) bad("job " + e.job + ": deadline violated");
    by_job.emplace(j, placed.size());
    placed.push_back(pl);
  }

  // Per-machine interval disjointness.
  std::vector<std::vector<const Placed*>> per_machine(static_cast<std::size_t>(inst.machine_count()));
  for (const Placed& pl : placed) per_machine[static_cast<std::size_t>(pl.machine)].push_back(&pl);
  for (auto& lane : per_machine) {
    std::sort(lane.begin(), lane.end(),
              [](const Placed* a, const Placed* b) { return a->start < b->start; });
    for (std::size_t i = 1; i < lane.size(); ++i)
      if (lane[i]->start < lane[i - 1]->end)
        bad("machine " + std::to_string(lane[i]->machine) + ": jobs " +
            inst.jobs[static_cast<std::size_t>(lane[i - 1]->job)].id + " and " +
            inst.jobs[static_cast<std::size_t>(lane[i]->job)].id + " overlap");
  }

  for (const auto& [u, v] : inst.prec) {
    int iu = inst.index_of(u);
    int iv = inst.index_of(v);
    if (iu < 0 || iv < 0) continue;  // validation's problem, not the schedule's
    auto pv = by_job.find(iv);
    if (pv == by_job.end()) continue;
    auto pu = by_job.find(iu);
    if (pu == by_job.end()) {
      bad("job " + v + ": predecessor " + u + " unscheduled");
      continue;
    }
    if (placed[pu->second].end > placed[pv->second].start)
      bad("precedence " + fmt_edge(u, v) + " violated");
  }

  verdict.jobs_done = static_cast<int>(placed.size());
  verdict.makespan = 0;
  for (const Placed& pl : placed) verdict.makespan = std::max(verdict.makespan, pl.end);
  verdict.feasible = verdict.violations.empty();
  return verdict;
}

}  // namespace parsched
