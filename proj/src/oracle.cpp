#include "parsched/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

namespace parsched {
namespace oracle {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("PARSCHED_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 1'000'000'000ull;
}

namespace {

std::vector<std::vector<int>> direct_preds(const Instance& inst) {
  std::vector<std::vector<int>> preds(inst.jobs.size());
  for (const auto& [u, v] : inst.prec) {
    int iu = inst.index_of(u);
    int iv = inst.index_of(v);
    if (iu < 0 || iv < 0) throw DispatchError("precedence edge references unknown job");
    preds[static_cast<std::size_t>(iv)].push_back(iu);
  }
  return preds;
}

}  // namespace

std::optional<Result> greedy_realize(const Instance& inst, const SequenceAssignment& assignment) {
  int n = inst.job_count();
  int m = inst.machine_count();
  if (static_cast<int>(assignment.seq.size()) != m)
    throw DispatchError("assignment must have one sequence per machine");

  std::vector<int> machine_of(static_cast<std::size_t>(n), -1);
  std::vector<int> pos_of(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < m; ++i) {
    const auto& s = assignment.seq[static_cast<std::size_t>(i)];
    for (std::size_t p = 0; p < s.size(); ++p) {
      int j = s[p];
      if (j < 0 || j >= n) throw DispatchError("assignment references unknown job index");
      if (machine_of[static_cast<std::size_t>(j)] != -1)
        throw DispatchError("assignment places a job twice");
      machine_of[static_cast<std::size_t>(j)] = i;
      pos_of[static_cast<std::size_t>(j)] = static_cast<int>(p);
    }
  }

  auto preds = direct_preds(inst);

  // Combined constraint graph: machine-sequence edges plus precedence edges
  // among assigned jobs. Unassigned predecessors make the assignment void.
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  std::vector<int> indeg(static_cast<std::size_t>(n), 0);
  std::vector<int> assigned;
  for (int j = 0; j < n; ++j)
    if (machine_of[static_cast<std::size_t>(j)] != -1) assigned.push_back(j);
  for (int j : assigned) {
    int mach = machine_of[static_cast<std::size_t>(j)];
    int pos = pos_of[static_cast<std::size_t>(j)];
    if (pos > 0) {
      int prev = assignment.seq[static_cast<std::size_t>(mach)][static_cast<std::size_t>(pos - 1)];
      out[static_cast<std::size_t>(prev)].push_back(j);
      ++indeg[static_cast<std::size_t>(j)];
    }
    for (int u : preds[static_cast<std::size_t>(j)]) {
      if (machine_of[static_cast<std::size_t>(u)] == -1) return std::nullopt;
      out[static_cast<std::size_t>(u)].push_back(j);
      ++indeg[static_cast<std::size_t>(j)];
    }
  }

  std::vector<int> ready;
  for (int j : assigned)
    if (indeg[static_cast<std::size_t>(j)] == 0) ready.push_back(j);

  std::vector<Time> completion(static_cast<std::size_t>(n), 0);
  Result result;
  std::size_t done = 0;
  while (!ready.empty()) {
    int j = *std::min_element(ready.begin(), ready.end());
    ready.erase(std::find(ready.begin(), ready.end(), j));
    ++done;
    int mach = machine_of[static_cast<std::size_t>(j)];
    const Job& job = inst.jobs[static_cast<std::size_t>(j)];
    Time start = job.release;
    int pos = pos_of[static_cast<std::size_t>(j)];
    if (pos > 0) {
      int prev = assignment.seq[static_cast<std::size_t>(mach)][static_cast<std::size_t>(pos - 1)];
      start = std::max(start, completion[static_cast<std::size_t>(prev)]);
    }
    for (int u : preds[static_cast<std::size_t>(j)])
      start = std::max(start, completion[static_cast<std::size_t>(u)]);
    Time c = start + inst.proc_on(j, mach);
    if (job.has_deadline() && c > job.deadline) return std::nullopt;
    completion[static_cast<std::size_t>(j)] = c;
    result.makespan = std::max(result.makespan, c);
    result.schedule.entries.push_back({job.id, mach, start});
    for (int v : out[static_cast<std::size_t>(j)])
      if (--indeg[static_cast<std::size_t>(v)] == 0) ready.push_back(v);
  }
  if (done != assigned.size()) return std::nullopt;  // sequence order contradicts precedence
  return result;
}

namespace {

struct Search {
  const Instance& inst;
  int n;
  int m;
  bool symmetric;  // identical machines are interchangeable
  std::optional<Time> cmax;
  std::uint64_t budget;
  std::uint64_t steps = 0;

  std::vector<std::vector<int>> preds;
  std::vector<std::vector<int>> succs;
  std::vector<char> chosen;
  std::vector<int> unmet;  // unchosen direct predecessors left per job
  std::vector<Time> frontier;
  std::vector<Time> completion;
  std::vector<int> first_job;   // first job index per machine, -1 if empty
  std::vector<Time> first_start;

  std::optional<Result> best;
  std::vector<ScheduleEntry> partial;

  Search(const Instance& i, std::optional<Time> c, std::uint64_t b)
      : inst(i),
        n(i.job_count()),
        m(i.machine_count()),
        symmetric(i.machines.kind != MachineKind::Unrelated),
        cmax(c),
        budget(b),
        preds(direct_preds(i)),
        succs(static_cast<std::size_t>(n)),
        chosen(static_cast<std::size_t>(n), 0),
        unmet(static_cast<std::size_t>(n), 0),
        frontier(static_cast<std::size_t>(m), 0),
        completion(static_cast<std::size_t>(n), 0),
        first_job(static_cast<std::size_t>(m), -1),
        first_start(static_cast<std::size_t>(m), 0) {
    for (int j = 0; j < n; ++j) {
      unmet[static_cast<std::size_t>(j)] = static_cast<int>(preds[static_cast<std::size_t>(j)].size());
      for (int u : preds[static_cast<std::size_t>(j)]) succs[static_cast<std::size_t>(u)].push_back(j);
    }
  }

  void dfs(int count, Time last_start, int last_machine, Time span) {
    if (count == inst.k) {
      if (!best || span < best->makespan) {
        best = Result{span, Schedule{partial}};
      }
      return;
    }

    for (int j = 0; j < n; ++j) {
      if (chosen[static_cast<std::size_t>(j)] || unmet[static_cast<std::size_t>(j)] != 0) continue;
      const Job& job = inst.jobs[static_cast<std::size_t>(j)];
      Time pred_done = 0;
      for (int u : preds[static_cast<std::size_t>(j)])
        pred_done = std::max(pred_done, completion[static_cast<std::size_t>(u)]);
      for (int mach = 0; mach < m; ++mach) {
        bool fresh = first_job[static_cast<std::size_t>(mach)] == -1;
        if (symmetric && fresh && mach > 0 && first_job[static_cast<std::size_t>(mach - 1)] == -1)
          break;  // fill interchangeable machines left to right
        Time start = std::max({job.release, frontier[static_cast<std::size_t>(mach)], pred_done});
        // Canonical placement order: strictly increasing (start, machine).
        if (start < last_start || (start == last_start && mach <= last_machine)) continue;
        if (symmetric && fresh && mach > 0 &&
            first_start[static_cast<std::size_t>(mach - 1)] == start &&
            first_job[static_cast<std::size_t>(mach - 1)] > j)
          continue;  // equal-start fresh machines take jobs in index order
        Time c = start + inst.proc_on(j, mach);
        if (job.has_deadline() && c > job.deadline) continue;
        if (cmax && c > *cmax) continue;
        if (best && std::max(span, c) >= best->makespan) continue;
        if (++steps > budget)
          throw BudgetError("oracle budget exceeded after " + std::to_string(steps - 1) + " steps");

        chosen[static_cast<std::size_t>(j)] = 1;
        completion[static_cast<std::size_t>(j)] = c;
        Time old_frontier = frontier[static_cast<std::size_t>(mach)];
        frontier[static_cast<std::size_t>(mach)] = c;
        int old_first = first_job[static_cast<std::size_t>(mach)];
        Time old_first_start = first_start[static_cast<std::size_t>(mach)];
        if (fresh) {
          first_job[static_cast<std::size_t>(mach)] = j;
          first_start[static_cast<std::size_t>(mach)] = start;
        }
        for (int v : succs[static_cast<std::size_t>(j)]) --unmet[static_cast<std::size_t>(v)];
        partial.push_back({job.id, mach, start});

        dfs(count + 1, start, mach, std::max(span, c));

        partial.pop_back();
        for (int v : succs[static_cast<std::size_t>(j)]) ++unmet[static_cast<std::size_t>(v)];
        frontier[static_cast<std::size_t>(mach)] = old_frontier;
        first_job[static_cast<std::size_t>(mach)] = old_first;
        first_start[static_cast<std::size_t>(mach)] = old_first_start;
        chosen[static_cast<std::size_t>(j)] = 0;
        completion[static_cast<std::size_t>(j)] = 0;
      }
    }
  }
};

}  // namespace

std::optional<Result> brute_force(const Instance& inst, std::optional<Time> cmax, std::uint64_t budget) {
  if (inst.k <= 0) return Result{0, Schedule{}};
  if (inst.k > inst.job_count()) return std::nullopt;

  Search search(inst, cmax, budget);
  search.dfs(0, -1, inst.machine_count(), 0);
  return search.best;
}

}  // namespace oracle
}  // namespace parsched
