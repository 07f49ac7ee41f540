#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace parsched {

using JobId = std::string;
using Time = std::int64_t;

/// Sentinel for "no deadline". Kept as +inf, never as a large finite number,
/// so deadline arithmetic cannot overflow into a bogus bound.
inline constexpr Time kNoDeadline = std::numeric_limits<Time>::max();

enum class MachineKind { Single, Identical, Unrelated };

struct MachineEnv {
  MachineKind kind = MachineKind::Single;
  int count = 1;
};

struct Job {
  JobId id;
  std::vector<Time> proc;  // length 1 unless machines are unrelated
  Time release = 0;        // earliest allowed start
  Time deadline = kNoDeadline;  // latest allowed completion

  bool has_deadline() const { return deadline != kNoDeadline; }
};

/// A partial-scheduling instance: schedule at least k of the jobs,
/// minimizing the makespan over the scheduled ones.
struct Instance {
  MachineEnv machines;
  std::vector<Job> jobs;
  std::vector<std::pair<JobId, JobId>> prec;  // (u, v): u must finish before v starts
  int k = 0;
  std::optional<Time> cmax_bound;  // decision-variant deadline on the makespan

  int machine_count() const { return machines.count; }
  int job_count() const { return static_cast<int>(jobs.size()); }

  Time proc_on(int job, int machine) const {
    const auto& p = jobs[static_cast<std::size_t>(job)].proc;
    return p.size() == 1 ? p[0] : p[static_cast<std::size_t>(machine)];
  }

  /// Index of a job id, or -1 when unknown.
  int index_of(const JobId& id) const {
    for (int i = 0; i < job_count(); ++i)
      if (jobs[static_cast<std::size_t>(i)].id == id) return i;
    return -1;
  }
};

struct ScheduleEntry {
  JobId job;
  int machine = 0;
  Time start = 0;
};

/// The universal certificate: every solver's answer is one of these and is
/// accepted only if check_schedule() signs off.
struct Schedule {
  std::vector<ScheduleEntry> entries;
};

struct VariantFlags {
  MachineKind env = MachineKind::Single;
  bool has_release = false;
  bool has_deadline = false;
  bool has_prec = false;
  bool unit_p = false;

  bool operator==(const VariantFlags&) const = default;
};

struct ValidationReport {
  std::vector<std::string> errors;    // instance unusable
  std::vector<std::string> warnings;  // accepted but suspicious (e.g. unschedulable job)

  bool valid() const { return errors.empty(); }
};

struct FeasibilityVerdict {
  bool feasible = false;
  int jobs_done = 0;
  Time makespan = 0;
  std::vector<std::string> violations;
};

/// Schedule references an undeclared job or machine.
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A solver was invoked on a variant outside its contract.
struct DispatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The oracle's work budget ran out; never a silent wrong answer.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A reduction generator was fed an unusable source input.
struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reports every invariant violation with the offending job or edge.
/// A nonempty `errors` list means the instance must be rejected.
ValidationReport validate_instance(const Instance& inst);

/// Independent feasibility checker. Verifies release dates, deadlines,
/// per-machine interval disjointness, precedence (including that scheduled
/// jobs have all predecessors scheduled), and at-most-once job occurrence.
/// Throws StructuralError on unknown job ids or machine indices.
FeasibilityVerdict check_schedule(const Instance& inst, const Schedule& sched);

}  // namespace parsched
