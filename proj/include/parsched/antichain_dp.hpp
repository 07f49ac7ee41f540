#pragma once

#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "parsched/core.hpp"
#include "parsched/poset.hpp"

namespace parsched {
namespace antichain_dp {

/// Faithful: forward iteration over event slots, computing S only for
/// antichains of depth <= k at each slot (absent entries read as false).
/// Lazy: memoized recurrence with no depth restriction below the R-query
/// level; the correctness reference the faithful mode is checked against.
enum class Mode { Faithful, Lazy };

struct Stats {
  std::vector<std::pair<Time, int>> antichains_per_t;
  std::size_t memo_entries = 0;
};

struct Options {
  Mode mode = Mode::Faithful;
  Stats* stats = nullptr;
};

/// Unit jobs, identical machines, releases and precedence, no deadlines.
/// Returns a checked schedule of exactly k jobs with makespan <= cmax, or
/// absent when none exists. Throws DispatchError on other variants.
std::optional<Schedule> decide(const Instance& inst, Time cmax, const Options& opts = {});

/// Smallest feasible makespan via binary search over the event-slot
/// candidates, or absent when fewer than k jobs exist.
std::optional<std::pair<Time, Schedule>> minimize_makespan(const Instance& inst, const Options& opts = {});

/// Exact recurrence surface (lazy semantics), exposed for tests and for the
/// lazy evaluation path of decide(). S values are memoized per antichain as
/// the threshold slot from which they hold.
class DpContext {
 public:
  DpContext(const Instance& inst, Time cmax);

  const PrecedenceGraph& graph() const { return g_; }
  Time cmax() const { return cmax_; }

  /// S(A,t): a feasible schedule of makespan <= t processes exactly pred(A).
  /// Base cases S(empty,t)=1 for t>=0 and S(A,0)=0 otherwise.
  bool compute_S(const Antichain& a, Time t);

  /// Greedy tail of k - |pred(A)| jobs from min(G - pred(A)) placed after t,
  /// by ascending release slot; absent when impossible or S(A,t) is false.
  /// R(A,t) holds exactly when this returns a value.
  std::optional<std::vector<ScheduleEntry>> fill(const Antichain& a, Time t);

  /// Entries realizing S(A, theta(A)) for schedule reconstruction.
  std::vector<ScheduleEntry> witness_entries(const Antichain& a);

  /// Earliest slot t with S(A,t) = 1.
  Time theta(const Antichain& a);

  std::size_t memo_entries() const { return thetas_.size(); }

 private:
  struct ThetaEntry {
    Time value;
    std::vector<int> scheduled_last;  // the X realizing the minimum
    int next = -1;                    // interned id of max(pred(A) \ X)
  };

  int intern(const Antichain& a);
  const ThetaEntry& theta_entry(int id);

  const Instance& inst_;
  PrecedenceGraph g_;
  Time cmax_;
  int m_;
  NodeSet horizon_;  // jobs with rho <= cmax

  std::unordered_map<Antichain, int, AntichainHash> ids_;
  std::vector<Antichain> chains_;
  std::vector<std::optional<ThetaEntry>> thetas_;
};

}  // namespace antichain_dp
}  // namespace parsched
