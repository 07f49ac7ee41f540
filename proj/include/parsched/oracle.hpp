#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "parsched/core.hpp"

namespace parsched {
namespace oracle {

/// Ordered job sequences per machine, combined length k.
struct SequenceAssignment {
  std::vector<std::vector<int>> seq;  // job indices, one list per machine
};

struct Result {
  Time makespan = 0;
  Schedule schedule;
};

std::uint64_t default_budget();  // PARSCHED_BUDGET overrides the 1e9 default

/// Earliest-start realization of a fixed assignment: each job starts at the
/// latest of its release, its machine predecessor's completion, and its
/// precedence predecessors' completions. Absent when a sequenced job has an
/// unassigned predecessor, the combined order is cyclic, or a deadline breaks.
std::optional<Result> greedy_realize(const Instance& inst, const SequenceAssignment& assignment);

/// Exhaustive n^O(k) search over all assignments, pruned by best-so-far and
/// the optional cmax. Exact for every variant; throws BudgetError when the
/// step budget runs out rather than ever returning a wrong answer.
std::optional<Result> brute_force(const Instance& inst, std::optional<Time> cmax = {},
                                  std::uint64_t budget = default_budget());

}  // namespace oracle
}  // namespace parsched
