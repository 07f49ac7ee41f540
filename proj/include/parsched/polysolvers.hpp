#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "parsched/core.hpp"

namespace parsched {
namespace polysolvers {

using Solved = std::pair<Time, Schedule>;

/// Slot-by-slot greedy for unit jobs with releases and precedence, no
/// deadlines: each slot takes up to m available jobs (lowest index first)
/// until k are placed. Exact on one machine; an upper bound for m > 1.
std::optional<Solved> greedy_prec_unit(const Instance& inst, int k);

/// Earliest-deadline greedy for unit jobs with releases/deadlines and no
/// precedence, on identical machines. Stops once k jobs are placed; absent
/// when the greedy cannot reach k by the horizon max(rho) + k.
std::optional<Solved> greedy_edd_unit(const Instance& inst, int k);

struct MooreResult {
  std::vector<int> ontime;    // indices into the input list, EDD order
  std::vector<int> rejected;  // removed jobs, in removal order
};

/// Moore-Hodgson: EDD sequence; whenever a job runs late, drop the largest
/// processing time seen so far. Maximizes the number of on-time jobs.
MooreResult moore_max_ontime(const std::vector<std::pair<Time, Time>>& jobs);

/// Single machine, no precedence, at most one of releases/deadlines:
/// 1|| picks the k smallest jobs; 1|d_j| runs Moore under a binary-searched
/// universal deadline; 1|r_j| is solved by time reversal into 1|d_j|.
std::optional<Solved> solve_single_machine(const Instance& inst, int k);

}  // namespace polysolvers
}  // namespace parsched
