#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "parsched/core.hpp"

namespace parsched {
namespace colorcode {

/// Map job index -> color in 1..k, plus the seed that produced it.
struct ColorAssignment {
  int k = 0;
  std::vector<int> color;
  std::uint64_t seed = 0;
};

/// Uniform independent colors from a seeded deterministic generator.
ColorAssignment random_coloring(int n, int k, std::uint64_t seed);

/// Job i gets color i+1; exact when k == n (every job must be scheduled).
ColorAssignment identity_coloring(int n);

/// B_i(X): minimum makespan on one machine processing one job from each
/// color of X, honoring releases and deadlines; kInfeasible if impossible.
inline constexpr Time kInfeasible = kNoDeadline;

struct SubsetTable {
  int machine = 0;
  std::vector<Time> best;                   // 2^k entries
  std::vector<std::pair<int, int>> from;    // (last color, job) for reconstruction
};

/// All 2^k values of B_i via the last-color recurrence. Guarded at k <= 20.
SubsetTable machine_dp(const Instance& inst, int machine, const ColorAssignment& c);

/// A_i(X) = 1 iff B_i(X) <= cmax.
std::vector<std::uint8_t> threshold_table(const SubsetTable& table, Time cmax);

/// Boolean subset convolution of two tables via ranked zeta/Moebius
/// transforms (exact 64-bit counting, booleanized), and the 3^k reference.
std::vector<std::uint8_t> convolve_bool(const std::vector<std::uint8_t>& a,
                                        const std::vector<std::uint8_t>& b, int k);
std::vector<std::uint8_t> convolve_bool_naive(const std::vector<std::uint8_t>& a,
                                              const std::vector<std::uint8_t>& b, int k);

/// Decides (A_1 * ... * A_m)({1..k}) > 0 and recovers a witness partition of
/// the color set by peeling machines against suffix products.
std::optional<std::vector<std::uint32_t>> subset_convolution_cover(
    const std::vector<std::vector<std::uint8_t>>& tables, int k, bool naive = false);

/// One trial of Algorithm: per-machine tables, threshold, cover, and a
/// reconstructed schedule of exactly one job per color. No precedence.
std::optional<Schedule> colorful_decide(const Instance& inst, int k, Time cmax,
                                        const ColorAssignment& c);

/// ceil(e^k ln 4): trial count for failure probability <= 1/4 per feasible
/// instance (per-trial success is at least k!/k^k >= e^-k).
int default_trials(int k);

/// Randomized driver: first colorful witness over `trials` seeded colorings.
/// Presence is certified by the checker; absence is one-sided. When k == n a
/// single identity-coloring trial decides exactly.
std::optional<Schedule> solve_colorcode(const Instance& inst, int k, Time cmax, int trials,
                                        std::uint64_t seed);

struct SolveOptions {
  int trials = 0;  // 0: default_trials(k)
  std::uint64_t seed = 1;
};

struct SolveOutcome {
  std::optional<std::pair<Time, Schedule>> solution;
  bool exact = false;  // deterministic path (k == n or exhaustive colorings)
  std::uint64_t seed = 0;
};

/// Makespan minimization for dispatch. Deterministic and exact when k == n
/// or k^n is small enough to sweep every coloring; otherwise randomized
/// binary search over the makespan with one-sided error.
SolveOutcome minimize_makespan(const Instance& inst, const SolveOptions& opts = {});

}  // namespace colorcode
}  // namespace parsched
