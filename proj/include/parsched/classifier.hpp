#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parsched/core.hpp"

namespace parsched {
namespace classifier {

enum class ComplexityClass { PolyTime, Fpt, W1Hard };

enum class Algorithm { GreedyPrec, GreedyEdd, Moore, SmallestP, AntichainDp, ColorCode, Oracle };

struct TableRow {
  int id = 0;                 // 1..40
  std::string problem;        // three-field name
  VariantFlags flags;
  ComplexityClass complexity = ComplexityClass::PolyTime;
  Algorithm algorithm = Algorithm::Oracle;
  std::string bound_note;     // ETH exclusion and reduction source, if any
  std::string runtime;        // upper-bound column
};

/// The forty realizable variants, in table order.
const std::vector<TableRow>& table();

/// Exact row lookup. Throws DispatchError for unrealizable flags
/// (unit processing times force identical machines).
const TableRow& classify(const VariantFlags& flags);

/// Flags read off the data: all-infinite deadlines mean no deadlines,
/// all-zero releases mean no releases, a unit processing matrix on
/// unrelated machines collapses to identical ones, one identical machine
/// normalizes to the single-machine environment.
VariantFlags extract_flags(const Instance& inst);

const char* to_string(ComplexityClass c);
const char* to_string(Algorithm a);

struct DispatchOptions {
  bool lazy_dp = false;                 // antichain DP evaluation mode
  int trials = 0;                       // 0: color-coding default
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;  // oracle step budget override
};

struct DispatchResult {
  const TableRow* row = nullptr;
  std::optional<std::pair<Time, Schedule>> solution;
  bool exact = true;       // false only on the randomized color-coding path
  bool used_seed = false;  // solution depended on the seed
};

/// Classifies the instance and runs the row's algorithm (W[1]-hard rows run
/// the oracle, matching the n^O(k) upper-bound column). When the instance
/// carries a cmax bound, the solution is dropped if its makespan exceeds it.
DispatchResult dispatch(const Instance& inst, const DispatchOptions& opts = {});

}  // namespace classifier
}  // namespace parsched
