#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "parsched/core.hpp"
#include "parsched/nodeset.hpp"

namespace parsched {

/// Canonical antichain: strictly increasing node indices. The sorted
/// sequence is the deduplication key everywhere.
struct Antichain {
  std::vector<int> nodes;

  bool operator==(const Antichain&) const = default;
  bool operator<(const Antichain& o) const { return nodes < o.nodes; }
  bool empty() const { return nodes.empty(); }
  int size() const { return static_cast<int>(nodes.size()); }
};

struct AntichainHash {
  std::size_t operator()(const Antichain& a) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (int x : a.nodes) h = h * 0x100000001b3ull ^ static_cast<std::size_t>(x);
    return h;
  }
};

/// Precedence order of an instance: reachability closure plus the internal
/// release slot rho_j = release_j + 1 (earliest completion slot for a unit
/// job), pushed through its longest-path closure so j < j' implies
/// rho_j < rho_j'.
class PrecedenceGraph {
 public:
  /// Throws DispatchError when the precedence edges contain a cycle.
  static PrecedenceGraph build(const Instance& inst);

  int size() const { return n_; }
  const JobId& id_of(int i) const { return ids_[static_cast<std::size_t>(i)]; }
  int index_of(const JobId& id) const;
  Time rho(int i) const { return rho_[static_cast<std::size_t>(i)]; }
  Time max_rho() const;

  const std::vector<std::vector<int>>& direct_successors() const { return adj_; }

  /// x <= y (path or equality).
  bool leq(int x, int y) const { return succ_[static_cast<std::size_t>(x)].test(y); }
  bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }

  /// Row of descendants of x (including x).
  const NodeSet& succ_row(int x) const { return succ_[static_cast<std::size_t>(x)]; }
  /// Row of ancestors of x (including x).
  const NodeSet& pred_row(int x) const { return pred_[static_cast<std::size_t>(x)]; }

  NodeSet full_set() const;
  /// Nodes with rho <= t, i.e. the vertex set of G^t.
  NodeSet time_mask(Time t) const;

  bool is_antichain(const std::vector<int>& nodes) const;

  NodeSet pred_set(const Antichain& a) const;
  NodeSet comp_set(const Antichain& a) const;

  /// Minimal/maximal elements of s under the order restricted to s
  /// (relations among surviving nodes are kept when others are deleted).
  NodeSet minimals(const NodeSet& s) const;
  NodeSet maximals(const NodeSet& s) const;
  Antichain maximals_antichain(const NodeSet& s) const;

  /// d^t(A) = |pred(A)| + |min(G^t - comp(A))|. A must lie inside G^t.
  int depth(Time t, const Antichain& a) const;
  int depth_in_mask(const NodeSet& mask, const Antichain& a) const;

  /// Induced restriction to jobs with rho <= t, re-indexed densely.
  /// Since rho is closure-monotone the restriction is downward closed, so
  /// induced reachability equals the restricted order.
  PrecedenceGraph restrict_to_time(Time t) const;

  /// All maximal antichains of depth <= k, canonical, sorted; at most 2^k.
  std::vector<Antichain> enumerate_max_antichains(int k) const;
  std::vector<Antichain> enumerate_max_antichains_in_mask(const NodeSet& mask, int k) const;

  /// All antichains of G^t with d^t <= k, canonical, sorted; at most 4^k.
  std::vector<Antichain> enumerate_antichains(Time t, int k) const;
  std::vector<Antichain> enumerate_antichains_in_mask(const NodeSet& mask, int k) const;

 private:
  int n_ = 0;
  std::vector<JobId> ids_;
  std::unordered_map<JobId, int> index_;
  std::vector<std::vector<int>> adj_;
  std::vector<NodeSet> succ_;  // succ_[x] = {y : x <= y}
  std::vector<NodeSet> pred_;  // pred_[x] = {y : y <= x}
  std::vector<Time> rho_;
};

}  // namespace parsched
