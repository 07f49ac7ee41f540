#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parsched/core.hpp"

namespace parsched {
namespace reductions {

/// Undirected source graph for the reductions; chi colors vertices with
/// pattern vertices 1..s when the reduction needs it.
struct SourceGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;  // indices into `vertices`
  std::vector<int> chi;                    // per vertex, 1..s; empty when unused
};

/// 3-Coloring -> 1|d_j,prec,p_j=1|k-sched,C_max. Six jobs per vertex, twelve
/// per edge, k = C_max = 2n' + 2m'; feasible iff the graph is 3-colorable.
Instance gen_3coloring(const SourceGraph& g);

/// Builds the at-deadline schedule induced by a proper coloring (colors
/// 1..3 per vertex). Throws GenerationError on an improper coloring.
Schedule certify_3coloring(const SourceGraph& g, const std::vector<int>& coloring);

/// Reads the vertex colors back out of a feasible k-job schedule; throws
/// StructuralError when the schedule does not carry the proof's structure
/// or the induced coloring is improper.
std::vector<int> decode_3coloring(const SourceGraph& g, const Schedule& sched);

/// k-Clique -> 1|prec|k-sched,C_max with vertex jobs of length 2 and edge
/// jobs of length 1; k' = q + q(q-1)/2, C_max = 2q + q(q-1)/2.
Instance gen_clique(const SourceGraph& g, int q);
Schedule certify_clique(const SourceGraph& g, const std::vector<int>& clique);

/// Partitioned Subgraph Isomorphism -> 1|r_j,prec|k-sched,C_max with
/// geometric processing times 3^{s+1-i} and release stamps t_i.
Instance gen_psi(const SourceGraph& target, const SourceGraph& pattern);

/// Two-machine variant: releases are simulated by a chain of mandatory
/// release-machine jobs plus unit fillers; 2|prec|k-sched,C_max.
Instance gen_psi_2machine(const SourceGraph& target, const SourceGraph& pattern);

/// phi[i] = target vertex (0-based) chosen for pattern vertex i+1.
Schedule certify_psi(const SourceGraph& target, const SourceGraph& pattern,
                     const std::vector<int>& phi);
Schedule certify_psi_2machine(const SourceGraph& target, const SourceGraph& pattern,
                              const std::vector<int>& phi);

/// Partition -> P2||k-sched,C_max with k = n and C_max = sum/2.
Instance gen_partition(const std::vector<Time>& values);

/// Subset Sum with an explicit target: one padding job of size
/// |sum - 2*target| turns it into the Partition form.
Instance gen_partition_target(const std::vector<Time>& values, Time target);

/// Machine-0 job indices (into inst.jobs); the rest go on machine 1.
Schedule certify_partition(const Instance& inst, const std::vector<int>& machine0);

}  // namespace reductions
}  // namespace parsched
