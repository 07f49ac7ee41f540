#pragma once

#include <random>
#include <string>
#include <vector>

#include "parsched/core.hpp"
#include "parsched/poset.hpp"

namespace testsupport {

using namespace parsched;

inline Job uj(std::string id, Time r = 0, Time d = kNoDeadline) { return Job{std::move(id), {1}, r, d}; }

inline Job pj(std::string id, Time p, Time r = 0, Time d = kNoDeadline) {
  return Job{std::move(id), {p}, r, d};
}

inline Instance make_instance(MachineKind kind, int machines, int k, std::vector<Job> jobs,
                              std::vector<std::pair<std::string, std::string>> prec = {}) {
  Instance inst;
  inst.machines = {kind, machines};
  inst.jobs = std::move(jobs);
  inst.prec = std::move(prec);
  inst.k = k;
  return inst;
}

/// The perfect 3-ary depth-2 tree: root, three children, nine grandchildren,
/// unit jobs, all releases zero, one machine.
inline Instance figure2_tree(int machines = 1, int k = 2) {
  std::vector<Job> jobs;
  std::vector<std::pair<std::string, std::string>> prec;
  jobs.push_back(uj("r"));
  for (int c = 0; c < 3; ++c) {
    std::string child = "c" + std::to_string(c);
    jobs.push_back(uj(child));
    prec.emplace_back("r", child);
    for (int g = 0; g < 3; ++g) {
      std::string grand = child + "g" + std::to_string(g);
      jobs.push_back(uj(grand));
      prec.emplace_back(child, grand);
    }
  }
  return make_instance(MachineKind::Identical, machines, k, std::move(jobs), std::move(prec));
}

/// a < b, a < c, b < d, c < d; unit jobs, one machine.
inline Instance diamond(int machines = 1, int k = 4) {
  return make_instance(MachineKind::Identical, machines, k, {uj("a"), uj("b"), uj("c"), uj("d")},
                       {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}});
}

struct CorpusFlags {
  MachineKind env = MachineKind::Single;
  int machines = 1;
  bool unit = true;
  bool prec = false;
  bool release = false;
  bool deadline = false;
};

/// Seeded random instance within the oracle-checkable envelope.
inline Instance random_instance(std::mt19937_64& rng, const CorpusFlags& flags, int max_n = 9,
                                int max_k = 4) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  int n = pick(1, max_n);
  int k = pick(1, std::min(n, max_k));

  std::vector<Job> jobs;
  for (int i = 0; i < n; ++i) {
    Job job;
    job.id = "j" + std::to_string(i);
    int widths = flags.env == MachineKind::Unrelated ? flags.machines : 1;
    for (int w = 0; w < widths; ++w) job.proc.push_back(flags.unit ? 1 : pick(1, 6));
    if (flags.release) job.release = pick(0, 6);
    if (flags.deadline) {
      Time pmax = *std::max_element(job.proc.begin(), job.proc.end());
      job.deadline = job.release + pmax + pick(0, 6) - 1;  // occasionally unschedulable
      if (job.deadline < 1) job.deadline = 1;
    }
    jobs.push_back(std::move(job));
  }

  std::vector<std::pair<std::string, std::string>> prec;
  if (flags.prec) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng() % 4 == 0) prec.emplace_back("j" + std::to_string(i), "j" + std::to_string(j));
  }
  return make_instance(flags.env, flags.machines, k, std::move(jobs), std::move(prec));
}

/// All antichains of the mask by 2^n sweep, optionally only maximal ones,
/// filtered to depth <= k. Independent of the enumeration under test.
inline std::vector<Antichain> brute_force_antichains(const PrecedenceGraph& g, const NodeSet& mask,
                                                     int k, bool maximal_only) {
  std::vector<int> nodes = mask.to_vector();
  int n = static_cast<int>(nodes.size());
  std::vector<Antichain> out;
  for (std::uint32_t sub = 0; sub < (1u << n); ++sub) {
    Antichain a;
    for (int b = 0; b < n; ++b)
      if (sub & (1u << b)) a.nodes.push_back(nodes[static_cast<std::size_t>(b)]);
    if (!g.is_antichain(a.nodes)) continue;
    if (maximal_only) {
      NodeSet comp(g.size());
      for (int x : a.nodes) {
        comp |= g.pred_row(x);
        comp |= g.succ_row(x);
      }
      if (!mask.subset_of(comp)) continue;
    }
    if (g.depth_in_mask(mask, a) > k) continue;
    out.push_back(std::move(a));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Random DAG on n nodes for the antichain-bound tests.
inline Instance random_dag_instance(std::mt19937_64& rng, int n, double edge_prob, int max_release) {
  std::vector<Job> jobs;
  std::vector<std::pair<std::string, std::string>> prec;
  for (int i = 0; i < n; ++i) {
    Time r = max_release > 0 ? static_cast<Time>(rng() % static_cast<std::uint64_t>(max_release + 1)) : 0;
    jobs.push_back(uj("j" + std::to_string(i), r));
  }
  std::uint64_t threshold = static_cast<std::uint64_t>(edge_prob * 1024.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 1024 < threshold) prec.emplace_back("j" + std::to_string(i), "j" + std::to_string(j));
  return make_instance(MachineKind::Identical, 1, std::min(n, 1), std::move(jobs), std::move(prec));
}

}  // namespace testsupport
