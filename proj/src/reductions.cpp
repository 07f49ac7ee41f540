#include "parsched/reductions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace parsched {
namespace reductions {

namespace {

void check_simple(const SourceGraph& g) {
  int n = static_cast<int>(g.vertices.size());
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) throw GenerationError("edge endpoint out of range");
    if (u == v) throw GenerationError("self-loops are not allowed");
    auto key = std::minmax(u, v);
    if (!seen.insert({key.first, key.second}).second)
      throw GenerationError("parallel edges are not allowed");
  }
}

std::string num(int x) { return std::to_string(x); }

Job unit_job(std::string id, Time deadline) {
  return Job{std::move(id), {1}, 0, deadline};
}

/// Distinct pattern edges as ordered (lo, hi) pairs over 1..s.
std::vector<std::pair<int, int>> pattern_edge_list(const SourceGraph& pattern) {
  check_simple(pattern);
  int s = static_cast<int>(pattern.vertices.size());
  std::set<std::pair<int, int>> dedup;
  for (auto [u, v] : pattern.edges) {
    int lo = std::min(u, v) + 1;
    int hi = std::max(u, v) + 1;
    if (lo < 1 || hi > s) throw GenerationError("pattern edge out of range");
    dedup.insert({lo, hi});
  }
  return {dedup.begin(), dedup.end()};
}

void check_chi(const SourceGraph& target, int s) {
  if (static_cast<int>(target.chi.size()) != static_cast<int>(target.vertices.size()))
    throw GenerationError("chi must color every target vertex");
  std::vector<char> hit(static_cast<std::size_t>(s + 1), 0);
  for (int c : target.chi) {
    if (c < 1 || c > s) throw GenerationError("chi value out of pattern range");
    hit[static_cast<std::size_t>(c)] = 1;
  }
  for (int i = 1; i <= s; ++i)
    if (!hit[static_cast<std::size_t>(i)]) throw GenerationError("chi must be onto the pattern vertices");
}

Time power3(int e) {
  Time p = 1;
  for (int i = 0; i < e; ++i) p *= 3;
  return p;
}

}  // namespace

Instance gen_3coloring(const SourceGraph& g) {
  check_simple(g);
  int nv = static_cast<int>(g.vertices.size());
  int ne = static_cast<int>(g.edges.size());
  Time horizon = 2 * static_cast<Time>(nv) + 2 * static_cast<Time>(ne);

  Instance inst;
  inst.machines = {MachineKind::Single, 1};
  inst.k = static_cast<int>(horizon);
  inst.cmax_bound = horizon;

  for (int i = 1; i <= nv; ++i) {
    for (int a = 1; a <= 3; ++a) {
      inst.jobs.push_back(unit_job("v" + num(i) + "^" + num(a), i));
      inst.jobs.push_back(unit_job("w" + num(i) + "^" + num(a), horizon + 1 - i));
      inst.prec.emplace_back("v" + num(i) + "^" + num(a), "w" + num(i) + "^" + num(a));
    }
  }
  for (int j = 1; j <= ne; ++j) {
    auto [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
    for (int a = 1; a <= 3; ++a)
      for (int b = 1; b <= 3; ++b) {
        if (a == b) continue;
        std::string ej = "e" + num(j) + "^" + num(a) + num(b);
        std::string fj = "f" + num(j) + "^" + num(a) + num(b);
        inst.jobs.push_back(unit_job(ej, nv + j));
        inst.jobs.push_back(unit_job(fj, nv + 2 * ne + 1 - j));
        inst.prec.emplace_back(ej, fj);
        inst.prec.emplace_back("v" + num(u + 1) + "^" + num(a), ej);
        inst.prec.emplace_back("v" + num(v + 1) + "^" + num(b), ej);
      }
  }
  return inst;
}

namespace {

void check_proper(const SourceGraph& g, const std::vector<int>& coloring) {
  if (coloring.size() != g.vertices.size()) throw GenerationError("coloring must cover every vertex");
  for (int c : coloring)
    if (c < 1 || c > 3) throw GenerationError("coloring value out of range 1..3");
  for (auto [u, v] : g.edges)
    if (coloring[static_cast<std::size_t>(u)] == coloring[static_cast<std::size_t>(v)])
      throw GenerationError("coloring is improper: edge endpoints share a color");
}

}  // namespace

Schedule certify_3coloring(const SourceGraph& g, const std::vector<int>& coloring) {
  check_simple(g);
  check_proper(g, coloring);
  int nv = static_cast<int>(g.vertices.size());
  int ne = static_cast<int>(g.edges.size());
  Time horizon = 2 * static_cast<Time>(nv) + 2 * static_cast<Time>(ne);

  // Every chosen job runs exactly at its deadline slot.
  Schedule sched;
  auto place = [&](const std::string& id, Time slot) { sched.entries.push_back({id, 0, slot - 1}); };
  for (int i = 1; i <= nv; ++i) {
    int a = coloring[static_cast<std::size_t>(i - 1)];
    place("v" + num(i) + "^" + num(a), i);
    place("w" + num(i) + "^" + num(a), horizon + 1 - i);
  }
  for (int j = 1; j <= ne; ++j) {
    auto [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
    int a = coloring[static_cast<std::size_t>(u)];
    int b = coloring[static_cast<std::size_t>(v)];
    place("e" + num(j) + "^" + num(a) + num(b), nv + j);
    place("f" + num(j) + "^" + num(a) + num(b), nv + 2 * ne + 1 - j);
  }
  return sched;
}

std::vector<int> decode_3coloring(const SourceGraph& g, const Schedule& sched) {
  check_simple(g);
  std::set<std::string> scheduled;
  for (const auto& e : sched.entries) scheduled.insert(e.job);

  int nv = static_cast<int>(g.vertices.size());
  std::vector<int> coloring(static_cast<std::size_t>(nv), 0);
  for (int i = 1; i <= nv; ++i) {
    int found = 0;
    for (int a = 1; a <= 3; ++a)
      if (scheduled.count("v" + num(i) + "^" + num(a))) {
        coloring[static_cast<std::size_t>(i - 1)] = a;
        ++found;
      }
    if (found != 1)
      throw StructuralError("decode: vertex " + num(i) + " has " + num(found) +
                            " color jobs scheduled, expected exactly one");
  }
  for (auto [u, v] : g.edges)
    if (coloring[static_cast<std::size_t>(u)] == coloring[static_cast<std::size_t>(v)])
      throw StructuralError("decode: induced coloring is improper");
  return coloring;
}

Instance gen_clique(const SourceGraph& g, int q) {
  check_simple(g);
  if (q < 1) throw GenerationError("clique size must be >= 1");
  Instance inst;
  inst.machines = {MachineKind::Single, 1};
  Time half = static_cast<Time>(q) * (q - 1) / 2;
  inst.k = q + static_cast<int>(half);
  inst.cmax_bound = 2 * static_cast<Time>(q) + half;

  for (int i = 1; i <= static_cast<int>(g.vertices.size()); ++i)
    inst.jobs.push_back(Job{"v" + num(i), {2}, 0, kNoDeadline});
  for (int j = 1; j <= static_cast<int>(g.edges.size()); ++j) {
    auto [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
    inst.jobs.push_back(Job{"e" + num(j), {1}, 0, kNoDeadline});
    inst.prec.emplace_back("v" + num(u + 1), "e" + num(j));
    inst.prec.emplace_back("v" + num(v + 1), "e" + num(j));
  }
  return inst;
}

Schedule certify_clique(const SourceGraph& g, const std::vector<int>& clique) {
  check_simple(g);
  std::set<int> members(clique.begin(), clique.end());
  if (members.size() != clique.size()) throw GenerationError("clique vertices must be distinct");
  for (int v : clique)
    if (v < 0 || v >= static_cast<int>(g.vertices.size()))
      throw GenerationError("clique vertex out of range");

  std::set<std::pair<int, int>> edge_set;
  for (auto [u, v] : g.edges) edge_set.insert(std::minmax(u, v));
  for (int u : members)
    for (int v : members)
      if (u < v && !edge_set.count({u, v}))
        throw GenerationError("vertices do not form a clique");

  Schedule sched;
  Time clock = 0;
  for (int v : members) {
    sched.entries.push_back({"v" + num(v + 1), 0, clock});
    clock += 2;
  }
  for (int j = 1; j <= static_cast<int>(g.edges.size()); ++j) {
    auto [u, v] = g.edges[static_cast<std::size_t>(j - 1)];
    if (members.count(u) && members.count(v)) {
      sched.entries.push_back({"e" + num(j), 0, clock});
      clock += 1;
    }
  }
  return sched;
}

namespace {

struct PsiShape {
  int s = 0;
  std::vector<std::pair<int, int>> pattern_edges;  // over 1..s
  std::vector<Time> t;                             // t[0..s], t[i] = sum of 3^{s+1-j}
  std::vector<int> edge_jobs;                      // 1-based target edge indices that qualify
};

PsiShape psi_shape(const SourceGraph& target, const SourceGraph& pattern) {
  PsiShape shape;
  shape.s = static_cast<int>(pattern.vertices.size());
  if (shape.s < 1) throw GenerationError("pattern must have at least one vertex");
  shape.pattern_edges = pattern_edge_list(pattern);
  check_simple(target);
  check_chi(target, shape.s);

  shape.t.assign(static_cast<std::size_t>(shape.s + 1), 0);
  for (int i = 1; i <= shape.s; ++i)
    shape.t[static_cast<std::size_t>(i)] = shape.t[static_cast<std::size_t>(i - 1)] + power3(shape.s + 1 - i);

  std::set<std::pair<int, int>> pat(shape.pattern_edges.begin(), shape.pattern_edges.end());
  for (int j = 1; j <= static_cast<int>(target.edges.size()); ++j) {
    auto [v, w] = target.edges[static_cast<std::size_t>(j - 1)];
    auto colors = std::minmax(target.chi[static_cast<std::size_t>(v)], target.chi[static_cast<std::size_t>(w)]);
    if (pat.count({colors.first, colors.second})) shape.edge_jobs.push_back(j);
  }
  return shape;
}

}  // namespace

Instance gen_psi(const SourceGraph& target, const SourceGraph& pattern) {
  PsiShape shape = psi_shape(target, pattern);
  Time num_edges = static_cast<Time>(shape.pattern_edges.size());

  Instance inst;
  inst.machines = {MachineKind::Single, 1};
  inst.k = shape.s + static_cast<int>(num_edges);
  inst.cmax_bound = shape.t[static_cast<std::size_t>(shape.s)] + num_edges;

  for (int v = 1; v <= static_cast<int>(target.vertices.size()); ++v) {
    int color = target.chi[static_cast<std::size_t>(v - 1)];
    inst.jobs.push_back(Job{"v" + num(v), {power3(shape.s + 1 - color)},
                            shape.t[static_cast<std::size_t>(color - 1)], kNoDeadline});
  }
  for (int j : shape.edge_jobs) {
    auto [v, w] = target.edges[static_cast<std::size_t>(j - 1)];
    inst.jobs.push_back(Job{"e" + num(j), {1}, shape.t[static_cast<std::size_t>(shape.s)], kNoDeadline});
    inst.prec.emplace_back("v" + num(v + 1), "e" + num(j));
    inst.prec.emplace_back("v" + num(w + 1), "e" + num(j));
  }
  return inst;
}

Instance gen_psi_2machine(const SourceGraph& target, const SourceGraph& pattern) {
  PsiShape shape = psi_shape(target, pattern);
  int s = shape.s;
  Time num_edges = static_cast<Time>(shape.pattern_edges.size());

  Instance inst;
  inst.machines = {MachineKind::Identical, 2};
  inst.k = 2 * s + 2 * static_cast<int>(num_edges);
  inst.cmax_bound = shape.t[static_cast<std::size_t>(s)] + num_edges;

  // Release-date machine: a mandatory chain whose completions reproduce the
  // stamps t_1 < t_2 < ... < t_s.
  for (int i = 1; i <= s; ++i) {
    inst.jobs.push_back(Job{"r" + num(i), {power3(s + 1 - i)}, 0, kNoDeadline});
    if (i > 1) inst.prec.emplace_back("r" + num(i - 1), "r" + num(i));
  }
  for (int v = 1; v <= static_cast<int>(target.vertices.size()); ++v) {
    int color = target.chi[static_cast<std::size_t>(v - 1)];
    inst.jobs.push_back(Job{"v" + num(v), {power3(s + 1 - color)}, 0, kNoDeadline});
    if (color > 1) inst.prec.emplace_back("r" + num(color - 1), "v" + num(v));
  }
  for (int j : shape.edge_jobs) {
    auto [v, w] = target.edges[static_cast<std::size_t>(j - 1)];
    inst.jobs.push_back(Job{"e" + num(j), {1}, 0, kNoDeadline});
    inst.prec.emplace_back("v" + num(v + 1), "e" + num(j));
    inst.prec.emplace_back("v" + num(w + 1), "e" + num(j));
    inst.prec.emplace_back("r" + num(s), "e" + num(j));
  }
  for (int j = 1; j <= static_cast<int>(num_edges); ++j) {
    inst.jobs.push_back(Job{"g" + num(j), {1}, 0, kNoDeadline});
    inst.prec.emplace_back("r" + num(s), "g" + num(j));
  }
  return inst;
}

namespace {

void check_phi(const SourceGraph& target, const PsiShape& shape, const std::vector<int>& phi) {
  if (static_cast<int>(phi.size()) != shape.s)
    throw GenerationError("phi must pick one target vertex per pattern vertex");
  for (int i = 1; i <= shape.s; ++i) {
    int v = phi[static_cast<std::size_t>(i - 1)];
    if (v < 0 || v >= static_cast<int>(target.vertices.size()))
      throw GenerationError("phi vertex out of range");
    if (target.chi[static_cast<std::size_t>(v)] != i)
      throw GenerationError("phi must respect the coloring");
  }
}

/// 1-based target edge index realizing the pattern edge {i, i'} under phi.
int phi_edge_index(const SourceGraph& target, const std::vector<int>& phi, int i, int ip) {
  auto want = std::minmax(phi[static_cast<std::size_t>(i - 1)], phi[static_cast<std::size_t>(ip - 1)]);
  for (int j = 1; j <= static_cast<int>(target.edges.size()); ++j) {
    auto got = std::minmax(target.edges[static_cast<std::size_t>(j - 1)].first,
                           target.edges[static_cast<std::size_t>(j - 1)].second);
    if (got == want) return j;
  }
  throw GenerationError("phi does not induce a colorful pattern copy: missing edge");
}

}  // namespace

Schedule certify_psi(const SourceGraph& target, const SourceGraph& pattern,
                     const std::vector<int>& phi) {
  PsiShape shape = psi_shape(target, pattern);
  check_phi(target, shape, phi);

  Schedule sched;
  for (int i = 1; i <= shape.s; ++i)
    sched.entries.push_back(
        {"v" + num(phi[static_cast<std::size_t>(i - 1)] + 1), 0, shape.t[static_cast<std::size_t>(i - 1)]});
  Time clock = shape.t[static_cast<std::size_t>(shape.s)];
  for (auto [i, ip] : shape.pattern_edges) {
    int j = phi_edge_index(target, phi, i, ip);
    sched.entries.push_back({"e" + num(j), 0, clock});
    clock += 1;
  }
  return sched;
}

Schedule certify_psi_2machine(const SourceGraph& target, const SourceGraph& pattern,
                              const std::vector<int>& phi) {
  PsiShape shape = psi_shape(target, pattern);
  check_phi(target, shape, phi);
  int s = shape.s;

  Schedule sched;
  for (int i = 1; i <= s; ++i)
    sched.entries.push_back({"r" + num(i), 0, shape.t[static_cast<std::size_t>(i - 1)]});
  Time clock = shape.t[static_cast<std::size_t>(s)];
  for (int j = 1; j <= static_cast<int>(shape.pattern_edges.size()); ++j) {
    sched.entries.push_back({"g" + num(j), 0, clock});
    clock += 1;
  }
  for (int i = 1; i <= s; ++i)
    sched.entries.push_back(
        {"v" + num(phi[static_cast<std::size_t>(i - 1)] + 1), 1, shape.t[static_cast<std::size_t>(i - 1)]});
  clock = shape.t[static_cast<std::size_t>(s)];
  for (auto [i, ip] : shape.pattern_edges) {
    int j = phi_edge_index(target, phi, i, ip);
    sched.entries.push_back({"e" + num(j), 1, clock});
    clock += 1;
  }
  return sched;
}

Instance gen_partition(const std::vector<Time>& values) {
  Time sum = 0;
  for (Time v : values) {
    if (v < 1) throw GenerationError("partition values must be positive");
    sum += v;
  }
  if (sum % 2 != 0) throw GenerationError("partition requires an even sum (use a target for padding)");

  Instance inst;
  inst.machines = {MachineKind::Identical, 2};
  inst.k = static_cast<int>(values.size());
  inst.cmax_bound = sum / 2;
  for (int i = 1; i <= static_cast<int>(values.size()); ++i)
    inst.jobs.push_back(Job{"j" + num(i), {values[static_cast<std::size_t>(i - 1)]}, 0, kNoDeadline});
  return inst;
}

Instance gen_partition_target(const std::vector<Time>& values, Time target) {
  Time sum = 0;
  for (Time v : values) {
    if (v < 1) throw GenerationError("partition values must be positive");
    sum += v;
  }
  if (target < 0 || target > sum) throw GenerationError("subset-sum target out of range");

  Time pad = sum - 2 * target;
  if (pad < 0) pad = -pad;
  std::vector<Time> padded = values;
  if (pad > 0) padded.push_back(pad);
  Instance inst = gen_partition(padded);
  if (pad > 0) inst.jobs.back().id = "pad";
  return inst;
}

Schedule certify_partition(const Instance& inst, const std::vector<int>& machine0) {
  std::set<int> side(machine0.begin(), machine0.end());
  Schedule sched;
  Time clock0 = 0, clock1 = 0;
  for (int j = 0; j < inst.job_count(); ++j) {
    Time p = inst.proc_on(j, 0);
    if (side.count(j)) {
      sched.entries.push_back({inst.jobs[static_cast<std::size_t>(j)].id, 0, clock0});
      clock0 += p;
    } else {
      sched.entries.push_back({inst.jobs[static_cast<std::size_t>(j)].id, 1, clock1});
      clock1 += p;
    }
  }
  return sched;
}

}  // namespace reductions
}  // namespace parsched
