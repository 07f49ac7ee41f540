#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "parsched/colorcode.hpp"
#include "parsched/oracle.hpp"
#include "support/builders.hpp"

using namespace parsched;
using namespace testsupport;
namespace cc = parsched::colorcode;

namespace {

/// Exhaustive reference for B_i(X): one job per color of X, all orders.
Time brute_machine_best(const Instance& inst, int machine, const cc::ColorAssignment& c,
                        std::uint32_t mask) {
  std::vector<int> colors;
  for (int l = 0; l < c.k; ++l)
    if (mask & (1u << l)) colors.push_back(l + 1);
  std::vector<int> order(colors.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end());

  Time best = cc::kInfeasible;
  std::vector<int> choice(colors.size(), 0);
  auto jobs_of = [&](int color) {
    std::vector<int> out;
    for (int j = 0; j < inst.job_count(); ++j)
      if (c.color[static_cast<std::size_t>(j)] == color) out.push_back(j);
    return out;
  };
  std::vector<std::vector<int>> pools;
  for (int color : colors) pools.push_back(jobs_of(color));
  for (const auto& pool : pools)
    if (pool.empty()) return cc::kInfeasible;

  // Odometer over job choices, then all permutations of the chosen set.
  while (true) {
    std::vector<int> chosen;
    for (std::size_t i = 0; i < pools.size(); ++i) chosen.push_back(pools[i][static_cast<std::size_t>(choice[i])]);
    std::sort(chosen.begin(), chosen.end());
    do {
      Time clock = 0;
      bool ok = true;
      for (int j : chosen) {
        const Job& job = inst.jobs[static_cast<std::size_t>(j)];
        Time completion = std::max(job.release, clock) + inst.proc_on(j, machine);
        if (job.has_deadline() && completion > job.deadline) {
          ok = false;
          break;
        }
        clock = completion;
      }
      if (ok) best = std::min(best, clock);
    } while (std::next_permutation(chosen.begin(), chosen.end()));

    std::size_t pos = 0;
    while (pos < pools.size() && choice[pos] + 1 == static_cast<int>(pools[pos].size())) {
      choice[pos] = 0;
      ++pos;
    }
    if (pos == pools.size()) break;
    ++choice[pos];
  }
  return best;
}

}  // namespace

TEST_CASE("random_coloring: determinism, range, degenerate sizes") {
  CHECK(cc::random_coloring(0, 3, 7).color.empty());
  cc::ColorAssignment ones = cc::random_coloring(5, 1, 7);
  CHECK(std::all_of(ones.color.begin(), ones.color.end(), [](int c) { return c == 1; }));
  cc::ColorAssignment a = cc::random_coloring(5, 3, 1234);
  cc::ColorAssignment b = cc::random_coloring(5, 3, 1234);
  CHECK(a.color == b.color);
  cc::ColorAssignment d = cc::random_coloring(5, 3, 1235);
  CHECK(a.color != d.color);  // overwhelmingly likely and fixed by the seed
  for (int col : a.color) {
    CHECK(col >= 1);
    CHECK(col <= 3);
  }
}

TEST_CASE("machine_dp: worked examples") {
  Instance one = make_instance(MachineKind::Single, 1, 1, {pj("a", 3, 2)});
  cc::ColorAssignment c1;
  c1.k = 1;
  c1.color = {1};
  cc::SubsetTable table = cc::machine_dp(one, 0, c1);
  CHECK(table.best[0] == 0);
  CHECK(table.best[1] == 5);

  Instance two = make_instance(MachineKind::Single, 1, 2, {uj("a"), uj("b")});
  cc::ColorAssignment c2;
  c2.k = 2;
  c2.color = {1, 2};
  cc::SubsetTable t2 = cc::machine_dp(two, 0, c2);
  CHECK(t2.best[3] == 2);

  // Missing color leaves the joint set infeasible.
  cc::ColorAssignment c3;
  c3.k = 2;
  c3.color = {1, 1};
  CHECK(cc::machine_dp(two, 0, c3).best[3] == cc::kInfeasible);
}

TEST_CASE("machine_dp equals the exhaustive per-color reference") {
  std::mt19937_64 rng(67);
  for (int iter = 0; iter < 120; ++iter) {
    CorpusFlags flags;
    flags.env = iter % 2 == 0 ? MachineKind::Single : MachineKind::Unrelated;
    flags.machines = flags.env == MachineKind::Single ? 1 : 2;
    flags.unit = false;
    flags.release = rng() % 2 == 0;
    flags.deadline = rng() % 2 == 0;
    Instance inst = random_instance(rng, flags, 8, 4);
    int k = 1 + static_cast<int>(rng() % 4);
    cc::ColorAssignment c = cc::random_coloring(inst.job_count(), k, rng());
    for (int machine = 0; machine < inst.machine_count(); ++machine) {
      cc::SubsetTable table = cc::machine_dp(inst, machine, c);
      for (std::uint32_t mask = 0; mask < (1u << k); ++mask)
        REQUIRE(table.best[mask] == brute_machine_best(inst, machine, c, mask));
    }
  }
}

TEST_CASE("threshold_table: inclusive boundary and infeasible entries") {
  cc::SubsetTable table;
  table.best = {0, 5, cc::kInfeasible, 7};
  auto a = cc::threshold_table(table, 5);
  CHECK(a == std::vector<std::uint8_t>{1, 1, 0, 0});
  table.best = {0, 0, 0, 0};
  CHECK(cc::threshold_table(table, 0) == std::vector<std::uint8_t>{1, 1, 1, 1});
}

TEST_CASE("subset_convolution_cover: worked examples") {
  // Single table: positive iff the full set is marked.
  std::vector<std::uint8_t> full{1, 0, 0, 1};
  auto parts = cc::subset_convolution_cover({full}, 2);
  REQUIRE(parts);
  CHECK((*parts)[0] == 3);

  // Two machines, each covering one color.
  std::vector<std::uint8_t> a{1, 1, 0, 0};
  std::vector<std::uint8_t> b{1, 0, 1, 0};
  parts = cc::subset_convolution_cover({a, b}, 2);
  REQUIRE(parts);
  CHECK((*parts)[0] == 1);
  CHECK((*parts)[1] == 2);

  // Nothing beyond the empty set.
  std::vector<std::uint8_t> empty_only{1, 0, 0, 0};
  CHECK_FALSE(cc::subset_convolution_cover({empty_only, empty_only}, 2));

  std::vector<std::uint8_t> wrong_size{1, 0};
  CHECK_THROWS_AS(cc::subset_convolution_cover({full, wrong_size}, 2), StructuralError);
}

TEST_CASE("fast subset convolution equals the naive reference") {
  std::mt19937_64 rng(71);
  for (int iter = 0; iter < 300; ++iter) {
    int k = 1 + static_cast<int>(rng() % 8);
    std::size_t size = std::size_t{1} << k;
    std::vector<std::uint8_t> a(size), b(size);
    for (std::size_t i = 0; i < size; ++i) {
      a[i] = rng() % 3 == 0;
      b[i] = rng() % 3 == 0;
    }
    CHECK(cc::convolve_bool(a, b, k) == cc::convolve_bool_naive(a, b, k));
  }
}

TEST_CASE("cover decision agrees between fast and naive modes") {
  std::mt19937_64 rng(73);
  for (int iter = 0; iter < 150; ++iter) {
    int k = 1 + static_cast<int>(rng() % 6);
    int m = 1 + static_cast<int>(rng() % 3);
    std::size_t size = std::size_t{1} << k;
    std::vector<std::vector<std::uint8_t>> tables;
    for (int i = 0; i < m; ++i) {
      std::vector<std::uint8_t> t(size);
      for (std::size_t x = 0; x < size; ++x) t[x] = rng() % 4 == 0;
      t[0] = 1;
      tables.push_back(std::move(t));
    }
    auto fast = cc::subset_convolution_cover(tables, k, false);
    auto naive = cc::subset_convolution_cover(tables, k, true);
    REQUIRE(fast.has_value() == naive.has_value());
    if (fast) {
      // Witnesses must each be a valid partition into marked sets.
      for (auto parts : {*fast, *naive}) {
        std::uint32_t seen = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
          CHECK((seen & parts[i]) == 0);
          CHECK(tables[i][parts[i]] == 1);
          seen |= parts[i];
        }
        CHECK(seen == (1u << k) - 1);
      }
    }
  }
}

TEST_CASE("colorful_decide: worked examples") {
  std::vector<Job> jobs;
  for (int i = 0; i < 3; ++i) jobs.push_back(uj("j" + std::to_string(i)));
  Instance inst = make_instance(MachineKind::Single, 1, 3, std::move(jobs));
  cc::ColorAssignment rainbow;
  rainbow.k = 3;
  rainbow.color = {1, 2, 3};
  auto sched = cc::colorful_decide(inst, 3, 3, rainbow);
  REQUIRE(sched);
  FeasibilityVerdict verdict = check_schedule(inst, *sched);
  CHECK(verdict.feasible);
  CHECK(verdict.jobs_done == 3);
  CHECK(verdict.makespan <= 3);

  Instance two = make_instance(MachineKind::Single, 1, 2, {uj("a"), uj("b")});
  cc::ColorAssignment mono;
  mono.k = 2;
  mono.color = {1, 1};
  CHECK_FALSE(cc::colorful_decide(two, 2, 5, mono));

  Instance prec = make_instance(MachineKind::Single, 1, 2, {uj("a"), uj("b")}, {{"a", "b"}});
  CHECK_THROWS_AS(cc::colorful_decide(prec, 2, 5, mono), DispatchError);
}

TEST_CASE("colorful_decide: the witness uses each color exactly once") {
  std::mt19937_64 rng(101);
  int found = 0;
  for (int iter = 0; iter < 80; ++iter) {
    CorpusFlags flags;
    flags.env = iter % 2 == 0 ? MachineKind::Identical : MachineKind::Unrelated;
    flags.machines = 2;
    flags.unit = false;
    flags.release = true;
    flags.deadline = true;
    Instance inst = random_instance(rng, flags, 9, 4);
    int k = 1 + static_cast<int>(rng() % 4);
    if (k > inst.job_count()) continue;
    cc::ColorAssignment c = cc::random_coloring(inst.job_count(), k, rng());
    Time cmax = 4 + static_cast<Time>(rng() % 14);
    auto sched = cc::colorful_decide(inst, k, cmax, c);
    if (!sched) continue;
    ++found;
    FeasibilityVerdict verdict = check_schedule(inst, *sched);
    REQUIRE(verdict.feasible);
    REQUIRE(verdict.jobs_done == k);
    REQUIRE(verdict.makespan <= cmax);
    std::set<int> colors;
    for (const auto& e : sched->entries)
      colors.insert(c.color[static_cast<std::size_t>(inst.index_of(e.job))]);
    REQUIRE(static_cast<int>(colors.size()) == k);
  }
  CHECK(found > 10);
}

TEST_CASE("solve_colorcode: trials=1 with k=1 equals a single colorful_decide") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {pj("a", 4, 1), pj("b", 2, 0), pj("c", 3, 2)});
  auto one = cc::solve_colorcode(inst, 1, 2, 1, 12345);
  auto direct = cc::colorful_decide(inst, 1, 2, cc::random_coloring(3, 1, 12345));
  CHECK(one.has_value() == direct.has_value());
  CHECK(one.has_value());  // job b alone fits in cmax 2
}

TEST_CASE("solve_colorcode: certified one-sidedness on infeasible instances") {
  Instance inst = make_instance(MachineKind::Single, 1, 2, {pj("a", 2, 0, 2), pj("b", 2, 0, 2)});
  for (std::uint64_t seed = 1; seed <= 20; ++seed)
    CHECK_FALSE(cc::solve_colorcode(inst, 2, 4, 50, seed));
}

TEST_CASE("solve_colorcode: k == n identity path is exact both ways") {
  Instance yes = make_instance(MachineKind::Identical, 2, 2, {pj("a", 2), pj("b", 2)});
  auto sched = cc::solve_colorcode(yes, 2, 2, 1, 1);
  REQUIRE(sched);
  CHECK(check_schedule(yes, *sched).feasible);
  CHECK_FALSE(cc::solve_colorcode(yes, 2, 1, 1, 1));
}

TEST_CASE("solve_colorcode: feasible instance found with default trials") {
  std::vector<Job> jobs;
  for (int i = 0; i < 7; ++i) jobs.push_back(pj("j" + std::to_string(i), 1 + i % 3, i % 2, 12));
  Instance inst = make_instance(MachineKind::Identical, 2, 3, std::move(jobs));
  auto sched = cc::solve_colorcode(inst, 3, 6, cc::default_trials(3), 99);
  REQUIRE(sched);
  FeasibilityVerdict verdict = check_schedule(inst, *sched);
  CHECK(verdict.feasible);
  CHECK(verdict.jobs_done == 3);
}

TEST_CASE("minimize_makespan (deterministic path) matches the oracle") {
  std::mt19937_64 rng(79);
  for (int iter = 0; iter < 200; ++iter) {
    CorpusFlags flags;
    int env = static_cast<int>(rng() % 3);
    flags.env = env == 0 ? MachineKind::Single : env == 1 ? MachineKind::Identical : MachineKind::Unrelated;
    flags.machines = flags.env == MachineKind::Single ? 1 : 2;
    flags.unit = false;
    flags.prec = false;
    flags.release = rng() % 2 == 0;
    flags.deadline = rng() % 2 == 0;
    Instance inst = random_instance(rng, flags, 8, 4);

    cc::SolveOutcome outcome = cc::minimize_makespan(inst, {0, 7});
    REQUIRE(outcome.exact);
    auto exact = oracle::brute_force(inst);
    REQUIRE(outcome.solution.has_value() == exact.has_value());
    if (outcome.solution) {
      CHECK(outcome.solution->first == exact->makespan);
      FeasibilityVerdict verdict = check_schedule(inst, outcome.solution->second);
      CHECK(verdict.feasible);
      CHECK(verdict.jobs_done == inst.k);
      CHECK(verdict.makespan == outcome.solution->first);
    }
  }
}

TEST_CASE("minimize_makespan (randomized path) matches the oracle on a seeded instance") {
  // k^n is above the exhaustive gate, so this exercises the trial-driven
  // binary search; the seed pins the whole run.
  std::mt19937_64 rng(424242);
  Instance inst;
  inst.machines = {MachineKind::Unrelated, 2};
  inst.k = 5;
  for (int i = 0; i < 11; ++i) {
    Job j;
    j.id = "j" + std::to_string(i);
    j.proc = {1 + static_cast<Time>(rng() % 5), 1 + static_cast<Time>(rng() % 5)};
    j.release = static_cast<Time>(rng() % 5);
    if (rng() % 2) j.deadline = j.release + j.proc[0] + static_cast<Time>(rng() % 8);
    inst.jobs.push_back(std::move(j));
  }
  cc::SolveOutcome out = cc::minimize_makespan(inst, {0, 77});
  CHECK_FALSE(out.exact);
  auto exact = oracle::brute_force(inst);
  REQUIRE(out.solution.has_value() == exact.has_value());
  if (out.solution) {
    CHECK(out.solution->first == exact->makespan);
    CHECK(check_schedule(inst, out.solution->second).feasible);
  }
}

TEST_CASE("minimize_makespan handles k == n partition-style instances") {
  Instance inst = make_instance(MachineKind::Identical, 2, 4, {pj("a", 1), pj("b", 2), pj("c", 3), pj("d", 2)});
  cc::SolveOutcome outcome = cc::minimize_makespan(inst);
  REQUIRE(outcome.exact);
  REQUIRE(outcome.solution);
  CHECK(outcome.solution->first == 4);
}
