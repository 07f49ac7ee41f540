#include <doctest.h>

#include <map>
#include <random>

#include "parsched/oracle.hpp"
#include "support/builders.hpp"

using namespace parsched;
using namespace testsupport;
namespace orc = parsched::oracle;

TEST_CASE("greedy_realize: chain in order and out of order") {
  Instance inst = make_instance(MachineKind::Single, 1, 2, {uj("a"), uj("b")}, {{"a", "b"}});
  orc::SequenceAssignment ok{{{0, 1}}};
  auto realized = orc::greedy_realize(inst, ok);
  REQUIRE(realized);
  CHECK(realized->makespan == 2);
  CHECK(check_schedule(inst, realized->schedule).feasible);

  orc::SequenceAssignment reversed{{{1, 0}}};
  CHECK_FALSE(orc::greedy_realize(inst, reversed));
}

TEST_CASE("greedy_realize: release date pushes the start") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {pj("a", 3, 5)});
  auto realized = orc::greedy_realize(inst, orc::SequenceAssignment{{{0}}});
  REQUIRE(realized);
  CHECK(realized->makespan == 8);
}

TEST_CASE("greedy_realize: unassigned predecessor voids the assignment") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {uj("a"), uj("b")}, {{"a", "b"}});
  CHECK_FALSE(orc::greedy_realize(inst, orc::SequenceAssignment{{{1}}}));
}

TEST_CASE("greedy_realize: cross-machine precedence is honored") {
  Instance inst = make_instance(MachineKind::Identical, 2, 3, {pj("x", 5), uj("u"), uj("v")},
                                {{"u", "v"}});
  // v alone on machine 1, its predecessor second on machine 0.
  auto realized = orc::greedy_realize(inst, orc::SequenceAssignment{{{0, 1}, {2}}});
  REQUIRE(realized);
  CHECK(check_schedule(inst, realized->schedule).feasible);
  CHECK(realized->makespan == 7);  // x [0,5), u [5,6), v [6,7)
}

TEST_CASE("brute_force: k=1 takes the earliest feasible completion") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {pj("a", 4, 0), pj("b", 2, 1), pj("c", 9, 0)});
  auto best = orc::brute_force(inst);
  REQUIRE(best);
  CHECK(best->makespan == 3);
}

TEST_CASE("brute_force: impossible deadlines give absent") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {pj("a", 2, 0, 1)});
  CHECK_FALSE(orc::brute_force(inst));
}

TEST_CASE("brute_force: figure-2 tree optimum is 2") {
  auto best = orc::brute_force(figure2_tree());
  REQUIRE(best);
  CHECK(best->makespan == 2);
  FeasibilityVerdict verdict = check_schedule(figure2_tree(), best->schedule);
  CHECK(verdict.feasible);
  CHECK(verdict.jobs_done == 2);
}

TEST_CASE("brute_force: diamond needs all four slots") {
  auto best = orc::brute_force(diamond());
  REQUIRE(best);
  CHECK(best->makespan == 4);
}

TEST_CASE("brute_force: parallel identical machines halve a flat workload") {
  std::vector<Job> jobs;
  for (int i = 0; i < 4; ++i) jobs.push_back(pj("j" + std::to_string(i), 3));
  Instance inst = make_instance(MachineKind::Identical, 2, 4, std::move(jobs));
  auto best = orc::brute_force(inst);
  REQUIRE(best);
  CHECK(best->makespan == 6);
}

TEST_CASE("brute_force: unrelated machines pick the cheap rows") {
  Instance inst = make_instance(MachineKind::Unrelated, 2, 2,
                                {Job{"a", {10, 1}, 0, kNoDeadline}, Job{"b", {1, 10}, 0, kNoDeadline}});
  auto best = orc::brute_force(inst);
  REQUIRE(best);
  CHECK(best->makespan == 1);
}

TEST_CASE("brute_force: budget exhaustion throws instead of lying") {
  std::vector<Job> jobs;
  for (int i = 0; i < 8; ++i) jobs.push_back(uj("j" + std::to_string(i)));
  Instance inst = make_instance(MachineKind::Identical, 2, 4, std::move(jobs));
  CHECK_THROWS_AS(orc::brute_force(inst, {}, 10), BudgetError);
}

TEST_CASE("brute_force: cmax prunes to a decision") {
  Instance inst = diamond();
  CHECK_FALSE(orc::brute_force(inst, Time{3}));
  auto best = orc::brute_force(inst, Time{4});
  REQUIRE(best);
  CHECK(best->makespan == 4);
}

TEST_CASE("realization is normalization-complete on random feasible schedules") {
  std::mt19937_64 rng(23);
  int tried = 0;
  for (int iter = 0; iter < 200; ++iter) {
    CorpusFlags flags;
    int env = static_cast<int>(rng() % 3);
    flags.env = env == 0 ? MachineKind::Single : env == 1 ? MachineKind::Identical : MachineKind::Unrelated;
    flags.machines = flags.env == MachineKind::Single ? 1 : 2;
    flags.unit = rng() % 2 == 0;
    if (flags.unit && flags.env == MachineKind::Unrelated) flags.env = MachineKind::Identical;
    flags.prec = rng() % 2 == 0;
    flags.release = rng() % 2 == 0;
    flags.deadline = rng() % 2 == 0;
    Instance inst = random_instance(rng, flags, 7, 3);
    auto best = orc::brute_force(inst);
    if (!best) continue;
    ++tried;

    // Delaying a deadline-free schedule keeps it feasible; its extracted
    // assignment must re-realize at least as tightly.
    Schedule delayed = best->schedule;
    if (!flags.deadline)
      for (auto& e : delayed.entries) e.start += 3;
    REQUIRE(check_schedule(inst, delayed).feasible);

    std::map<int, std::vector<std::pair<Time, int>>> lanes;
    for (const auto& e : delayed.entries)
      lanes[e.machine].push_back({e.start, inst.index_of(e.job)});
    orc::SequenceAssignment assignment;
    assignment.seq.assign(static_cast<std::size_t>(inst.machine_count()), {});
    for (auto& [machine, lane] : lanes) {
      std::sort(lane.begin(), lane.end());
      for (auto& [start, job] : lane) assignment.seq[static_cast<std::size_t>(machine)].push_back(job);
    }
    auto realized = orc::greedy_realize(inst, assignment);
    REQUIRE(realized);
    Time delayed_makespan = check_schedule(inst, delayed).makespan;
    CHECK(realized->makespan <= delayed_makespan);
    CHECK(check_schedule(inst, realized->schedule).feasible);
  }
  CHECK(tried > 50);
}
