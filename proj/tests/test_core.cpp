#include <doctest.h>

#include <random>
#include <set>

#include "parsched/core.hpp"
#include "parsched/oracle.hpp"
#include "support/builders.hpp"

using namespace parsched;
using namespace testsupport;

namespace {

bool mentions(const std::vector<std::string>& lines, const std::string& needle) {
  for (const auto& line : lines)
    if (line.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("validate: well-formed diamond is clean") {
  ValidationReport report = validate_instance(diamond());
  CHECK(report.valid());
  CHECK(report.warnings.empty());
}

TEST_CASE("validate: self-loop reports a cycle") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {uj("a")}, {{"a", "a"}});
  ValidationReport report = validate_instance(inst);
  CHECK_FALSE(report.valid());
  CHECK(mentions(report.errors, "cycle"));
}

TEST_CASE("validate: longer cycle reports a cycle") {
  Instance inst =
      make_instance(MachineKind::Single, 1, 1, {uj("a"), uj("b"), uj("c")}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
  CHECK(mentions(validate_instance(inst).errors, "cycle"));
}

TEST_CASE("validate: k larger than the job count") {
  Instance inst = make_instance(MachineKind::Single, 1, 5, {uj("a"), uj("b"), uj("c"), uj("d")});
  CHECK(mentions(validate_instance(inst).errors, "k exceeds job count"));
}

TEST_CASE("validate: unrelated machines need a full processing row") {
  Instance inst = make_instance(MachineKind::Unrelated, 2, 1, {pj("a", 3)});
  CHECK_FALSE(validate_instance(inst).valid());
  inst.jobs[0].proc = {3, 4};
  CHECK(validate_instance(inst).valid());
}

TEST_CASE("validate: unschedulable job is a warning, not an error") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {pj("a", 3, 2, 4)});
  ValidationReport report = validate_instance(inst);
  CHECK(report.valid());
  CHECK(mentions(report.warnings, "unschedulable"));
}

TEST_CASE("validate: undeclared edge endpoint and duplicate id") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {uj("a"), uj("a")}, {{"a", "zz"}});
  ValidationReport report = validate_instance(inst);
  CHECK(mentions(report.errors, "duplicate job id"));
  CHECK(mentions(report.errors, "unknown job"));
}

TEST_CASE("check_schedule: unit chain is feasible with makespan 2") {
  Instance inst = make_instance(MachineKind::Single, 1, 2, {uj("a"), uj("b")}, {{"a", "b"}});
  Schedule sched{{{"a", 0, 0}, {"b", 0, 1}}};
  FeasibilityVerdict verdict = check_schedule(inst, sched);
  CHECK(verdict.feasible);
  CHECK(verdict.jobs_done == 2);
  CHECK(verdict.makespan == 2);
}

TEST_CASE("check_schedule: successor without its predecessor") {
  Instance inst = make_instance(MachineKind::Single, 1, 2, {uj("a"), uj("b")}, {{"a", "b"}});
  Schedule sched{{{"b", 0, 1}}};
  FeasibilityVerdict verdict = check_schedule(inst, sched);
  CHECK_FALSE(verdict.feasible);
  CHECK(mentions(verdict.violations, "predecessor"));
}

TEST_CASE("check_schedule: release violated") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {uj("a", 5)});
  FeasibilityVerdict verdict = check_schedule(inst, Schedule{{{"a", 0, 4}}});
  CHECK_FALSE(verdict.feasible);
  CHECK(mentions(verdict.violations, "release"));
}

TEST_CASE("check_schedule: deadline, overlap and duplication") {
  Instance inst = make_instance(MachineKind::Single, 1, 2, {pj("a", 3, 0, 3), pj("b", 2)});
  CHECK_FALSE(check_schedule(inst, Schedule{{{"a", 0, 1}}}).feasible);
  CHECK_FALSE(check_schedule(inst, Schedule{{{"a", 0, 0}, {"b", 0, 2}}}).feasible);  // overlap at 2
  CHECK(check_schedule(inst, Schedule{{{"a", 0, 0}, {"b", 0, 3}}}).feasible);
  CHECK_FALSE(check_schedule(inst, Schedule{{{"b", 0, 0}, {"b", 0, 5}}}).feasible);
}

TEST_CASE("check_schedule: empty schedule has makespan 0") {
  FeasibilityVerdict verdict = check_schedule(diamond(), Schedule{});
  CHECK(verdict.feasible);
  CHECK(verdict.makespan == 0);
  CHECK(verdict.jobs_done == 0);
}

TEST_CASE("check_schedule: structural errors throw") {
  Instance inst = make_instance(MachineKind::Single, 1, 1, {uj("a")});
  CHECK_THROWS_AS(check_schedule(inst, Schedule{{{"zz", 0, 0}}}), StructuralError);
  CHECK_THROWS_AS(check_schedule(inst, Schedule{{{"a", 3, 0}}}), StructuralError);
}

TEST_CASE("check_schedule: removing a job without scheduled successors keeps feasibility") {
  // Monotonicity spot check on the diamond.
  Instance inst = diamond();
  Schedule full{{{"a", 0, 0}, {"b", 0, 1}, {"c", 0, 2}, {"d", 0, 3}}};
  REQUIRE(check_schedule(inst, full).feasible);
  Schedule without_d{{{"a", 0, 0}, {"b", 0, 1}, {"c", 0, 2}}};
  CHECK(check_schedule(inst, without_d).feasible);
}

TEST_CASE("check_schedule: monotone under suffix-closed entry removal") {
  std::mt19937_64 rng(131);
  for (int iter = 0; iter < 80; ++iter) {
    CorpusFlags flags;
    flags.env = iter % 2 == 0 ? MachineKind::Single : MachineKind::Identical;
    flags.machines = flags.env == MachineKind::Single ? 1 : 2;
    flags.unit = rng() % 2 == 0;
    flags.prec = true;
    flags.release = rng() % 2 == 0;
    flags.deadline = rng() % 2 == 0;
    Instance inst = random_instance(rng, flags, 8, 4);
    auto best = oracle::brute_force(inst);
    if (!best) continue;
    Schedule sched = best->schedule;
    REQUIRE(check_schedule(inst, sched).feasible);

    // Peel jobs whose successors are all unscheduled; feasibility must hold
    // after every removal.
    while (!sched.entries.empty()) {
      std::set<std::string> present;
      for (const auto& e : sched.entries) present.insert(e.job);
      std::size_t victim = sched.entries.size();
      for (std::size_t i = 0; i < sched.entries.size(); ++i) {
        bool has_scheduled_successor = false;
        for (const auto& [u, v] : inst.prec)
          if (u == sched.entries[i].job && present.count(v)) has_scheduled_successor = true;
        if (!has_scheduled_successor) {
          victim = i;
          break;
        }
      }
      REQUIRE(victim < sched.entries.size());  // a DAG always has a maximal scheduled job
      sched.entries.erase(sched.entries.begin() + static_cast<std::ptrdiff_t>(victim));
      REQUIRE(check_schedule(inst, sched).feasible);
    }
  }
}
