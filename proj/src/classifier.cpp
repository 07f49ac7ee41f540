#include "parsched/classifier.hpp"

#include <algorithm>

#include "parsched/antichain_dp.hpp"
#include "parsched/colorcode.hpp"
#include "parsched/oracle.hpp"
#include "parsched/polysolvers.hpp"

namespace parsched {
namespace classifier {

namespace {

std::string three_field(MachineKind env, bool prec, bool unit, bool r, bool d) {
  std::string alpha = env == MachineKind::Single ? "1" : env == MachineKind::Identical ? "P" : "R";
  std::string beta;
  auto add = [&](const std::string& s) {
    if (!beta.empty()) beta += ",";
    beta += s;
  };
  if (r) add("r_j");
  if (d) add("d_j");
  if (prec) add("prec");
  if (unit) add("p_j=1");
  return alpha + "|" + beta + "|k-sched,C_max";
}

const std::string kNote3Col = "ETH: no n^{o(k/log k)}; reduction from 3-Coloring";
const std::string kNoteBiclique =
    "ETH: no O*(2^{o(sqrt(k log k))}); from P|prec,p_j=1|C_max (Biclique barrier for n^{o(k)})";
const std::string kNoteClique = "ETH: no n^{o(sqrt k)}; reduction from k-Clique";
const std::string kNotePsi = "ETH: no n^{o(k/log k)}; reduction from Partitioned Subgraph Isomorphism";
const std::string kNoteSubsetSum = "ETH: no O*(2^{o(k)}); reduction from Subset Sum";

std::vector<TableRow> build_table() {
  std::vector<TableRow> rows;
  int id = 1;
  auto add = [&](MachineKind env, bool prec, bool unit, bool r, bool d, ComplexityClass cls,
                 Algorithm algo, const std::string& note, const std::string& runtime) {
    rows.push_back(TableRow{id++, three_field(env, prec, unit, r, d),
                            VariantFlags{env, r, d, prec, unit}, cls, algo, note, runtime});
  };
  using MK = MachineKind;
  using CC = ComplexityClass;
  using AL = Algorithm;

  // Precedence constraints, unit processing times (rows 1-8).
  add(MK::Single, true, true, false, false, CC::PolyTime, AL::GreedyPrec, "", "n^O(1)");
  add(MK::Single, true, true, true, false, CC::PolyTime, AL::GreedyPrec, "", "n^O(1)");
  add(MK::Single, true, true, false, true, CC::W1Hard, AL::Oracle, kNote3Col, "n^O(k)");
  add(MK::Single, true, true, true, true, CC::W1Hard, AL::Oracle, kNote3Col, "n^O(k)");
  add(MK::Identical, true, true, false, false, CC::Fpt, AL::AntichainDp, kNoteBiclique, "O*(2^O(k))");
  add(MK::Identical, true, true, true, false, CC::Fpt, AL::AntichainDp, kNoteBiclique, "O*(2^O(k))");
  add(MK::Identical, true, true, false, true, CC::W1Hard, AL::Oracle, kNote3Col, "n^O(k)");
  add(MK::Identical, true, true, true, true, CC::W1Hard, AL::Oracle, kNote3Col, "n^O(k)");

  // Precedence constraints, arbitrary processing times (rows 9-20).
  add(MK::Single, true, false, false, false, CC::W1Hard, AL::Oracle, kNoteClique, "n^O(k)");
  add(MK::Single, true, false, true, false, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Single, true, false, false, true, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Single, true, false, true, true, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Identical, true, false, false, false, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Identical, true, false, true, false, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Identical, true, false, false, true, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Identical, true, false, true, true, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Unrelated, true, false, false, false, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Unrelated, true, false, true, false, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Unrelated, true, false, false, true, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");
  add(MK::Unrelated, true, false, true, true, CC::W1Hard, AL::Oracle, kNotePsi, "n^O(k)");

  // No precedence constraints, unit processing times (rows 21-28).
  add(MK::Single, false, true, false, false, CC::PolyTime, AL::GreedyEdd, "", "n^O(1)");
  add(MK::Single, false, true, true, false, CC::PolyTime, AL::GreedyEdd, "", "n^O(1)");
  add(MK::Single, false, true, false, true, CC::PolyTime, AL::GreedyEdd, "", "n^O(1)");
  add(MK::Single, false, true, true, true, CC::PolyTime, AL::GreedyEdd, "", "n^O(1)");
  add(MK::Identical, false, true, false, false, CC::PolyTime, AL::GreedyEdd, "", "n^O(1)");
  add(MK::Identical, false, true, true, false, CC::PolyTime, AL::GreedyEdd, "", "n^O(1)");
  add(MK::Identical, false, true, false, true, CC::PolyTime, AL::GreedyEdd, "", "n^O(1)");
  add(MK::Identical, false, true, true, true, CC::PolyTime, AL::GreedyEdd, "", "n^O(1)");

  // No precedence constraints, arbitrary processing times (rows 29-40).
  add(MK::Single, false, false, false, false, CC::PolyTime, AL::SmallestP, "", "n^O(1)");
  add(MK::Single, false, false, true, false, CC::PolyTime, AL::Moore, "", "n^O(1)");
  add(MK::Single, false, false, false, true, CC::PolyTime, AL::Moore, "", "n^O(1)");
  add(MK::Single, false, false, true, true, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  add(MK::Identical, false, false, false, false, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  add(MK::Identical, false, false, true, false, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  add(MK::Identical, false, false, false, true, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  add(MK::Identical, false, false, true, true, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  add(MK::Unrelated, false, false, false, false, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  add(MK::Unrelated, false, false, true, false, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  add(MK::Unrelated, false, false, false, true, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  add(MK::Unrelated, false, false, true, true, CC::Fpt, AL::ColorCode, kNoteSubsetSum, "O*(2^O(k))");
  return rows;
}

}  // namespace

const std::vector<TableRow>& table() {
  static const std::vector<TableRow> rows = build_table();
  return rows;
}

const TableRow& classify(const VariantFlags& flags) {
  if (flags.unit_p && flags.env == MachineKind::Unrelated)
    throw DispatchError("unit processing times imply identical machines; no unrelated row exists");
  for (const TableRow& row : table())
    if (row.flags == flags) return row;
  throw DispatchError("variant flags match no table row");
}

VariantFlags extract_flags(const Instance& inst) {
  VariantFlags flags;
  flags.has_prec = !inst.prec.empty();
  flags.unit_p = !inst.jobs.empty();
  for (const Job& j : inst.jobs) {
    if (j.release > 0) flags.has_release = true;
    if (j.has_deadline()) flags.has_deadline = true;
    for (Time p : j.proc)
      if (p != 1) flags.unit_p = false;
  }
  flags.env = inst.machines.kind;
  if (flags.unit_p && flags.env == MachineKind::Unrelated) flags.env = MachineKind::Identical;
  if (flags.env == MachineKind::Identical && inst.machine_count() == 1) flags.env = MachineKind::Single;
  return flags;
}

const char* to_string(ComplexityClass c) {
  switch (c) {
    case ComplexityClass::PolyTime: return "P";
    case ComplexityClass::Fpt: return "FPT";
    case ComplexityClass::W1Hard: return "W[1]-hard";
  }
  return "?";
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::GreedyPrec: return "GreedyPrec";
    case Algorithm::GreedyEdd: return "GreedyEDD";
    case Algorithm::Moore: return "Moore";
    case Algorithm::SmallestP: return "SmallestP";
    case Algorithm::AntichainDp: return "AntichainDP";
    case Algorithm::ColorCode: return "ColorCode";
    case Algorithm::Oracle: return "Oracle";
  }
  return "?";
}

DispatchResult dispatch(const Instance& inst, const DispatchOptions& opts) {
  DispatchResult result;
  VariantFlags flags = extract_flags(inst);
  result.row = &classify(flags);

  std::optional<Time> bound = inst.cmax_bound;
  switch (result.row->algorithm) {
    case Algorithm::GreedyPrec:
      result.solution = polysolvers::greedy_prec_unit(inst, inst.k);
      break;
    case Algorithm::GreedyEdd:
      result.solution = polysolvers::greedy_edd_unit(inst, inst.k);
      break;
    case Algorithm::Moore:
    case Algorithm::SmallestP:
      result.solution = polysolvers::solve_single_machine(inst, inst.k);
      break;
    case Algorithm::AntichainDp: {
      antichain_dp::Options dp{opts.lazy_dp ? antichain_dp::Mode::Lazy : antichain_dp::Mode::Faithful,
                               nullptr};
      result.solution = antichain_dp::minimize_makespan(inst, dp);
      break;
    }
    case Algorithm::ColorCode: {
      colorcode::SolveOptions cc{opts.trials, opts.seed};
      colorcode::SolveOutcome out = colorcode::minimize_makespan(inst, cc);
      result.solution = std::move(out.solution);
      result.exact = out.exact;
      result.used_seed = !out.exact;
      break;
    }
    case Algorithm::Oracle: {
      std::uint64_t budget = opts.budget ? *opts.budget : oracle::default_budget();
      if (auto solved = oracle::brute_force(inst, bound, budget))
        result.solution = {solved->makespan, std::move(solved->schedule)};
      break;
    }
  }

  if (bound && result.solution && result.solution->first > *bound) result.solution.reset();
  return result;
}

}  // namespace classifier
}  // namespace parsched
