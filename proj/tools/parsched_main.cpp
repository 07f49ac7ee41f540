#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "parsched/antichain_dp.hpp"
#include "parsched/classifier.hpp"
#include "parsched/colorcode.hpp"
#include "parsched/json_io.hpp"
#include "parsched/oracle.hpp"
#include "parsched/polysolvers.hpp"
#include "parsched/poset.hpp"
#include "parsched/reductions.hpp"

using namespace parsched;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInvalid = 3;
constexpr int kExitBudget = 4;

struct CliError {
  int code;
  std::string message;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitInvalid, "cannot open " + path};
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw CliError{kExitInvalid, path + ": " + e.what()};
  }
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw CliError{kExitInvalid, "cannot write " + path};
  out << text << "\n";
}

Instance load_instance(const std::string& path) {
  Instance inst = json_io::instance_from_json(load_json(path));
  ValidationReport report = validate_instance(inst);
  if (!report.valid()) {
    std::string msg = path + ": invalid instance";
    for (const auto& e : report.errors) msg += "\n  " + e;
    throw CliError{kExitInvalid, msg};
  }
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
  return inst;
}

std::string dump(const json& j, bool pretty) { return pretty ? j.dump(2) : j.dump(); }

struct SolveArgs {
  std::string instance_path;
  std::string algorithm = "auto";
  std::string mode = "faithful";
  std::optional<Time> cmax;
  int trials = 0;
  std::uint64_t seed = 1;
  std::string emit_schedule;
  bool pretty = false;
};

int run_solve(const SolveArgs& args) {
  Instance inst = load_instance(args.instance_path);
  if (args.cmax) inst.cmax_bound = args.cmax;

  classifier::DispatchOptions opts;
  opts.lazy_dp = args.mode == "lazy";
  opts.trials = args.trials;
  opts.seed = args.seed;

  const classifier::TableRow& row = classifier::classify(classifier::extract_flags(inst));
  std::optional<std::pair<Time, Schedule>> solution;
  bool used_seed = false;

  if (args.algorithm == "auto") {
    classifier::DispatchResult result = classifier::dispatch(inst, opts);
    solution = std::move(result.solution);
    used_seed = result.used_seed;
  } else if (args.algorithm == "dp") {
    antichain_dp::Options dp{opts.lazy_dp ? antichain_dp::Mode::Lazy : antichain_dp::Mode::Faithful,
                             nullptr};
    solution = antichain_dp::minimize_makespan(inst, dp);
  } else if (args.algorithm == "colorcode") {
    colorcode::SolveOutcome out = colorcode::minimize_makespan(inst, {args.trials, args.seed});
    solution = std::move(out.solution);
    used_seed = !out.exact;
  } else if (args.algorithm == "greedy") {
    solution = inst.prec.empty() ? polysolvers::greedy_edd_unit(inst, inst.k)
                                 : polysolvers::greedy_prec_unit(inst, inst.k);
  } else if (args.algorithm == "moore") {
    solution = polysolvers::solve_single_machine(inst, inst.k);
  } else if (args.algorithm == "oracle") {
    if (auto best = oracle::brute_force(inst, inst.cmax_bound))
      solution = {best->makespan, std::move(best->schedule)};
  } else {
    throw CliError{kExitUsage, "unknown algorithm: " + args.algorithm};
  }

  if (inst.cmax_bound && solution && solution->first > *inst.cmax_bound) solution.reset();

  int jobs_done = 0;
  if (solution) {
    FeasibilityVerdict verdict = check_schedule(inst, solution->second);
    if (!verdict.feasible) throw CliError{kExitInvalid, "internal: solver produced an infeasible schedule"};
    jobs_done = verdict.jobs_done;
  }

  json out;
  out["feasible"] = solution.has_value();
  out["makespan"] = solution ? json(solution->first) : json(nullptr);
  out["jobs_done"] = jobs_done;
  out["algorithm"] = args.algorithm == "auto" ? classifier::to_string(row.algorithm) : args.algorithm;
  out["row"] = row.id;
  if (used_seed) out["seed"] = args.seed;
  std::cout << dump(out, args.pretty) << "\n";

  if (!args.emit_schedule.empty() && solution)
    write_text(args.emit_schedule, dump(json_io::schedule_to_json(inst, solution->second), args.pretty));
  return kExitOk;
}

int run_classify(const std::string& path, bool pretty) {
  Instance inst = load_instance(path);
  const classifier::TableRow& row = classifier::classify(classifier::extract_flags(inst));
  json out;
  out["row"] = row.id;
  out["problem"] = row.problem;
  out["class"] = classifier::to_string(row.complexity);
  out["algorithm"] = classifier::to_string(row.algorithm);
  out["bound_note"] = row.bound_note;
  out["runtime"] = row.runtime;
  std::cout << dump(out, pretty) << "\n";
  return kExitOk;
}

int run_generate(const std::string& kind, const std::string& graph_path, const std::string& out_path,
                 int clique_size, bool pretty) {
  json_io::GeneratorInput input = json_io::generator_input_from_json(load_json(graph_path));
  Instance inst;
  if (kind == "3col") {
    inst = reductions::gen_3coloring(input.graph);
  } else if (kind == "clique") {
    inst = reductions::gen_clique(input.graph, clique_size);
  } else if (kind == "psi" || kind == "psi2") {
    if (!input.pattern) throw CliError{kExitInvalid, "psi generation needs a \"pattern\" object"};
    inst = kind == "psi" ? reductions::gen_psi(input.graph, *input.pattern)
                         : reductions::gen_psi_2machine(input.graph, *input.pattern);
  } else if (kind == "partition") {
    if (!input.values) throw CliError{kExitInvalid, "partition generation needs a \"values\" list"};
    inst = input.target ? reductions::gen_partition_target(*input.values, *input.target)
                        : reductions::gen_partition(*input.values);
  } else {
    throw CliError{kExitUsage, "unknown generator kind: " + kind};
  }
  write_text(out_path, dump(json_io::instance_to_json(inst), pretty));
  return kExitOk;
}

int run_enumerate(const std::string& path, int k, std::optional<Time> t, bool pretty) {
  Instance inst = load_instance(path);
  PrecedenceGraph g = PrecedenceGraph::build(inst);
  Time at = t ? *t : g.max_rho();
  std::vector<Antichain> antichains = g.enumerate_antichains(at, k);
  json list = json::array();
  for (const Antichain& a : antichains) {
    json one = json::array();
    for (int x : a.nodes) one.push_back(g.id_of(x));
    list.push_back(std::move(one));
  }
  json out;
  out["t"] = at;
  out["k"] = k;
  out["count"] = antichains.size();
  out["antichains"] = std::move(list);
  std::cout << dump(out, pretty) << "\n";
  return kExitOk;
}

int run_bench(const std::string& corpus_dir, const std::string& out_csv, std::uint64_t seed) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::ostringstream csv;
  csv << "instance,algorithm,row,feasible,makespan,jobs_done,wall_ms,memo_entries,"
         "max_antichains,antichain_counts\n";
  for (const auto& file : files) {
    Instance inst = load_instance(file.string());
    classifier::DispatchOptions opts;
    opts.seed = seed;

    antichain_dp::Stats stats;
    const classifier::TableRow& row = classifier::classify(classifier::extract_flags(inst));
    auto start = std::chrono::steady_clock::now();
    std::optional<std::pair<Time, Schedule>> solution;
    if (row.algorithm == classifier::Algorithm::AntichainDp) {
      solution = antichain_dp::minimize_makespan(inst, {antichain_dp::Mode::Faithful, &stats});
    } else {
      solution = classifier::dispatch(inst, opts).solution;
    }
    auto wall =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start);

    double bound = std::pow(4.0, inst.k);
    int max_count = 0;
    std::ostringstream counts;
    for (std::size_t i = 0; i < stats.antichains_per_t.size(); ++i) {
      auto [t, count] = stats.antichains_per_t[i];
      if (static_cast<double>(count) > bound)
        throw CliError{kExitInvalid, "antichain count exceeded 4^k on " + file.string()};
      max_count = std::max(max_count, count);
      if (i) counts << ';';
      counts << t << ':' << count;
    }

    int jobs_done = solution ? check_schedule(inst, solution->second).jobs_done : 0;
    csv << file.filename().string() << ',' << classifier::to_string(row.algorithm) << ',' << row.id
        << ',' << (solution ? "true" : "false") << ','
        << (solution ? std::to_string(solution->first) : std::string("")) << ',' << jobs_done << ','
        << wall.count() / 1000.0 << ',' << stats.memo_entries << ',' << max_count << ','
        << '"' << counts.str() << '"' << '\n';
  }
  write_text(out_csv, csv.str());
  return kExitOk;
}

int run_selftest();

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-scheduling solver suite (schedule k of n jobs, minimize the makespan)"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("--instance", solve_args.instance_path, "Instance JSON file")->required();
  solve->add_option("--algorithm", solve_args.algorithm, "auto|dp|colorcode|greedy|moore|oracle");
  solve->add_option("--cmax", solve_args.cmax, "Decision bound on the makespan");
  solve->add_option("--trials", solve_args.trials, "Color-coding trial count (0 = default)");
  solve->add_option("--seed", solve_args.seed, "Seed for randomized paths");
  solve->add_option("--mode", solve_args.mode, "Antichain DP evaluation: faithful|lazy");
  solve->add_option("--emit-schedule", solve_args.emit_schedule, "Write the schedule JSON here");
  solve->add_flag("--pretty", solve_args.pretty, "Indent JSON output");

  std::string classify_path;
  bool classify_pretty = false;
  CLI::App* classify = app.add_subcommand("classify", "Map an instance to its table row");
  classify->add_option("--instance", classify_path, "Instance JSON file")->required();
  classify->add_flag("--pretty", classify_pretty, "Indent JSON output");

  std::string gen_kind, gen_graph, gen_out = "-";
  int gen_clique_size = 3;
  bool gen_pretty = false;
  CLI::App* generate = app.add_subcommand("generate", "Build an instance from a reduction");
  generate->add_option("kind", gen_kind, "3col|clique|psi|psi2|partition")->required();
  generate->add_option("--graph", gen_graph, "Source graph JSON file")->required();
  generate->add_option("-o,--out", gen_out, "Output instance file (- for stdout)");
  generate->add_option("--clique-size", gen_clique_size, "Clique size for the clique reduction");
  generate->add_flag("--pretty", gen_pretty, "Indent JSON output");

  std::string enum_path;
  int enum_k = 0;
  std::optional<Time> enum_t;
  bool enum_pretty = false;
  CLI::App* enumerate = app.add_subcommand("enumerate-antichains", "List antichains of depth <= k");
  enumerate->add_option("--instance", enum_path, "Instance JSON file")->required();
  enumerate->add_option("--k", enum_k, "Depth bound")->required();
  enumerate->add_option("--t", enum_t, "Time restriction (default: whole graph)");
  enumerate->add_flag("--pretty", enum_pretty, "Indent JSON output");

  std::string bench_corpus, bench_out;
  std::uint64_t bench_seed = 1;
  CLI::App* bench = app.add_subcommand("bench", "Solve a corpus directory and write a CSV");
  bench->add_option("--corpus", bench_corpus, "Directory of instance JSON files")->required();
  bench->add_option("--out", bench_out, "Output CSV path")->required();
  bench->add_option("--seed", bench_seed, "Seed for randomized paths");

  app.add_subcommand("selftest", "Run the built-in cross-solver agreement suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve->parsed()) return run_solve(solve_args);
    if (classify->parsed()) return run_classify(classify_path, classify_pretty);
    if (generate->parsed())
      return run_generate(gen_kind, gen_graph, gen_out, gen_clique_size, gen_pretty);
    if (enumerate->parsed()) return run_enumerate(enum_path, enum_k, enum_t, enum_pretty);
    if (bench->parsed()) return run_bench(bench_corpus, bench_out, bench_seed);
    return run_selftest();
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const json_io::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

namespace {

int run_selftest() {
  int failures = 0;
  auto report = [&](const std::string& name, bool pass) {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!pass) ++failures;
  };

  // Fixture: the perfect 3-ary tree from the depth example.
  {
    Instance tree;
    tree.machines = {MachineKind::Identical, 1};
    tree.k = 2;
    tree.jobs.push_back(Job{"r", {1}, 0, kNoDeadline});
    for (int c = 0; c < 3; ++c) {
      std::string child = "c" + std::to_string(c);
      tree.jobs.push_back(Job{child, {1}, 0, kNoDeadline});
      tree.prec.emplace_back("r", child);
      for (int gg = 0; gg < 3; ++gg) {
        std::string grand = child + "g" + std::to_string(gg);
        tree.jobs.push_back(Job{grand, {1}, 0, kNoDeadline});
        tree.prec.emplace_back(child, grand);
      }
    }
    PrecedenceGraph g = PrecedenceGraph::build(tree);
    Antichain child{{g.index_of("c0")}};
    Antichain root{{g.index_of("r")}};
    bool ok = g.depth(g.max_rho(), child) == 4 && g.depth(g.max_rho(), Antichain{}) == 1 &&
              g.depth(g.max_rho(), root) == 1 && g.enumerate_antichains(g.max_rho(), 2).size() == 2;
    auto solved = antichain_dp::minimize_makespan(tree);
    ok = ok && solved && solved->first == 2;
    report("tree fixture: depths, antichain set, optimal makespan", ok);
  }

  // Cross-solver agreement on a seeded mixed corpus.
  {
    std::mt19937_64 rng(2024);
    bool ok = true;
    int count = 0;
    for (int iter = 0; iter < 150 && ok; ++iter) {
      int env = static_cast<int>(rng() % 3);
      MachineKind kind =
          env == 0 ? MachineKind::Single : env == 1 ? MachineKind::Identical : MachineKind::Unrelated;
      bool unit = rng() % 2 == 0;
      if (unit && kind == MachineKind::Unrelated) kind = MachineKind::Identical;
      int machines = kind == MachineKind::Single ? 1 : 2;
      bool prec = rng() % 2 == 0;
      bool release = rng() % 2 == 0;
      bool deadline = rng() % 2 == 0;

      int n = 1 + static_cast<int>(rng() % 8);
      int k = 1 + static_cast<int>(rng() % std::min(n, 4));
      Instance inst;
      inst.machines = {kind, machines};
      inst.k = k;
      for (int i = 0; i < n; ++i) {
        Job job;
        job.id = "j" + std::to_string(i);
        int widths = kind == MachineKind::Unrelated ? machines : 1;
        for (int w = 0; w < widths; ++w)
          job.proc.push_back(unit ? 1 : 1 + static_cast<Time>(rng() % 6));
        if (release) job.release = static_cast<Time>(rng() % 7);
        if (deadline)
          job.deadline = std::max<Time>(1, job.release + job.proc[0] + static_cast<Time>(rng() % 7) - 1);
        inst.jobs.push_back(std::move(job));
      }
      if (prec)
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j)
            if (rng() % 4 == 0) inst.prec.emplace_back("j" + std::to_string(i), "j" + std::to_string(j));

      classifier::DispatchResult result = classifier::dispatch(inst);
      auto exact = oracle::brute_force(inst);
      bool agree = result.solution.has_value() == exact.has_value() &&
                   (!result.solution || result.solution->first == exact->makespan);
      bool certified =
          !result.solution || check_schedule(inst, result.solution->second).feasible;
      ok = ok && agree && certified;
      ++count;
    }
    report("dispatch equals the oracle on " + std::to_string(count) + " random instances", ok);
  }

  // Antichain DP: both evaluation modes agree.
  {
    std::mt19937_64 rng(77);
    bool ok = true;
    for (int iter = 0; iter < 60 && ok; ++iter) {
      int n = 1 + static_cast<int>(rng() % 8);
      Instance inst;
      inst.machines = {MachineKind::Identical, 1 + static_cast<int>(rng() % 3)};
      inst.k = 1 + static_cast<int>(rng() % std::min(n, 4));
      for (int i = 0; i < n; ++i)
        inst.jobs.push_back(Job{"j" + std::to_string(i), {1}, static_cast<Time>(rng() % 6), kNoDeadline});
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (rng() % 4 == 0) inst.prec.emplace_back("j" + std::to_string(i), "j" + std::to_string(j));
      auto faithful = antichain_dp::minimize_makespan(inst, {antichain_dp::Mode::Faithful, nullptr});
      auto lazy = antichain_dp::minimize_makespan(inst, {antichain_dp::Mode::Lazy, nullptr});
      ok = faithful.has_value() == lazy.has_value() &&
           (!faithful || faithful->first == lazy->first);
    }
    report("antichain DP: faithful and lazy modes agree", ok);
  }

  // Fast subset convolution against the naive reference.
  {
    std::mt19937_64 rng(99);
    bool ok = true;
    for (int iter = 0; iter < 300 && ok; ++iter) {
      int k = 1 + static_cast<int>(rng() % 8);
      std::size_t size = std::size_t{1} << k;
      std::vector<std::uint8_t> a(size), b(size);
      for (std::size_t i = 0; i < size; ++i) {
        a[i] = rng() % 3 == 0;
        b[i] = rng() % 3 == 0;
      }
      ok = colorcode::convolve_bool(a, b, k) == colorcode::convolve_bool_naive(a, b, k);
    }
    report("fast subset convolution equals the 3^k reference", ok);
  }

  std::cout << (failures == 0 ? "selftest: all checks passed\n"
                              : "selftest: " + std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? kExitOk : 1;
}

}  // namespace
