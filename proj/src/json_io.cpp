#include "parsched/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace parsched {
namespace json_io {

using nlohmann::json;

namespace {

void expect_keys(const json& j, const std::string& where, const std::set<std::string>& required,
                 const std::set<std::string>& optional) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!required.count(key) && !optional.count(key))
      throw ParseError(where + ": unknown field \"" + key + "\"");
  }
  for (const std::string& key : required)
    if (!j.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
}

Time int_field(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<Time>();
}

}  // namespace

json instance_to_json(const Instance& inst) {
  json machines;
  switch (inst.machines.kind) {
    case MachineKind::Single: machines["kind"] = "single"; break;
    case MachineKind::Identical: machines["kind"] = "identical"; break;
    case MachineKind::Unrelated: machines["kind"] = "unrelated"; break;
  }
  machines["count"] = inst.machine_count();

  json jobs = json::array();
  for (const Job& job : inst.jobs) {
    json one;
    one["id"] = job.id;
    if (job.proc.size() == 1)
      one["p"] = job.proc[0];
    else
      one["p"] = job.proc;
    one["r"] = job.release;
    if (job.has_deadline())
      one["d"] = job.deadline;
    else
      one["d"] = nullptr;
    jobs.push_back(std::move(one));
  }

  json prec = json::array();
  for (const auto& [u, v] : inst.prec) prec.push_back(json::array({u, v}));

  json out;
  out["machines"] = std::move(machines);
  out["jobs"] = std::move(jobs);
  out["prec"] = std::move(prec);
  out["k"] = inst.k;
  if (inst.cmax_bound)
    out["cmax"] = *inst.cmax_bound;
  else
    out["cmax"] = nullptr;
  return out;
}

Instance instance_from_json(const json& j) {
  expect_keys(j, "instance", {"machines", "jobs", "k"}, {"prec", "cmax"});

  Instance inst;
  const json& machines = j.at("machines");
  expect_keys(machines, "machines", {"kind"}, {"count"});
  std::string kind = machines.at("kind").get<std::string>();
  if (kind == "single")
    inst.machines.kind = MachineKind::Single;
  else if (kind == "identical")
    inst.machines.kind = MachineKind::Identical;
  else if (kind == "unrelated")
    inst.machines.kind = MachineKind::Unrelated;
  else
    throw ParseError("machines.kind must be single, identical or unrelated");
  inst.machines.count =
      machines.contains("count") ? static_cast<int>(int_field(machines.at("count"), "machines.count")) : 1;

  if (!j.at("jobs").is_array()) throw ParseError("jobs: expected an array");
  for (const json& one : j.at("jobs")) {
    expect_keys(one, "job", {"id", "p"}, {"r", "d"});
    Job job;
    job.id = one.at("id").get<std::string>();
    const json& p = one.at("p");
    if (p.is_number_integer()) {
      job.proc = {p.get<Time>()};
    } else if (p.is_array()) {
      for (const json& x : p) job.proc.push_back(int_field(x, "job.p"));
      if (job.proc.empty()) throw ParseError("job.p: empty processing-time list");
    } else {
      throw ParseError("job.p: expected an integer or a list of integers");
    }
    if (one.contains("r")) job.release = int_field(one.at("r"), "job.r");
    if (one.contains("d") && !one.at("d").is_null()) job.deadline = int_field(one.at("d"), "job.d");
    inst.jobs.push_back(std::move(job));
  }

  if (j.contains("prec")) {
    if (!j.at("prec").is_array()) throw ParseError("prec: expected an array of pairs");
    for (const json& edge : j.at("prec")) {
      if (!edge.is_array() || edge.size() != 2) throw ParseError("prec: each edge is a [before, after] pair");
      inst.prec.emplace_back(edge[0].get<std::string>(), edge[1].get<std::string>());
    }
  }

  inst.k = static_cast<int>(int_field(j.at("k"), "k"));
  if (j.contains("cmax") && !j.at("cmax").is_null()) inst.cmax_bound = int_field(j.at("cmax"), "cmax");
  return inst;
}

json schedule_to_json(const Instance& inst, const Schedule& sched) {
  json entries = json::array();
  Time makespan = 0;
  for (const ScheduleEntry& e : sched.entries) {
    json one;
    one["job"] = e.job;
    one["machine"] = e.machine;
    one["start"] = e.start;
    entries.push_back(std::move(one));
    int idx = inst.index_of(e.job);
    if (idx >= 0) makespan = std::max(makespan, e.start + inst.proc_on(idx, e.machine));
  }
  json out;
  out["entries"] = std::move(entries);
  out["makespan"] = makespan;
  return out;
}

Schedule schedule_from_json(const json& j) {
  expect_keys(j, "schedule", {"entries"}, {"makespan"});
  Schedule sched;
  for (const json& one : j.at("entries")) {
    expect_keys(one, "entry", {"job", "machine", "start"}, {});
    sched.entries.push_back({one.at("job").get<std::string>(),
                             static_cast<int>(int_field(one.at("machine"), "entry.machine")),
                             int_field(one.at("start"), "entry.start")});
  }
  return sched;
}

GeneratorInput generator_input_from_json(const json& j) {
  expect_keys(j, "graph", {}, {"vertices", "edges", "chi", "pattern", "values", "target"});
  GeneratorInput input;

  auto parse_graph = [](const json& g, const std::string& where) {
    expect_keys(g, where, {"vertices"}, {"edges", "chi"});
    reductions::SourceGraph graph;
    std::map<std::string, int> index;
    for (const json& v : g.at("vertices")) {
      std::string name = v.get<std::string>();
      if (index.count(name)) throw ParseError(where + ": duplicate vertex \"" + name + "\"");
      index[name] = static_cast<int>(graph.vertices.size());
      graph.vertices.push_back(name);
    }
    if (g.contains("edges"))
      for (const json& e : g.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw ParseError(where + ": each edge is a [u, v] pair");
        auto u = index.find(e[0].get<std::string>());
        auto v = index.find(e[1].get<std::string>());
        if (u == index.end() || v == index.end()) throw ParseError(where + ": edge references unknown vertex");
        graph.edges.emplace_back(u->second, v->second);
      }
    if (g.contains("chi")) {
      graph.chi.assign(graph.vertices.size(), 0);
      for (const auto& [name, color] : g.at("chi").items()) {
        auto v = index.find(name);
        if (v == index.end()) throw ParseError(where + ": chi references unknown vertex \"" + name + "\"");
        graph.chi[static_cast<std::size_t>(v->second)] = static_cast<int>(int_field(color, where + ".chi"));
      }
    }
    return graph;
  };

  if (j.contains("vertices")) {
    json g;
    g["vertices"] = j.at("vertices");
    if (j.contains("edges")) g["edges"] = j.at("edges");
    if (j.contains("chi")) g["chi"] = j.at("chi");
    input.graph = parse_graph(g, "graph");
  }
  if (j.contains("pattern")) input.pattern = parse_graph(j.at("pattern"), "pattern");
  if (j.contains("values")) {
    input.values.emplace();
    for (const json& v : j.at("values")) input.values->push_back(int_field(v, "values"));
  }
  if (j.contains("target")) input.target = int_field(j.at("target"), "target");
  return input;
}

}  // namespace json_io
}  // namespace parsched
