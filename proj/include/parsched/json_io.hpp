#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "parsched/core.hpp"
#include "parsched/reductions.hpp"

namespace parsched {
namespace json_io {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json schedule_to_json(const Instance& inst, const Schedule& sched);
Schedule schedule_from_json(const nlohmann::json& j);

/// Source-graph file for the generators; `pattern` is required by the PSI
/// kinds and `values`/`target` by the partition kind.
struct GeneratorInput {
  reductions::SourceGraph graph;
  std::optional<reductions::SourceGraph> pattern;
  std::optional<std::vector<Time>> values;
  std::optional<Time> target;
};

GeneratorInput generator_input_from_json(const nlohmann::json& j);

}  // namespace json_io
}  // namespace parsched
