#pragma once

#include <optional>
#include <string>

#include "msl/graphs.hpp"

namespace msl {

/// One run: exactly one of {matrix problem, star graph}, plus solver settings.
/// Parsed from a JSON document with a schema version field; matrices are
/// row-major arrays of [re, im] pairs.
struct RunConfig {
  int schema = 1;
  std::optional<SelfAdjointProblem> problem;
  std::optional<StarGraphSpec> graph;
  std::optional<SelfAdjointProblem> compareProblem;  // second problem for comparison checks
  int maxBand = 10;
  IntegratorConfig integ{};
  WeightQuadratureOptions quad{};
  int workers = 0;
  std::string format = "csv";  // csv | json
  std::string outDir = "out";
  std::string presetName;

  /// The problem to solve (graph converted when present).
  SelfAdjointProblem resolveProblem() const;
};

RunConfig parse_config(const std::string& jsonText);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& cfg);

std::vector<std::string> preset_names();
RunConfig preset(const std::string& name);

}  // namespace msl
