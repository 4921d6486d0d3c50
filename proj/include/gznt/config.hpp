#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gznt/n1.hpp"
#include "json.hpp"

namespace gznt {

/// Everything needed to build an N1Function. `builtin` is kept for reporting only;
/// the explicit fields are always filled in.
struct FunctionSpec {
  std::optional<std::string> builtin;
  FactorR factor;
  double a_eff = 0.0;
  double b = 0.0;
  double fullline = 0.0;
  SpectralMeasure measure;
};

/// A-simple, A-poly, Btheta (angle pi/2 unless given as Btheta:0.7), B-log, C, D, E.
std::vector<std::string> builtin_names();

/// Throws ConfigError for unknown names.
FunctionSpec builtin_spec(const std::string& name);

/// Validates the measure and the factor; ConfigError on any violation.
N1Function build(const FunctionSpec& spec);

nlohmann::json to_json(const FunctionSpec& spec);
FunctionSpec spec_from_json(const nlohmann::json& j);

/// `builtin:NAME` or the path of a JSON file.
FunctionSpec load_spec(const std::string& arg);

}  // namespace gznt
