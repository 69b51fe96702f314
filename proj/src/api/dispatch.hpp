#pragma once

#include <string>
#include <vector>

#include "api/params.hpp"

namespace et::api {

struct TargetInfo {
  std::string name;
  std::string module;
  std::vector<std::string> required;
  std::vector<std::string> optional;
  bool limits = false;  // reachable through the limits command
};

const std::vector<TargetInfo>& targets();

// {"target": name, "params": {...}} -> {"target", "params", "result": {...}}
json eval(const json& request, const Truncation& tr);
// Same request; "a..b" strings and JSON arrays in params span a Cartesian grid.
// -> {"target", "columns": [...], "rows": [[...], ...]}
json table(const json& request, const Truncation& tr);

// Truncation defaults with the overrides in j (keys as in Truncation).
Truncation truncation_from(const json& j, const Truncation& base);

}  // namespace et::api
