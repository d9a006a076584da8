// Named built-in experiment scenarios and JSON scenario loading.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "trajlab/problems.hpp"

namespace trajlab {

// Built-in catalog; throws on unknown name.
ProblemSpec scenario(const std::string& name);

std::vector<std::string> scenario_names();

// Problem described by a JSON object: variant, geometry, coefficients and a
// nonlinearity that is either a named rule with parameters or a polynomial
// coefficient table in s.
ProblemSpec scenario_from_json(const nlohmann::json& j);

}  // namespace trajlab
