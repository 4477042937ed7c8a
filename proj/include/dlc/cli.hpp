#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dlc/thelma.hpp"
#include "json.hpp"

namespace dlc {

// Runs the command line `args` (program name excluded). Returns the exit
// code: 0 success, 1 runtime or numeric failure, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Generator parameters from a config object. "weights" and "tau" are either
// explicit arrays or generator objects:
//   {"power_law": {"n": 3987, "exponent": 2.18, "mean": 1.74, "max": 617}}
//   {"circadian": {"steps": 500, "cycles": 2}}, {"constant": {"steps": 10, "value": 1}}
ThelmaParams thelma_params_from_config(const nlohmann::json& config);

}  // namespace dlc
