#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "smcsim/simulation.hpp"

namespace smcsim {

// Scenario files are YAML. Dimensioned fields take either a bare number in
// SI units or a string with an explicit unit suffix:
//   length  m | cm | mm        mass   kg | g
//   time    s | ms             angle  rad | deg
//   angular rate  rad/s | deg/s
// Unknown keys are rejected; errors carry the dotted key path.
//
// Parsing checks syntax, units and key names only. Call Scenario::validate()
// (or use load_scenario_file) for the semantic checks.
Scenario parse_scenario(std::string_view yaml_text, std::string_view default_name = "scenario");
Scenario parse_scenario_file(const std::filesystem::path& path);

// parse_scenario_file + validate.
Scenario load_scenario_file(const std::filesystem::path& path);

// The fully resolved scenario as YAML in SI units. parse_scenario() of the
// result reproduces the scenario.
std::string describe_scenario(const Scenario& scenario);

}  // namespace smcsim
