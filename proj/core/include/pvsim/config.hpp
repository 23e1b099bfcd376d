#pragma once

#include <string>
#include <string_view>

#include "pvsim/environment.hpp"

namespace pvsim {

/// Parses a scenario from the key=value config format documented in the
/// README ([panel], [bus], [profile], [controller], [sim] sections). Throws
/// ConfigError with line/key diagnostics on any problem.
Scenario parse_scenario(std::string_view text);

/// Reads and parses a scenario file. Throws ConfigError when the file cannot
/// be opened.
Scenario load_scenario_file(const std::string& path);

}  // namespace pvsim
