#pragma once

#include <string>
#include <vector>

#include "heli/scenario.hpp"

namespace heli {

// CSV: comma-separated, one header row naming every column, one row per step,
// doubles printed with 17 significant digits so a read-back reproduces the
// exact values.
void write_csv(const TimeSeries&, const std::string& path);
TimeSeries read_csv(const std::string& path);

// Plot data: whitespace-separated columns with a '#' comment header naming
// them. Throws on an empty column list or unknown columns.
void emit_plot_data(const TimeSeries&, const std::vector<std::string>& columns,
                    const std::string& path);

// Scenario configs are a flat key = value format with dotted section names
// (e.g. elev.asdo.k1 = 2). '#' starts a comment. Unknown or duplicate keys
// are errors. The full schema is listed in the README.
std::string scenario_to_config(const Scenario&);
Scenario parse_scenario_config(const std::string& text);

// Apply one dotted key to a scenario (shared by the parser and CLI
// overrides). Throws std::invalid_argument on unknown keys or bad values.
void apply_scenario_key(Scenario&, const std::string& key, const std::string& value);

void write_scenario(const Scenario&, const std::string& path);
Scenario read_scenario(const std::string& path);

}  // namespace heli
