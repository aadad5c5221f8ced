#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cohlab/errors.hpp"

namespace cohlab {

enum class Scenario {
    wolf,   // two-source spectral shifts
    vacuum, // normalized vacuum coherence tensor vs separation
    atoms,  // driven-pair excitation scans with and without coupling
    mirror, // rates and shifts in front of a mirror
    shg,    // second-harmonic emission pattern and volume scaling
    pulse,  // dispersive propagation of (partially coherent) pulses
};

const char* scenario_name(Scenario s);

struct ScenarioConfig {
    Scenario scenario;
    std::map<std::string, std::string> params; // validated key -> raw value
    std::filesystem::path output_dir;
};

// Parses `key = value` text with '#' comments and applies the schema of the
// named scenario.  Every problem (unknown scenario, missing keys, unknown
// keys, unparseable or out-of-range values, duplicates) is collected into a
// single ValidationError listing all of them.
ScenarioConfig parse_config(const std::string& text);

// Human-readable key table for one scenario; throws ValidationError for an
// unknown scenario name.
std::string schema_text(const std::string& scenario);

struct ResultTable {
    std::string name;
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;
};

// Executes the configured scenario and returns its tables in a fixed order.
// Identical configs produce identical tables (bitwise).
std::vector<ResultTable> run_scenario(const ScenarioConfig& cfg);

// Writes <name>.csv per table (12 significant digits, LF endings) and, when
// plot is set, a matching <name>.svg line chart.  Creates the directory if
// needed and returns the paths written.
std::vector<std::filesystem::path> write_outputs(const std::vector<ResultTable>& tables,
                                                 const std::filesystem::path& dir, bool plot);

} // namespace cohlab
