#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "simbench/harness.hpp"

namespace simbench {

// Parses the TOML subset used by config files (tables, dotted tables, bare
// keys, strings, ints, floats, bools, flat arrays, # comments) into the same
// JSON document shape a .json config would produce.
nlohmann::json parse_toml_subset(const std::string& text);

// Loads a config file; .toml parses through the subset reader, anything else
// must be JSON.
nlohmann::json load_config_document(const std::string& path);

RunConfig run_config_from_json(const nlohmann::json& doc);
nlohmann::json run_config_to_json(const RunConfig& cfg);

RunConfig load_run_config(const std::string& path);

}  // namespace simbench
