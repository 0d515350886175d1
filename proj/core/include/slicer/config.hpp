#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "slicer/engine.hpp"

namespace slicer {

// Enum <-> config-string mappings. Parsers throw ConfigError on unknown
// strings.
std::string to_string(Protocol p);
std::string to_string(Sampler s);
std::string to_string(Concurrency c);
std::string to_string(ChurnMode m);
std::string to_string(JkTargetRule r);
std::string to_string(ModjkIdle m);
std::string to_string(BoundaryMode m);
std::string to_string(AttributeDistribution::Kind k);

Protocol parse_protocol(std::string_view s);
Sampler parse_sampler(std::string_view s);
Concurrency parse_concurrency(std::string_view s);
ChurnMode parse_churn_mode(std::string_view s);
JkTargetRule parse_jk_target(std::string_view s);
ModjkIdle parse_modjk_idle(std::string_view s);
BoundaryMode parse_boundary_mode(std::string_view s);
AttributeDistribution::Kind parse_attribute_kind(std::string_view s);

// Shortest round-tripping decimal form of a double (via std::to_chars).
std::string format_double(double v);

// Flat `key = value` lines. '#' starts a comment anywhere on a line;
// blank lines are skipped; keys and values are whitespace-trimmed.
// Malformed lines (no '=') raise ConfigError. Order and duplicates are
// preserved; later assignments of a key win when applied.
std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in);

// Applies one setting to the config. Returns false for keys that are not
// simulation settings (the caller may treat them as experiment extras);
// throws ConfigError on a recognized key with a bad value.
bool apply_setting(SimulationConfig& cfg, const std::string& key, const std::string& value);

// Parses a whole stream/file into a config. Keys apply_setting does not
// recognize go to *extras when given, otherwise raise ConfigError.
SimulationConfig config_from_stream(
    std::istream& in, std::vector<std::pair<std::string, std::string>>* extras = nullptr);
SimulationConfig load_config_file(
    const std::string& path, std::vector<std::pair<std::string, std::string>>* extras = nullptr);

// The config rendered back to key=value pairs, in a fixed canonical order,
// restricted to settings relevant for the chosen modes. Feeding the pairs
// back through apply_setting reproduces the config.
std::vector<std::pair<std::string, std::string>> config_items(const SimulationConfig& cfg);

}  // namespace slicer
