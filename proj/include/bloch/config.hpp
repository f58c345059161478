#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bloch/essential.hpp"
#include "bloch/norm_engine.hpp"

namespace bloch {

enum class OutputFormat { Csv, Json };

/// Everything a command needs.  Filled from a key=value file, then from
/// command-line overrides.
struct RunConfig {
  std::string symbol = "identity";
  double alpha = 1.0;
  std::string weight = "valpha:1";
  SearchSettings search;
  ScanSettings scan;
  OutputFormat format = OutputFormat::Json;
  std::string out;  // empty: standard output

  /// Parses symbol and weight and checks every setting; throws ParseError,
  /// ConfigError or ParameterError.
  void validate() const;
};

/// Keys accepted by apply_setting, in echo order.
const std::vector<std::string>& config_keys();

/// Sets one key.  "beta" is shorthand for weight=valpha:<beta>.  Throws
/// ConfigError for unknown keys and malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Flat key=value text: one pair per line, '#' starts a comment, blank
/// lines ignored, whitespace around keys and values trimmed.
RunConfig parse_config(std::string_view text, RunConfig base = {});
RunConfig load_config(const std::string& path, RunConfig base = {});

/// (key, value) pairs describing the effective configuration.
std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config);

}  // namespace bloch
