#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "bloch/config.hpp"

namespace bloch {

inline constexpr const char* kToolName = "bloch-scope";
inline constexpr const char* kToolVersion = "0.1.0";

struct Report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  nlohmann::ordered_json results = nlohmann::ordered_json::object();
  /// Plot-ready rows; when present the CSV rendering is this table alone.
  std::vector<std::string> table_header;
  std::vector<std::vector<double>> table_rows;
  double seconds = 0.0;
  /// selfcheck only: every property held
  bool passed = true;
};

/// Bloch norm of the symbol read as a function f.
Report cmd_norm(const RunConfig& config);
/// sigma scan and essential-norm bounds of C_phi: B^alpha -> B^mu.
Report cmd_essential(const RunConfig& config);
/// sigma scan, Zhao and (alpha = beta = 1) Mobius criteria side by side.
Report cmd_compare(const RunConfig& config);
/// Every cell of the sigma scan.
Report cmd_scan_dump(const RunConfig& config);
/// Built-in property suite on small random inputs.
Report cmd_selfcheck(const RunConfig& config);

/// 17 significant digits, '.' decimal point, independent of the locale.
std::string format_number(double x);
/// "a+bi" with 17 significant digits.
std::string format_complex17(complex z);

/// JSON document, or RFC 4180 CSV.  Timing sits on its own line
/// (key "seconds") so reports can be compared with it removed.
std::string render(const Report& report, OutputFormat format);

/// Renders to config.out, or to standard output when it is empty.
/// Throws IoError when the file cannot be written.
void write_report(const Report& report, const RunConfig& config);

}  // namespace bloch
