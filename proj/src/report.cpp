#include "bloch/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bloch/error.hpp"
#include "bloch/selfcheck.hpp"
#include "bloch/symbol.hpp"

namespace bloch {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

json number(double x) {
  if (std::isfinite(x)) return x;
  return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Report start(const char* command, const RunConfig& config) {
  config.validate();
  Report r;
  r.command = command;
  r.config = config_echo(config);
  return r;
}

void finish(Report& r, Clock::time_point t0) {
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

json certificate_json(const SelfMapCertificate& c) {
  return {{"sup_modulus", number(c.sup_modulus_estimate)},
          {"witness", format_complex17(c.witness.value())},
          {"boundary_modulus", number(c.boundary_modulus_estimate)},
          {"strict", c.is_strict}};
}

json seminorm_json(const SeminormEstimate& s) {
  return {{"value", number(s.value)},
          {"witness", format_complex17(s.witness.value())},
          {"converged", s.is_converged},
          {"rising_tail", s.rising_tail},
          {"radial_path", s.radial_path},
          {"levels", s.trace.levels.size()},
          {"evaluations", s.evaluations}};
}

json scan_json(const BoundaryScan& s) {
  return {{"kind", to_string(s.kind)},
          {"radii", numbers(s.radii)},
          {"angles", s.angles.size()},
          {"tail_max_norm", numbers(s.tail_max_norm)},
          {"tail_max_seminorm", numbers(s.tail_max_seminorm)},
          {"tail_window", s.tail_window},
          {"L", number(s.L_estimate)},
          {"L_norm", number(s.L_norm)},
          {"L_seminorm", number(s.L_seminorm)},
          {"converged", s.converged},
          {"cells_unconverged", s.cells_unconverged},
          {"cells_rising_tail", s.cells_rising_tail}};
}

void flatten(const json& node, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) flatten(node[i], prefix + "." + std::to_string(i), out);
  } else if (node.is_number_float()) {
    out.emplace_back(prefix, format_number(node.get<double>()));
  } else if (node.is_string()) {
    out.emplace_back(prefix, node.get<std::string>());
  } else if (node.is_null()) {
    out.emplace_back(prefix, "");
  } else {
    out.emplace_back(prefix, node.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_complex17(complex z) {
  const std::string re = format_number(z.real());
  const std::string im = format_number(std::abs(z.imag()));
  return re + (std::signbit(z.imag()) ? "-" : "+") + im + "i";
}

Report cmd_norm(const RunConfig& config) {
  const auto t0 = Clock::now();
  Report r = start("norm", config);
  const AnalyticMap f = parse_symbol(config.symbol);
  const Weight mu = Weight::parse(config.weight);
  const BlochNorm n = bloch_norm(f, mu, config.search);
  r.results = {{"symbol", f.to_string()},
               {"weight", mu.describe()},
               {"value_at_zero", number(n.value_at_zero)},
               {"seminorm", seminorm_json(n.seminorm)},
               {"total", number(n.total)}};
  finish(r, t0);
  return r;
}

Report cmd_essential(const RunConfig& config) {
  const auto t0 = Clock::now();
  Report r = start("essential", config);
  const AnalyticMap phi = parse_symbol(config.symbol);
  const Weight mu = Weight::parse(config.weight);
  const CompositionSearch search(phi, mu, config.search);
  const BoundaryScan scan = sigma_scan(search, config.alpha, config.scan);
  const BlochNorm phi_norm = search.norm(AnalyticMap::identity());
  const EssentialNormBounds bounds = essential_bounds(scan, config.alpha, phi_norm, config.scan);
  r.results = {{"symbol", phi.to_string()},
               {"weight", mu.describe()},
               {"alpha", number(config.alpha)},
               {"certificate", certificate_json(search.certificate())},
               {"phi_norm", number(phi_norm.total)},
               {"scan", scan_json(scan)},
               {"bounds",
                {{"L", number(bounds.L)},
                 {"lower", number(bounds.lower)},
                 {"upper", number(bounds.upper)},
                 {"verdict", to_string(bounds.verdict)}}}};
  finish(r, t0);
  return r;
}

Report cmd_compare(const RunConfig& config) {
  const auto t0 = Clock::now();
  Report r = start("compare", config);
  const AnalyticMap phi = parse_symbol(config.symbol);
  const Weight mu = Weight::parse(config.weight);
  mu.standard_alpha();
  const CriteriaReport c = criteria_compare(phi, config.alpha, mu, config.scan, config.search);

  json table = json::array();
  table.push_back({{"criterion", "sigma"},
                   {"limit", number(c.bounds.L)},
                   {"lower", number(c.bounds.lower)},
                   {"upper", number(c.bounds.upper)},
                   {"converged", c.sigma.converged},
                   {"verdict", to_string(c.sigma_verdict)}});
  table.push_back({{"criterion", "zhao"},
                   {"limit", number(c.zhao.value)},
                   {"previous_quarter", number(c.zhao.previous_quarter)},
                   {"prefactor", number(c.zhao.prefactor)},
                   {"converged", c.zhao.converged},
                   {"verdict", to_string(c.zhao_verdict)}});
  if (c.tjani) {
    table.push_back({{"criterion", "mobius"},
                     {"limit", number(c.tjani->L_seminorm)},
                     {"limit_norm", number(c.tjani->L_norm)},
                     {"converged", c.tjani->converged},
                     {"verdict", to_string(*c.tjani_verdict)}});
  }
  json disagreements = json::array();
  for (const auto& d : c.disagreements) disagreements.push_back(d);
  r.results = {{"symbol", phi.to_string()},
               {"weight", mu.describe()},
               {"alpha", number(c.alpha)},
               {"beta", number(c.beta)},
               {"criteria", table},
               {"sigma_scan", scan_json(c.sigma)},
               {"zhao_terms", numbers(c.zhao.terms)},
               {"agreement", c.agreement},
               {"zhao_in_sandwich", c.zhao_in_sandwich ? json(*c.zhao_in_sandwich) : json()},
               {"disagreements", disagreements}};
  finish(r, t0);
  return r;
}

Report cmd_scan_dump(const RunConfig& config) {
  const auto t0 = Clock::now();
  Report r = start("scan-dump", config);
  const AnalyticMap phi = parse_symbol(config.symbol);
  const Weight mu = Weight::parse(config.weight);
  const BoundaryScan scan = sigma_scan(CompositionSearch(phi, mu, config.search), config.alpha, config.scan);
  r.table_header = {"radius", "angle", "norm", "seminorm"};
  json rows = json::array();
  for (std::size_t k = 0; k < scan.radii.size(); ++k) {
    for (std::size_t m = 0; m < scan.angles.size(); ++m) {
      r.table_rows.push_back({scan.radii[k], scan.angles[m], scan.norm_at(k, m), scan.seminorm_at(k, m)});
      rows.push_back(numbers(r.table_rows.back()));
    }
  }
  r.results = {{"symbol", phi.to_string()},
               {"weight", mu.describe()},
               {"alpha", number(config.alpha)},
               {"columns", r.table_header},
               {"rows", rows},
               {"tail_max_norm", numbers(scan.tail_max_norm)},
               {"L", number(scan.L_estimate)}};
  finish(r, t0);
  return r;
}

Report cmd_selfcheck(const RunConfig& config) {
  const auto t0 = Clock::now();
  Report r;
  r.command = "selfcheck";
  r.config = config_echo(config);
  json checks = json::array();
  for (const auto& c : run_selfcheck()) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    r.passed = r.passed && c.passed;
  }
  r.results = {{"checks", checks}, {"passed", r.passed}};
  finish(r, t0);
  return r;
}

std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json config = json::object();
    for (const auto& [k, v] : report.config) config[k] = v;
    json doc = {{"tool", kToolName},
                {"version", kToolVersion},
                {"command", report.command},
                {"seed", nullptr},
                {"config", config},
                {"results", report.results},
                {"timing", {{"seconds", report.seconds}}}};
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  if (!report.table_header.empty()) {
    for (std::size_t i = 0; i < report.table_header.size(); ++i) {
      out << (i ? "," : "") << csv_field(report.table_header[i]);
    }
    out << "\r\n";
    for (const auto& row : report.table_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
      out << "\r\n";
    }
    return out.str();
  }
  std::vector<std::pair<std::string, std::string>> rows = {
      {"tool", kToolName}, {"version", kToolVersion}, {"command", report.command}};
  for (const auto& [k, v] : report.config) rows.emplace_back("config." + k, v);
  flatten(report.results, "results", rows);
  rows.emplace_back("timing.seconds", format_number(report.seconds));
  out << "key,value\r\n";
  for (const auto& [k, v] : rows) out << csv_field(k) << ',' << csv_field(v) << "\r\n";
  return out.str();
}

void write_report(const Report& report, const RunConfig& config) {
  const std::string text = render(report, config.format);
  if (config.out.empty()) {
    std::cout << text << std::flush;
    if (!std::cout) throw IoError("cannot write to standard output");
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw IoError("cannot open '" + config.out + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("cannot write '" + config.out + "'");
}

}  // namespace bloch
