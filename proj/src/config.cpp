#include "bloch/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <sstream>

#include "bloch/error.hpp"
#include "bloch/symbol.hpp"
#include "bloch/weights.hpp"

namespace bloch {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view text) {
  double x = 0.0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "' expects a number, got '" + std::string(text) + "'");
  }
  return x;
}

int to_int(std::string_view key, std::string_view text) {
  int x = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "' expects an integer, got '" + std::string(text) + "'");
  }
  return x;
}

bool to_bool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw ConfigError("'" + std::string(key) + "' expects true or false, got '" + std::string(text) + "'");
}

struct Field {
  std::string key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
Field int_field(std::string key, T member) {
  return {key,
          [key, member](RunConfig& c, std::string_view v) { std::invoke(member, c) = to_int(key, v); },
          [member](const RunConfig& c) { return std::to_string(std::invoke(member, c)); }};
}

template <class T>
Field real_field(std::string key, T member) {
  return {key,
          [key, member](RunConfig& c, std::string_view v) { std::invoke(member, c) = to_double(key, v); },
          [member](const RunConfig& c) { return format_real(std::invoke(member, c)); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"symbol", [](RunConfig& c, std::string_view v) { c.symbol = v; },
                 [](const RunConfig& c) { return c.symbol; }});
    f.push_back(real_field("alpha", [](auto& c) -> auto& { return c.alpha; }));
    f.push_back({"weight", [](RunConfig& c, std::string_view v) { c.weight = v; },
                 [](const RunConfig& c) { return c.weight; }});
    f.push_back({"beta",
                 [](RunConfig& c, std::string_view v) {
                   c.weight = "valpha:" + format_real(to_double("beta", v));
                 },
                 nullptr});
    f.push_back({"format",
                 [](RunConfig& c, std::string_view v) {
                   if (v == "csv") c.format = OutputFormat::Csv;
                   else if (v == "json") c.format = OutputFormat::Json;
                   else throw ConfigError("format must be csv or json, got '" + std::string(v) + "'");
                 },
                 [](const RunConfig& c) { return std::string(c.format == OutputFormat::Csv ? "csv" : "json"); }});
    f.push_back({"out", [](RunConfig& c, std::string_view v) { c.out = v; },
                 [](const RunConfig& c) { return c.out; }});

    f.push_back(int_field("depth", [](auto& c) -> auto& { return c.search.depth; }));
    f.push_back(real_field("eps_boundary", [](auto& c) -> auto& { return c.search.eps_boundary; }));
    f.push_back(int_field("max_angles", [](auto& c) -> auto& { return c.search.max_angles; }));
    f.push_back(int_field("refine_rounds", [](auto& c) -> auto& { return c.search.refine_rounds; }));
    f.push_back(real_field("shrink", [](auto& c) -> auto& { return c.search.shrink; }));
    f.push_back(real_field("rel_tol", [](auto& c) -> auto& { return c.search.rel_tol; }));
    f.push_back(real_field("abs_tol", [](auto& c) -> auto& { return c.search.abs_tol; }));
    f.push_back(int_field("seeds", [](auto& c) -> auto& { return c.search.seeds; }));
    f.push_back(int_field("max_levels", [](auto& c) -> auto& { return c.search.max_levels; }));
    f.push_back({"radial_fast_path",
                 [](RunConfig& c, std::string_view v) { c.search.radial_fast_path = to_bool("radial_fast_path", v); },
                 [](const RunConfig& c) { return std::string(c.search.radial_fast_path ? "true" : "false"); }});

    f.push_back(int_field("k_min", [](auto& c) -> auto& { return c.scan.k_min; }));
    f.push_back(int_field("k_max", [](auto& c) -> auto& { return c.scan.k_max; }));
    f.push_back(int_field("angles", [](auto& c) -> auto& { return c.scan.angles; }));
    f.push_back(int_field("tail_window", [](auto& c) -> auto& { return c.scan.tail_window; }));
    f.push_back(real_field("compact_tol", [](auto& c) -> auto& { return c.scan.compact_tol; }));
    f.push_back(real_field("noncompact_factor", [](auto& c) -> auto& { return c.scan.noncompact_factor; }));
    f.push_back(int_field("j_max", [](auto& c) -> auto& { return c.scan.j_max; }));
    f.push_back(real_field("scan_rel_tol", [](auto& c) -> auto& { return c.scan.rel_tol; }));
    f.push_back(real_field("scan_abs_tol", [](auto& c) -> auto& { return c.scan.abs_tol; }));
    f.push_back(real_field("zhao_rel_tol", [](auto& c) -> auto& { return c.scan.zhao_rel_tol; }));
    return f;
  }();
  return table;
}

}  // namespace

void RunConfig::validate() const {
  parse_symbol(symbol);
  Weight::parse(weight);
  if (!(alpha > 0.0 && alpha <= kMaxAlpha)) throw ParameterError("alpha must lie in (0, 8]");
  search.validate();
  scan.validate();
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& f : fields()) k.push_back(f.key);
    return k;
  }();
  return keys;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
  for (const auto& f : fields()) {
    if (f.key == key) {
      f.set(config, trim(value));
      return;
    }
  }
  throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

RunConfig parse_config(std::string_view text, RunConfig base) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::string_view view = line;
    if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
    view = trim(view);
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key=value");
    }
    try {
      apply_setting(base, trim(view.substr(0, eq)), trim(view.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return base;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), std::move(base));
}

std::vector<std::pair<std::string, std::string>> config_echo(const RunConfig& config) {
  std::vector<std::pair<std::string, std::string>> echo;
  for (const auto& f : fields()) {
    if (f.get) echo.emplace_back(f.key, f.get(config));
  }
  return echo;
}

}  // namespace bloch
