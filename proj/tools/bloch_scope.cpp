// bloch-scope: Bloch norms and essential norms of composition operators.

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bloch/error.hpp"
#include "bloch/report.hpp"

namespace {

enum ExitCode { kOk = 0, kIo = 1, kParse = 2, kNotSelfMap = 3, kUnsupported = 4, kNumeric = 5 };

struct Flags {
  std::optional<std::string> config_path;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App& cmd, Flags& flags) {
  cmd.add_option_function<std::string>("--config", [&flags](const std::string& p) { flags.config_path = p; },
                                       "key=value configuration file");
  for (const auto& key : bloch::config_keys()) {
    std::string name = "--" + key;
    for (auto& ch : name) {
      if (ch == '_') ch = '-';
    }
    cmd.add_option_function<std::string>(
        name, [&flags, key](const std::string& v) { flags.overrides[key] = v; }, "override '" + key + "'");
  }
}

bloch::RunConfig resolve(const Flags& flags) {
  bloch::RunConfig config;
  if (flags.config_path) config = bloch::load_config(*flags.config_path);
  // weight before beta, so an explicit --beta wins over --weight
  for (const char* key : {"weight", "beta"}) {
    if (auto it = flags.overrides.find(key); it != flags.overrides.end()) {
      bloch::apply_setting(config, key, it->second);
    }
  }
  for (const auto& [key, value] : flags.overrides) {
    if (key != "weight" && key != "beta") bloch::apply_setting(config, key, value);
  }
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bloch-type norms and essential norms of composition operators on the unit disk"};
  app.set_version_flag("--version", std::string(bloch::kToolName) + " " + bloch::kToolVersion);
  app.require_subcommand(1);

  Flags flags;
  auto* norm = app.add_subcommand("norm", "Bloch norm of the symbol read as a function f");
  auto* essential = app.add_subcommand("essential", "sigma scan and essential-norm bounds of C_phi");
  auto* compare = app.add_subcommand("compare", "sigma scan, Zhao and Mobius criteria side by side");
  auto* dump = app.add_subcommand("scan-dump", "every cell of the sigma scan as CSV rows");
  auto* selfcheck = app.add_subcommand("selfcheck", "run the built-in property suite");
  for (auto* cmd : {norm, essential, compare, dump, selfcheck}) add_common(*cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    bloch::RunConfig config = resolve(flags);
    if (dump->parsed() && !flags.overrides.count("format")) config.format = bloch::OutputFormat::Csv;
    bloch::Report report;
    if (norm->parsed()) report = bloch::cmd_norm(config);
    else if (essential->parsed()) report = bloch::cmd_essential(config);
    else if (compare->parsed()) report = bloch::cmd_compare(config);
    else if (dump->parsed()) report = bloch::cmd_scan_dump(config);
    else report = bloch::cmd_selfcheck(config);
    bloch::write_report(report, config);
    return report.passed ? kOk : kNumeric;
  } catch (const bloch::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  } catch (const bloch::NotSelfMap& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNotSelfMap;
  } catch (const bloch::UnsupportedWeight& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnsupported;
  } catch (const bloch::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumeric;
  } catch (const bloch::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const bloch::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }
}
