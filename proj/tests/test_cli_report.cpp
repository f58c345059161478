#include <doctest.h>

#include <clocale>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bloch/error.hpp"
#include "bloch/report.hpp"

using namespace bloch;

namespace {

RunConfig quick(const std::string& symbol) {
  RunConfig c;
  c.symbol = symbol;
  return c;
}

std::string without_timing(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("seconds") == std::string::npos) out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("config files") {
  const auto c = parse_config(
      "# run\n"
      "symbol = affine(0.5, 0.5)\n"
      "alpha=2   # family parameter\n"
      "\n"
      "weight = valpha:1.5\n"
      "angles = 16\n"
      "radial_fast_path = false\n"
      "format = csv\n");
  CHECK(c.symbol == "affine(0.5, 0.5)");
  CHECK(c.alpha == 2.0);
  CHECK(c.weight == "valpha:1.5");
  CHECK(c.scan.angles == 16);
  CHECK_FALSE(c.search.radial_fast_path);
  CHECK(c.format == OutputFormat::Csv);
  CHECK_NOTHROW(c.validate());

  CHECK(parse_config("beta=2").weight == "valpha:2");
  CHECK_THROWS_AS(parse_config("colour = red"), ConfigError);
  CHECK_THROWS_AS(parse_config("depth = deep"), ConfigError);
  CHECK_THROWS_AS(parse_config("depth"), ConfigError);
  CHECK_THROWS_AS(parse_config("format = xml"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/run.cfg"), ConfigError);
  CHECK_THROWS_AS(parse_config("angles = 0").validate(), ParameterError);
  CHECK_THROWS_AS(parse_config("symbol = pow(2").validate(), ParseError);
  CHECK_THROWS_AS(parse_config("weight = gaussian").validate(), ConfigError);
}

TEST_CASE("overrides win over the file") {
  auto c = parse_config("alpha = 2\nk_max = 12\n");
  apply_setting(c, "alpha", "3");
  CHECK(c.alpha == 3.0);
  CHECK(c.scan.k_max == 12);
  CHECK_THROWS_AS(apply_setting(c, "nonsense", "1"), ConfigError);
}

TEST_CASE("config echo lists every key once") {
  const auto echo = config_echo(RunConfig{});
  CHECK(echo.size() + 1 == config_keys().size());
  CHECK(echo.front().first == "symbol");
}

TEST_CASE("numbers print with 17 significant digits and a dot") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
  CHECK(format_number(-2.5e-300) == "-2.5e-300");
  CHECK(format_complex17(complex(0.5, -0.25)) == "0.5-0.25i");
  CHECK(format_complex17(complex(0.0, 0.0)) == "0+0i");
  const char* previous = std::setlocale(LC_NUMERIC, "de_DE.UTF-8");
  CHECK(format_number(0.5) == "0.5");
  if (previous) std::setlocale(LC_NUMERIC, "C");
}

TEST_CASE("norm command") {
  const auto id = cmd_norm(quick("identity"));
  CHECK(id.results["total"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(cmd_norm(quick("const(2)")).results["total"].get<double>() == 2.0);
  CHECK_THROWS_AS(cmd_norm(quick("pow(2")), ParseError);
}

TEST_CASE("essential command") {
  const auto id = cmd_essential(quick("identity"));
  const auto& b = id.results["bounds"];
  CHECK(std::abs(b["L"].get<double>() - 0.5) <= 1e-3);
  CHECK(b["lower"].get<double>() == doctest::Approx(0.25).epsilon(1e-3));
  CHECK(b["upper"].get<double>() == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(b["verdict"] == "NonCompact");
  CHECK(cmd_essential(quick("dilate(0.5, identity)")).results["bounds"]["verdict"] == "Compact");
  CHECK(cmd_essential(quick("affine(0.5, 0.5)")).results["bounds"]["verdict"] == "NonCompact");
  CHECK_THROWS_AS(cmd_essential(quick("affine(1, 1)")), NotSelfMap);
}

TEST_CASE("compare command") {
  RunConfig c = quick("dilate(0.9, identity)");
  const auto r = cmd_compare(c);
  CHECK(r.results["agreement"] == true);
  for (const auto& row : r.results["criteria"]) {
    CHECK(row["verdict"] == "Compact");
    CHECK(row["limit"].get<double>() < 1e-3);
  }
  c.weight = "log";
  CHECK_THROWS_AS(cmd_compare(c), UnsupportedWeight);
}

TEST_CASE("scan dump") {
  RunConfig c = quick("identity");
  c.scan.angles = 8;
  const auto r = cmd_scan_dump(c);
  CHECK(r.table_rows.size() == 18 * 8);
  const std::string csv = render(r, OutputFormat::Csv);
  CHECK(csv.rfind("radius,angle,norm,seminorm\r\n", 0) == 0);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + 18 * 8);
  double previous = -1.0;
  for (std::size_t k = 0; k < 18; ++k) {
    double row_max = 0.0;
    for (std::size_t m = 0; m < 8; ++m) {
      const auto& row = r.table_rows[k * 8 + m];
      CHECK(row[1] >= 0.0);
      CHECK(row[1] < kTwoPi);
      row_max = std::max(row_max, row[2]);
    }
    CHECK(row_max > previous);
    previous = row_max;
  }
  c.scan.angles = 0;
  CHECK_THROWS_AS(cmd_scan_dump(c), ParameterError);
}

TEST_CASE("renderings") {
  RunConfig c = quick("identity");
  c.scan.angles = 4;
  c.scan.k_max = 8;
  c.scan.tail_window = 2;
  const auto r = cmd_essential(c);
  const std::string json = render(r, OutputFormat::Json);
  const auto doc = nlohmann::json::parse(json);
  CHECK(doc["tool"] == "bloch-scope");
  CHECK(doc["command"] == "essential");
  CHECK(doc["seed"].is_null());
  CHECK(doc["config"]["angles"] == "4");
  CHECK(doc["timing"]["seconds"].is_number());

  const std::string csv = render(r, OutputFormat::Csv);
  CHECK(csv.rfind("key,value\r\n", 0) == 0);
  const std::string verdict = doc["results"]["bounds"]["verdict"];
  CHECK(csv.find("results.bounds.verdict," + verdict + "\r\n") != std::string::npos);
  CHECK(csv.find("config.symbol,identity\r\n") != std::string::npos);
  CHECK(csv.find("results.scan.radii.0,0.875\r\n") != std::string::npos);

  const auto quoted = cmd_essential(quick("affine(0.5, 0.5)"));
  CHECK(render(quoted, OutputFormat::Csv).find("config.symbol,\"affine(0.5, 0.5)\"\r\n") != std::string::npos);
}

TEST_CASE("reports are reproducible") {
  RunConfig c = quick("affine(0.5, 0.5)");
  c.scan.angles = 16;
  const auto a = render(cmd_essential(c), OutputFormat::Json);
  const auto b = render(cmd_essential(c), OutputFormat::Json);
  CHECK(without_timing(a) == without_timing(b));
  const auto x = render(cmd_essential(c), OutputFormat::Csv);
  const auto y = render(cmd_essential(c), OutputFormat::Csv);
  CHECK(without_timing(x) == without_timing(y));
}

TEST_CASE("write_report targets a file") {
  RunConfig c = quick("identity");
  c.out = "report_test_output.json";
  write_report(cmd_norm(c), c);
  std::ifstream in(c.out);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(nlohmann::json::parse(text.str())["results"]["total"].get<double>() == doctest::Approx(1.0));
  std::remove(c.out.c_str());
  c.out = "/nonexistent-dir/report.json";
  CHECK_THROWS_AS(write_report(cmd_norm(c), c), IoError);
}

TEST_CASE("selfcheck passes") {
  const auto r = cmd_selfcheck(RunConfig{});
  CHECK(r.passed);
  CHECK(r.results["checks"].size() >= 6);
}
