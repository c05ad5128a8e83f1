#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cgkit/error.hpp"
#include "cgkit/experiment.hpp"
#include "doctest.h"

using namespace cgkit;

namespace {

// Rows of a numeric CSV keyed by header name (no quoted fields expected).
std::vector<std::map<std::string, std::string>> read_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> header;
  std::vector<std::map<std::string, std::string>> rows;
  auto split = [](const std::string& s) {
    std::vector<std::string> out(1);
    for (char c : s) {
      if (c == ',') out.emplace_back();
      else out.back().push_back(c);
    }
    return out;
  };
  std::getline(in, line);
  header = split(line);
  while (std::getline(in, line)) {
    const auto cells = split(line);
    std::map<std::string, std::string> row;
    for (std::size_t k = 0; k < header.size() && k < cells.size(); ++k) row[header[k]] = cells[k];
    rows.push_back(row);
  }
  return rows;
}

std::size_t error_line(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return static_cast<std::size_t>(-1);
}

}  // namespace

TEST_CASE("config: parse and round-trip") {
  const ExperimentConfig c = parse_config(
      "# sweep\n"
      "family = \"capsule_cross_circle\"\n"
      "i = [10, 20]   # two rows\n"
      "h = 0.02\n"
      "collar = \"fixed\"\n"
      "collar_t0 = 0.3\n"
      "collar_lambda_bar = -2\n"
      "tests = [\"radii\", \"collar\"]\n"
      "seed = 42\n");
  CHECK(c.example.family == Family::capsule_cross_circle);
  CHECK(c.i_values == std::vector<int>{10, 20});
  CHECK(c.example.h == 0.02);
  CHECK(c.collar == CollarMode::fixed);
  CHECK(c.collar_t0 == 0.3);
  CHECK(c.collar_lambda_bar == -2.0);
  CHECK(c.tests == std::vector<TestKind>{TestKind::radii, TestKind::collar});
  CHECK(c.seed == 42);
  CHECK(parse_config(serialize_config(c)) == c);

  ExperimentConfig d;
  d.example.family = Family::thin_cylinder;
  d.i_values = {4, 8};
  d.example.curve = "with \"quotes\"";
  d.tests = {TestKind::gluing};
  d.out = "dir with spaces";
  CHECK(parse_config(serialize_config(d)) == d);
}

TEST_CASE("config errors carry line numbers") {
  CHECK(error_line("family = \"thin_torus\"\ni = []\n") == 2);
  CHECK(error_line("family = \"thin_torus\"\ni = [4]\nwidth = 3\n") == 3);
  CHECK(error_line("family = \"thin_torus\"\ni = [4]\ni = [5]\n") == 3);
  CHECK(error_line("family = \"moebius\"\ni = [4]\n") == 1);
  CHECK(error_line("family = \"thin_torus\"\n\n\ni = [4, -1]\n") == 4);
  CHECK(error_line("family = \"thin_torus\"\ni = [4]\ntests = [\"radii\", \"magic\"]\n") == 3);
  CHECK(error_line("family = \"thin_torus\"\ni = [4\n") == 2);
  CHECK(error_line("family = \"thin_torus\"\ni = [4]\nh\n") == 3);
  CHECK(error_line("family = \"thin_torus\"\ni = [4]\nseed = \"x\"\n") == 3);
  CHECK_THROWS_AS(parse_config("i = [4]\n"), ParseError);
  CHECK_THROWS_AS(parse_config("family = \"thin_torus\"\n"), ParseError);
  CHECK_THROWS_AS(parse_config("family = \"thin_torus\"\ni = [4]\ntests = [\"gluing\"]\n"), ParseError);
  CHECK_THROWS_AS(
      parse_config("family = \"thin_torus\"\ni = [4]\ncollar = \"fixed\"\ncollar_eps = 1.5\n"), ParseError);

  ExperimentConfig empty;
  CHECK_THROWS_AS(run_experiment(empty), ParseError);
}

TEST_CASE("csv columns are unique and documented") {
  std::map<std::string, int> seen;
  for (const Column& c : csv_columns()) {
    CHECK(++seen[c.name] == 1);
    CHECK_FALSE(c.description.empty());
  }
  CHECK(csv_columns().front().name == "i");
}

TEST_CASE("capsule sweep: inradius matches the closed form") {
  ExperimentConfig c;
  c.example.family = Family::capsule_cross_circle;
  c.i_values = {10, 20, 40};
  c.tests = {TestKind::radii};
  const RunResult r = run_experiment(c);
  CHECK(r.failed_rows == 0);
  const auto rows = read_csv(r.csv);
  REQUIRE(rows.size() == 3);
  for (const auto& row : rows) {
    const double got = std::stod(row.at("inradius")), want = std::stod(row.at("inradius_exact"));
    CHECK(std::abs(got - want) <= 0.02 * want);
  }
  CHECK(r.plots.count("inradius.svg") == 1);
  CHECK(r.manifest.find("\"seed\"") != std::string::npos);
}

TEST_CASE("gluing sweep: epsilon decreases and stays under the bound") {
  ExperimentConfig c;
  c.example.family = Family::thin_cylinder;
  c.i_values = {10, 20, 40};
  c.tests = {TestKind::gluing};
  const auto rows = read_csv(run_experiment(c).csv);
  REQUIRE(rows.size() == 3);
  double prev = INFINITY;
  for (const auto& row : rows) {
    REQUIRE(row.at("status") == "ok");
    const double eps = std::stod(row.at("gluing_epsilon"));
    CHECK(eps <= std::stod(row.at("gluing_bound")));
    CHECK(eps < prev);
    prev = eps;
  }
}

TEST_CASE("failed rows are isolated") {
  ExperimentConfig c;
  c.example.family = Family::capsule_cross_circle;
  c.example.eps = 0.15;  // i * eps must exceed 1
  c.i_values = {5, 10};
  c.tests = {TestKind::radii};
  const RunResult r = run_experiment(c);
  CHECK(r.failed_rows == 1);
  const auto rows = read_csv(r.csv);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].at("status") == "failed");
  CHECK_FALSE(rows[0].at("error").empty());
  CHECK(rows[1].at("status") == "ok");
}

TEST_CASE("runs are deterministic and independent of jobs") {
  ExperimentConfig c;
  c.example.family = Family::thin_cylinder;
  c.i_values = {4, 8};
  c.tests = {TestKind::radii, TestKind::curvature, TestKind::gh, TestKind::collar};
  c.samples = 300;
  c.net_points = 40;
  c.seed = 5;
  const RunResult a = run_experiment(c), b = run_experiment(c), p = run_experiment(c, 2);
  CHECK(a.csv == b.csv);
  CHECK(a.csv == p.csv);
  CHECK(a.manifest == b.manifest);
  CHECK(a.plots == p.plots);
}
