#pragma once

// Sweeps over the sequence index i: configuration, per-row measurements and
// report files. Also the composite scenarios shared with the tests.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "cgkit/collar.hpp"
#include "cgkit/gallery.hpp"
#include "cgkit/gh.hpp"

namespace cgkit {

enum class CollarMode { none, adaptive, fixed };
enum class TestKind { radii, curvature, gh, collar, gluing };

std::string_view test_name(TestKind t);

struct ExperimentConfig {
  ExampleSpec example;           ///< example.i is ignored; rows use i_values
  std::vector<int> i_values;
  CollarMode collar = CollarMode::adaptive;
  double collar_t0 = 0.5, collar_eps = 0.5, collar_lambda_bar = -0.5;  ///< used when collar = fixed
  double collar_boundary_k = 0.0;  ///< lower curvature bound of the boundary, for the tangential bound
  std::size_t collar_layers = 20;
  std::vector<TestKind> tests{TestKind::radii};
  std::string out = "cgkit-out";
  std::uint64_t seed = 1;
  std::size_t samples = 2000;    ///< curvature test samples per k
  std::size_t net_points = 150;  ///< size of the eps-net used for curvature and GH

  bool operator==(const ExperimentConfig&) const = default;
};

/// TOML-like "key = value" lines; '#' starts a comment; values are numbers,
/// "strings", true/false or [lists]. Throws ParseError with the line number.
ExperimentConfig parse_config(std::string_view text);
/// Canonical text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& c);

struct Column {
  std::string name, description;
};
/// CSV columns in output order.
const std::vector<Column>& csv_columns();

struct RunResult {
  std::string csv;       ///< results.csv
  std::string manifest;  ///< manifest.json
  std::string schema;    ///< schema.json
  std::map<std::string, std::string> plots;  ///< file name -> SVG
  std::size_t failed_rows = 0;
};

/// Rows may run in parallel (jobs); output does not depend on jobs.
RunResult run_experiment(const ExperimentConfig& c, unsigned jobs = 1);
/// Writes every RunResult file under dir (created if needed).
void write_run(const RunResult& r, const std::string& dir);

/// One row as column -> value (empty for columns not computed).
std::map<std::string, std::string> run_row(const ExperimentConfig& c, int i, unsigned jobs = 1);

// --- scenarios ----------------------------------------------------------------

/// Thin cylinder with a warped collar glued along each boundary circle.
/// The limit of the collar part is two intervals [0, t0] joined at 0.
struct DoubleCollar {
  GluingInstance glued;  ///< X = cylinder, Y = both collars (disjoint union)
  std::shared_ptr<const FiniteMetricSpace> y_limit;
  std::vector<Index> a_limit;
  ApproxMap f;  ///< collar point -> its level t on the matching interval
};
DoubleCollar double_collar(const ExampleSpec& cylinder, const WarpProfile& p, std::size_t layers,
                           unsigned jobs = 1);

/// A sample of M_i against a sample of its GH limit, with the natural map
/// as warm start.
struct LimitComparison {
  std::shared_ptr<const FiniteMetricSpace> sample, limit;
  std::vector<Index> natural;  ///< sample index -> limit index
  double mesh_scale = 0.0;
};
/// Throws PreconditionError for families whose limit is the space itself.
LimitComparison limit_comparison(const ExampleSpec& spec, const SampledManifold& m, std::size_t net_points,
                                 unsigned jobs = 1);

/// Farthest-point net with roughly `count` points (graph metric).
std::vector<Index> net_by_count(const SampledManifold& m, std::size_t count);

}  // namespace cgkit
