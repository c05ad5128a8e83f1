#pragma once

// JSON and CSV serialization. Every JSON document carries a "schema" field
// ("cgkit.<kind>/<version>"); readers reject other schemas with ParseError.

#include <string>
#include <string_view>
#include <vector>

#include "cgkit/collar.hpp"
#include "cgkit/curvature_tests.hpp"
#include "cgkit/gh.hpp"
#include "cgkit/metric_space.hpp"
#include "cgkit/radii.hpp"
#include "cgkit/sampled_manifold.hpp"

namespace cgkit::io {

inline constexpr std::string_view kManifoldSchema = "cgkit.sampled_manifold/1";
inline constexpr std::string_view kMetricSchema = "cgkit.metric/1";
inline constexpr std::string_view kApproxSchema = "cgkit.approx_map/1";
inline constexpr std::string_view kViolationSchema = "cgkit.violation/1";
inline constexpr std::string_view kRadiiSchema = "cgkit.radii/1";

/// Shortest decimal text that reads back to the same double; "inf",
/// "-inf" and "nan" for non-finite values.
std::string format_double(double v);

std::string manifold_to_json(const SampledManifold& m);
/// Throws ParseError.
SampledManifold manifold_from_json(std::string_view text);

/// Manifold schema plus a "collar" block (t0, eps, lambda_bar, layer grid,
/// seam, footpoints).
std::string collar_to_json(const CollarExtension& e);

std::string metric_to_json(const FiniteMetricSpace& X);
FiniteMetricSpace metric_from_json(std::string_view text);
/// Full distance matrix, one row per line, preceded by an index header.
std::string metric_to_csv(const FiniteMetricSpace& X);

std::string approx_to_json(const ApproxMap& f);
/// Assignment only; certificates are recomputed by the caller.
std::vector<Index> assignment_from_json(std::string_view text);

std::string violation_to_json(const ViolationReport& r);
std::string radii_to_json(const RadiiReport& r);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};
/// RFC 4180 quoting where needed, "\n" line ends.
std::string to_csv(const CsvTable& t);

/// Whole file as a string; throws ParseError (line 0) if unreadable.
std::string read_file(const std::string& path);
/// Throws PreconditionError if the file cannot be written.
void write_file(const std::string& path, std::string_view content);

}  // namespace cgkit::io
