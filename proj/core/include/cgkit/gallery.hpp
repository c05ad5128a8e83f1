#pragma once

// Generators for the example families, with closed-form reference values.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgkit/metric_space.hpp"
#include "cgkit/sampled_manifold.hpp"

namespace cgkit {

enum class Family {
  gaussian_slab,
  thin_torus,
  capsule_cross_circle,
  tube_neighborhood,
  flattened_disc,
  plane_minus_ball,
  sphere_minus_ball,
  thin_cylinder,
};

std::string_view family_name(Family f);
/// Throws ParseError (line 0) on an unknown name.
Family family_from_name(std::string_view name);
const std::vector<Family>& all_families();

/// Zero-valued geometry parameters mean "family default" (see resolved()).
struct ExampleSpec {
  Family family = Family::thin_torus;
  int i = 10;               ///< sequence index, >= 1
  double h = 0.0;           ///< target mesh scale
  double r = 1.0;           ///< S^1(r) factor (capsule), removed ball radius (plane/sphere)
  double R = 1.0;           ///< probe distance from the removed ball (plane_minus_ball)
  double eps = 0.0;         ///< capsule / tube radius; default i^{-1/2}
  double thickness = 0.0;   ///< slab thickness; default 1/i
  double radius = 0.0;      ///< thin_cylinder radius; default 1/i
  double length = 0.0;      ///< thin_cylinder length; default 1/i
  double extent = 0.0;      ///< half-width of the truncated domain (slab, plane)
  std::string curve = "segment";  ///< tube core: "segment" or "circle"
  std::size_t circle_points = 0;  ///< capsule: copies along S^1(r); 0 samples the surface factor only

  /// Copy with every default filled in. Throws DomainError on invalid values.
  ExampleSpec resolved() const;

  bool operator==(const ExampleSpec&) const = default;
};

/// Throws DomainError on out-of-range parameters. Deterministic.
SampledManifold generate(const ExampleSpec& spec);

struct GroundTruth {
  std::optional<double> inradius, diameter, inj, i_int, i_boundary;
  std::optional<double> injectivity_proxy;  ///< length the measured proxy is compared to
  std::optional<double> sectional_curvature;  ///< constant value when known
  std::string limit;                          ///< description of the GH limit
};

/// Closed-form values; quantities without one are left empty.
GroundTruth ground_truth(const ExampleSpec& spec);

/// Measured injectivity proxy: graph distance between the probe point and
/// the boundary point where geodesics around the removed ball meet
/// (plane_minus_ball), or between antipodal boundary points
/// (sphere_minus_ball). Throws PreconditionError for other families.
double injectivity_proxy(const SampledManifold& m, const ExampleSpec& spec);

/// Vertex closest (Euclidean) to a coordinate tuple.
Index nearest_vertex(const SampledManifold& m, std::span<const double> x);

// Auxiliary spaces for calibration and limits.

/// Subdivided icosahedron on S^2(radius), neighbor graph with stencil 3.
SampledManifold icosphere(int level, double radius = 1.0);
/// n x n grid with the given spacing, exact Euclidean distances.
FiniteMetricSpace flat_grid(std::size_t n, double spacing);
/// Three segments of length arm glued at one end; center index 0.
FiniteMetricSpace tripod(std::size_t points_per_arm, double arm = 1.0);
/// [0, length] with n equally spaced points.
FiniteMetricSpace segment_space(std::size_t n, double length = 1.0);
/// S^1(radius) with n equally spaced points, arc metric.
FiniteMetricSpace circle_space(std::size_t n, double radius = 1.0);
/// Unit disc in the plane: hexagonal lattice plus a boundary ring.
SampledManifold planar_disc(double h, double radius = 1.0);

}  // namespace cgkit
