#pragma once

#include <cstddef>
#include <optional>

#include "cgkit/sampled_manifold.hpp"

namespace cgkit {

struct RadiiReport {
  double inradius = 0.0;           ///< max over points of the distance to the boundary
  double max_reach = 0.0;          ///< largest boundary distance realized by a unique footpoint
  double diameter = 0.0;           ///< graph diameter (lower estimate above the exact limit)
  double boundary_diameter = 0.0;  ///< max over boundary components of their intrinsic diameter
  double mesh_scale = 0.0;
  bool diameter_exact = true;
  Index inradius_point = 0;
  Index reach_point = 0;
  std::size_t boundary_components = 0;
  // Injectivity-type radii; filled only where a closed form is known.
  std::optional<double> inj, i_int, i_boundary, conj;
};

struct RadiiOptions {
  std::size_t exact_diameter_limit = 2000;  ///< all-sources diameter up to this many points
  std::size_t sweeps = 4;                   ///< farthest-point sweeps otherwise
};

/// Throws PreconditionError if the boundary is empty and DisconnectedError
/// if the graph is not connected.
RadiiReport radii_report(const SampledManifold& m, const RadiiOptions& opts = {});

/// Graph distance from every point to the boundary set.
std::vector<double> distance_to_boundary(const SampledManifold& m);

/// Per-point nearest and second-nearest boundary distances, the second
/// restricted to footpoints at chord >= max(3h, sqrt(2) d1) from the first.
struct FootpointDistances {
  std::vector<double> d1, d2;
  std::vector<Index> foot1, foot2;
};
FootpointDistances boundary_footpoints(const SampledManifold& m);

/// Graph diameter: exact below the limit, otherwise repeated double sweeps.
double graph_diameter(const SampledManifold& m, const RadiiOptions& opts, bool* exact = nullptr);

}  // namespace cgkit
