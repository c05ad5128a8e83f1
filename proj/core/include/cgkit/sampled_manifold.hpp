#pragma once

// Point samples of a manifold-with-boundary together with a weighted
// neighborhood graph; shortest paths in the graph stand in for the length
// metric.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cgkit/metric_space.hpp"

namespace cgkit {

struct Edge {
  Index u = 0, v = 0;
  double length = 0.0;
};

struct Neighbor {
  Index v;
  double w;
};

class SampledManifold {
 public:
  SampledManifold() = default;

  /// coords: n*dim row-major. Edges are undirected; self loops and
  /// duplicates are dropped, lengths must be > 0. mesh_scale is the sampling
  /// resolution h (typical spacing), used for every tolerance downstream.
  SampledManifold(std::size_t dim, std::vector<double> coords, std::vector<Edge> edges,
                  std::vector<bool> boundary, double mesh_scale);

  std::size_t size() const noexcept { return boundary_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  double mesh_scale() const noexcept { return h_; }

  std::span<const double> point(Index i) const noexcept { return {coords_.data() + i * dim_, dim_}; }
  const std::vector<double>& coords() const noexcept { return coords_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<bool>& boundary() const noexcept { return boundary_; }
  bool is_boundary(Index i) const noexcept { return boundary_[i]; }
  std::vector<Index> boundary_indices() const;

  std::span<const Neighbor> neighbors(Index i) const noexcept {
    return {adj_.data() + offset_[i], offset_[i + 1] - offset_[i]};
  }

  /// Euclidean distance in the ambient space.
  double chord(Index i, Index j) const noexcept;

  /// Sizes of the connected components (largest first).
  std::vector<std::size_t> component_sizes() const;
  bool connected() const { return component_sizes().size() <= 1; }
  /// Throws DisconnectedError listing component sizes.
  void require_connected() const;

  /// Graph restricted to the boundary-flagged vertices (same indices,
  /// edges with both ends on the boundary).
  std::vector<std::vector<Neighbor>> boundary_adjacency() const;

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<Edge> edges_;
  std::vector<bool> boundary_;
  double h_ = 0.0;
  std::vector<std::size_t> offset_{0};
  std::vector<Neighbor> adj_;
};

struct NeighborGraphOptions {
  double stencil = 3.0;        ///< connect pairs closer than stencil * h
  std::size_t min_degree = 0;  ///< k-nearest fallback for sparse regions
  /// Optional veto, e.g. edges crossing a removed ball.
  std::function<bool(std::span<const double>, std::span<const double>)> accept;
};

/// Radius graph (cap stencil * h) with a k-nearest fallback, built by
/// uniform grid hashing on the first min(dim, 4) coordinates.
SampledManifold build_neighbor_graph(std::size_t dim, std::vector<double> coords,
                                     std::vector<bool> boundary, double h,
                                     const NeighborGraphOptions& opts = {});

struct ShortestPathTree {
  std::vector<double> dist;
  std::vector<Index> parent;  // parent[source] == source; unreachable: size()
};

ShortestPathTree shortest_path_tree(const SampledManifold& m, Index source);
std::vector<double> dijkstra(const SampledManifold& m, Index source);

/// Distance to the nearest source; `nearest` (if given) receives the source
/// realizing it.
std::vector<double> multi_source_dijkstra(const SampledManifold& m, std::span<const Index> sources,
                                          std::vector<Index>* nearest = nullptr);

/// Largest point count for which the full intrinsic matrix is built.
inline constexpr std::size_t kMaxAllPairs = 5000;

/// All-pairs graph distances. Throws DisconnectedError or, above
/// kMaxAllPairs points, PreconditionError (reduce with an eps-net first).
FiniteMetricSpace intrinsic_metric(const SampledManifold& m, unsigned jobs = 1);

/// Graph distances among a subset (computed on the full graph).
FiniteMetricSpace intrinsic_metric_on(const SampledManifold& m, std::span<const Index> subset,
                                      unsigned jobs = 1);

/// Farthest-point eps-net in the graph metric.
std::vector<Index> manifold_eps_net(const SampledManifold& m, double eps, Index start = 0);

/// Vertex path realizing the graph distance from p to q.
std::vector<Index> graph_geodesic(const SampledManifold& m, Index p, Index q);
double graph_path_length(const SampledManifold& m, std::span<const Index> path);

/// Hausdorff distance between vertex subsets in the graph metric.
double hausdorff_distance(const SampledManifold& m, std::span<const Index> A,
                          std::span<const Index> B);

}  // namespace cgkit
