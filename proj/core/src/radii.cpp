#include "cgkit/radii.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <tuple>

#include "cgkit/error.hpp"

namespace cgkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double eccentricity(const std::vector<double>& d, Index* arg) {
  double best = 0.0;
  for (Index i = 0; i < d.size(); ++i)
    if (std::isfinite(d[i]) && d[i] >= best) best = d[i], *arg = i;
  return best;
}

// Diameter of the component containing `seed` in an explicit adjacency list.
double component_diameter(const std::vector<std::vector<Neighbor>>& adj, const std::vector<Index>& comp,
                          std::size_t exact_limit, std::size_t sweeps) {
  const std::size_t n = adj.size();
  auto run = [&](Index s) {
    std::vector<double> d(n, kInf);
    using Item = std::pair<double, Index>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
    d[s] = 0.0;
    q.push({0.0, s});
    while (!q.empty()) {
      const auto [dv, v] = q.top();
      q.pop();
      if (dv > d[v]) continue;
      for (const Neighbor& nb : adj[v])
        if (dv + nb.w < d[nb.v]) d[nb.v] = dv + nb.w, q.push({d[nb.v], nb.v});
    }
    return d;
  };
  double diam = 0.0;
  Index arg = comp.front();
  if (comp.size() <= exact_limit) {
    for (Index s : comp) diam = std::max(diam, eccentricity(run(s), &arg));
    return diam;
  }
  Index cur = comp.front();
  for (std::size_t s = 0; s < sweeps; ++s) {
    diam = std::max(diam, eccentricity(run(cur), &arg));
    cur = arg;
  }
  return diam;
}

}  // namespace

std::vector<double> distance_to_boundary(const SampledManifold& m) {
  const auto b = m.boundary_indices();
  if (b.empty()) throw PreconditionError("manifold has an empty boundary");
  return multi_source_dijkstra(m, b);
}

FootpointDistances boundary_footpoints(const SampledManifold& m) {
  const std::size_t n = m.size();
  const auto bnd = m.boundary_indices();
  if (bnd.empty()) throw PreconditionError("manifold has an empty boundary");
  const double h = m.mesh_scale();
  FootpointDistances f{std::vector<double>(n, kInf), std::vector<double>(n, kInf),
                       std::vector<Index>(n, n), std::vector<Index>(n, n)};
  std::vector<unsigned char> labels(n, 0);

  // Label-setting search with at most two labels per vertex whose sources
  // are genuinely different footpoints.
  using Item = std::tuple<double, Index, Index>;  // distance, vertex, source
  std::priority_queue<Item, std::vector<Item>, std::greater<>> q;
  for (Index b : bnd) q.push({0.0, b, b});
  while (!q.empty()) {
    const auto [d, v, src] = q.top();
    q.pop();
    if (labels[v] == 0) {
      f.d1[v] = d, f.foot1[v] = src, labels[v] = 1;
    } else if (labels[v] == 1) {
      if (m.chord(src, f.foot1[v]) < std::max(3.0 * h, std::sqrt(2.0) * f.d1[v])) continue;
      f.d2[v] = d, f.foot2[v] = src, labels[v] = 2;
    } else {
      continue;
    }
    for (const Neighbor& nb : m.neighbors(v))
      if (labels[nb.v] < 2) q.push({d + nb.w, nb.v, src});
  }
  return f;
}

double graph_diameter(const SampledManifold& m, const RadiiOptions& opts, bool* exact) {
  m.require_connected();
  const std::size_t n = m.size();
  if (n == 0) return 0.0;
  double diam = 0.0;
  Index arg = 0;
  if (n <= opts.exact_diameter_limit) {
    for (Index s = 0; s < n; ++s) diam = std::max(diam, eccentricity(dijkstra(m, s), &arg));
    if (exact) *exact = true;
    return diam;
  }
  Index cur = 0;
  for (std::size_t s = 0; s < std::max<std::size_t>(opts.sweeps, 2); ++s) {
    diam = std::max(diam, eccentricity(dijkstra(m, cur), &arg));
    cur = arg;
  }
  if (exact) *exact = false;
  return diam;
}

RadiiReport radii_report(const SampledManifold& m, const RadiiOptions& opts) {
  if (m.boundary_indices().empty()) throw PreconditionError("radii_report: empty boundary");
  m.require_connected();
  RadiiReport r;
  r.mesh_scale = m.mesh_scale();

  const auto f = boundary_footpoints(m);
  for (Index v = 0; v < m.size(); ++v) {
    if (f.d1[v] > r.inradius) r.inradius = f.d1[v], r.inradius_point = v;
    const bool unique = f.d2[v] - f.d1[v] >= m.mesh_scale();
    if (unique && f.d1[v] > r.max_reach) r.max_reach = f.d1[v], r.reach_point = v;
  }

  r.diameter = graph_diameter(m, opts, &r.diameter_exact);

  const auto badj = m.boundary_adjacency();
  std::vector<char> seen(m.size(), 0);
  for (Index s : m.boundary_indices()) {
    if (seen[s]) continue;
    std::vector<Index> comp{s};
    seen[s] = 1;
    for (std::size_t k = 0; k < comp.size(); ++k)
      for (const Neighbor& nb : badj[comp[k]])
        if (!seen[nb.v]) seen[nb.v] = 1, comp.push_back(nb.v);
    ++r.boundary_components;
    r.boundary_diameter = std::max(
        r.boundary_diameter, component_diameter(badj, comp, opts.exact_diameter_limit, opts.sweeps));
  }
  return r;
}

}  // namespace cgkit
