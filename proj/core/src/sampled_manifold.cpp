#include "cgkit/sampled_manifold.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <thread>
#include <unordered_map>

#include "cgkit/error.hpp"

namespace cgkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using QueueItem = std::pair<double, Index>;
using MinQueue = std::priority_queue<QueueItem, std::vector<QueueItem>, std::greater<>>;

}  // namespace

SampledManifold::SampledManifold(std::size_t dim, std::vector<double> coords, std::vector<Edge> edges,
                                 std::vector<bool> boundary, double mesh_scale)
    : dim_(dim), coords_(std::move(coords)), boundary_(std::move(boundary)), h_(mesh_scale) {
  if (dim_ == 0) throw PreconditionError("SampledManifold: dim must be > 0");
  if (coords_.size() != boundary_.size() * dim_)
    throw PreconditionError("SampledManifold: coordinate count does not match point count");
  if (!(h_ > 0.0)) throw PreconditionError("SampledManifold: mesh_scale must be > 0");
  const std::size_t n = boundary_.size();

  for (Edge& e : edges) {
    if (e.u >= n || e.v >= n) throw PreconditionError("SampledManifold: edge index out of range");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (const Edge& e : edges) {
    if (e.u == e.v) continue;
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) continue;
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw PreconditionError("SampledManifold: edge lengths must be positive and finite");
    edges_.push_back(e);
  }

  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : edges_) ++degree[e.u], ++degree[e.v];
  offset_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) offset_[i + 1] = offset_[i] + degree[i];
  adj_.resize(offset_[n]);
  std::vector<std::size_t> fill(offset_.begin(), offset_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[fill[e.u]++] = {e.v, e.length};
    adj_[fill[e.v]++] = {e.u, e.length};
  }
}

std::vector<Index> SampledManifold::boundary_indices() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i)
    if (boundary_[i]) out.push_back(i);
  return out;
}

double SampledManifold::chord(Index i, Index j) const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) {
    const double t = coords_[i * dim_ + k] - coords_[j * dim_ + k];
    s += t * t;
  }
  return std::sqrt(s);
}

std::vector<std::size_t> SampledManifold::component_sizes() const {
  const std::size_t n = size();
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> sizes;
  std::vector<Index> stack;
  for (Index s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::size_t count = 0;
    stack.push_back(s);
    seen[s] = 1;
    while (!stack.empty()) {
      const Index v = stack.back();
      stack.pop_back();
      ++count;
      for (const Neighbor& nb : neighbors(v))
        if (!seen[nb.v]) seen[nb.v] = 1, stack.push_back(nb.v);
    }
    sizes.push_back(count);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

void SampledManifold::require_connected() const {
  auto sizes = component_sizes();
  if (sizes.size() > 1)
    throw DisconnectedError("neighborhood graph has " + std::to_string(sizes.size()) + " components",
                            std::move(sizes));
}

std::vector<std::vector<Neighbor>> SampledManifold::boundary_adjacency() const {
  std::vector<std::vector<Neighbor>> adj(size());
  for (const Edge& e : edges_)
    if (boundary_[e.u] && boundary_[e.v]) {
      adj[e.u].push_back({e.v, e.length});
      adj[e.v].push_back({e.u, e.length});
    }
  return adj;
}

SampledManifold build_neighbor_graph(std::size_t dim, std::vector<double> coords,
                                     std::vector<bool> boundary, double h,
                                     const NeighborGraphOptions& opts) {
  if (dim == 0 || coords.size() != boundary.size() * dim)
    throw PreconditionError("build_neighbor_graph: coordinate/boundary size mismatch");
  if (!(h > 0.0) || !(opts.stencil > 0.0)) throw PreconditionError("build_neighbor_graph: h, stencil > 0");
  const std::size_t n = boundary.size();
  const double R = opts.stencil * h;
  const std::size_t hd = std::min<std::size_t>(dim, 4);

  auto cell_of = [&](Index i, std::size_t k) {
    return static_cast<long long>(std::floor(coords[i * dim + k] / R));
  };
  auto key_of = [](const long long* c, std::size_t hd_) {
    std::uint64_t key = 1469598103934665603ull;
    for (std::size_t k = 0; k < hd_; ++k) key = (key ^ static_cast<std::uint64_t>(c[k])) * 1099511628211ull;
    return key;
  };
  std::unordered_map<std::uint64_t, std::vector<Index>> grid;
  grid.reserve(n);
  for (Index i = 0; i < n; ++i) {
    long long c[4];
    for (std::size_t k = 0; k < hd; ++k) c[k] = cell_of(i, k);
    grid[key_of(c, hd)].push_back(i);
  }

  auto dist = [&](Index i, Index j) {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double t = coords[i * dim + k] - coords[j * dim + k];
      s += t * t;
    }
    return std::sqrt(s);
  };
  auto accepted = [&](Index i, Index j) {
    return !opts.accept || opts.accept(std::span<const double>(coords.data() + i * dim, dim),
                                       std::span<const double>(coords.data() + j * dim, dim));
  };

  std::size_t offsets = 1;
  for (std::size_t k = 0; k < hd; ++k) offsets *= 3;
  std::vector<Edge> edges;
  std::vector<std::size_t> degree(n, 0);
  for (Index i = 0; i < n; ++i) {
    long long base[4], c[4];
    for (std::size_t k = 0; k < hd; ++k) base[k] = cell_of(i, k);
    for (std::size_t o = 0; o < offsets; ++o) {
      std::size_t code = o;
      for (std::size_t k = 0; k < hd; ++k, code /= 3) c[k] = base[k] + static_cast<long long>(code % 3) - 1;
      const auto it = grid.find(key_of(c, hd));
      if (it == grid.end()) continue;
      for (Index j : it->second) {
        if (j <= i) continue;
        const double d = dist(i, j);
        if (d > 0.0 && d <= R && accepted(i, j)) {
          edges.push_back({i, j, d});
          ++degree[i], ++degree[j];
        }
      }
    }
  }

  if (opts.min_degree > 0) {
    for (Index i = 0; i < n; ++i) {
      if (degree[i] >= opts.min_degree) continue;
      std::vector<std::pair<double, Index>> cand;
      for (Index j = 0; j < n; ++j)
        if (j != i && dist(i, j) > R && accepted(i, j)) cand.push_back({dist(i, j), j});
      const std::size_t need = std::min(opts.min_degree - degree[i], cand.size());
      std::partial_sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(need), cand.end());
      for (std::size_t a = 0; a < need; ++a) {
        edges.push_back({i, cand[a].second, cand[a].first});
        ++degree[i], ++degree[cand[a].second];
      }
    }
  }
  return SampledManifold(dim, std::move(coords), std::move(edges), std::move(boundary), h);
}

ShortestPathTree shortest_path_tree(const SampledManifold& m, Index source) {
  const std::size_t n = m.size();
  if (source >= n) throw PreconditionError("shortest_path_tree: source out of range");
  ShortestPathTree t{std::vector<double>(n, kInf), std::vector<Index>(n, n)};
  MinQueue q;
  t.dist[source] = 0.0;
  t.parent[source] = source;
  q.push({0.0, source});
  while (!q.empty()) {
    const auto [d, v] = q.top();
    q.pop();
    if (d > t.dist[v]) continue;
    for (const Neighbor& nb : m.neighbors(v)) {
      const double nd = d + nb.w;
      if (nd < t.dist[nb.v]) {
        t.dist[nb.v] = nd;
        t.parent[nb.v] = v;
        q.push({nd, nb.v});
      }
    }
  }
  return t;
}

std::vector<double> multi_source_dijkstra(const SampledManifold& m, std::span<const Index> sources,
                                          std::vector<Index>* nearest) {
  const std::size_t n = m.size();
  std::vector<double> dist(n, kInf);
  std::vector<Index> from(n, n);
  MinQueue q;
  for (Index s : sources) {
    if (s >= n) throw PreconditionError("multi_source_dijkstra: source out of range");
    dist[s] = 0.0;
    from[s] = s;
    q.push({0.0, s});
  }
  while (!q.empty()) {
    const auto [d, v] = q.top();
    q.pop();
    if (d > dist[v]) continue;
    for (const Neighbor& nb : m.neighbors(v)) {
      const double nd = d + nb.w;
      if (nd < dist[nb.v]) {
        dist[nb.v] = nd;
        from[nb.v] = from[v];
        q.push({nd, nb.v});
      }
    }
  }
  if (nearest) *nearest = std::move(from);
  return dist;
}

std::vector<double> dijkstra(const SampledManifold& m, Index source) {
  const Index s[1] = {source};
  return multi_source_dijkstra(m, s);
}

namespace {

// Fills rows [0, rows) of a rows x cols matrix; row r is computed by fn(r, out).
template <class Fn>
void parallel_rows(std::size_t rows, unsigned jobs, Fn fn) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(rows, 1))));
  if (jobs == 1) {
    for (std::size_t r = 0; r < rows; ++r) fn(r);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t r = t; r < rows; r += jobs) fn(r);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

FiniteMetricSpace intrinsic_metric_on(const SampledManifold& m, std::span<const Index> subset,
                                      unsigned jobs) {
  m.require_connected();
  const std::size_t k = subset.size();
  if (k > kMaxAllPairs)
    throw PreconditionError("intrinsic metric capped at " + std::to_string(kMaxAllPairs) +
                            " points; reduce with an eps-net first");
  std::vector<double> d(k * k, 0.0);
  parallel_rows(k, jobs, [&](std::size_t r) {
    const auto row = dijkstra(m, subset[r]);
    for (std::size_t c = 0; c < k; ++c) d[r * k + c] = row[subset[c]];
  });
  // Symmetrize exactly (floating sums along reversed paths may differ in the
  // last bit).
  for (std::size_t r = 0; r < k; ++r) {
    d[r * k + r] = 0.0;
    for (std::size_t c = r + 1; c < k; ++c) {
      const double v = std::min(d[r * k + c], d[c * k + r]);
      d[r * k + c] = d[c * k + r] = v;
    }
  }
  return FiniteMetricSpace(k, std::move(d));
}

FiniteMetricSpace intrinsic_metric(const SampledManifold& m, unsigned jobs) {
  std::vector<Index> all(m.size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  return intrinsic_metric_on(m, all, jobs);
}

std::vector<Index> manifold_eps_net(const SampledManifold& m, double eps, Index start) {
  if (!(eps > 0.0)) throw PreconditionError("manifold_eps_net: eps must be > 0");
  if (m.size() == 0) return {};
  if (start >= m.size()) throw PreconditionError("manifold_eps_net: start out of range");
  std::vector<Index> net{start};
  std::vector<double> gap = dijkstra(m, start);
  // Incremental farthest-point sampling: each new center only lowers gaps
  // in its own Dijkstra ball, so the relaxation stops early.
  MinQueue q;
  for (;;) {
    const auto it = std::max_element(gap.begin(), gap.end());
    if (*it <= eps) break;
    const Index far = static_cast<Index>(it - gap.begin());
    net.push_back(far);
    gap[far] = 0.0;
    q.push({0.0, far});
    while (!q.empty()) {
      const auto [d, v] = q.top();
      q.pop();
      if (d > gap[v]) continue;
      for (const Neighbor& nb : m.neighbors(v)) {
        const double nd = d + nb.w;
        if (nd < gap[nb.v]) {
          gap[nb.v] = nd;
          q.push({nd, nb.v});
        }
      }
    }
  }
  return net;
}

std::vector<Index> graph_geodesic(const SampledManifold& m, Index p, Index q) {
  if (p >= m.size() || q >= m.size()) throw PreconditionError("graph_geodesic: index out of range");
  const auto t = shortest_path_tree(m, p);
  if (t.parent[q] == m.size()) throw DisconnectedError("graph_geodesic: q unreachable from p", {});
  std::vector<Index> path{q};
  while (path.back() != p) path.push_back(t.parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

double graph_path_length(const SampledManifold& m, std::span<const Index> path) {
  double s = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    double w = kInf;
    for (const Neighbor& nb : m.neighbors(path[i - 1]))
      if (nb.v == path[i]) w = std::min(w, nb.w);
    if (w == kInf) throw PreconditionError("graph_path_length: consecutive vertices not adjacent");
    s += w;
  }
  return s;
}

double hausdorff_distance(const SampledManifold& m, std::span<const Index> A, std::span<const Index> B) {
  if (A.empty() || B.empty()) throw PreconditionError("hausdorff_distance: empty subset");
  const auto to_b = multi_source_dijkstra(m, B);
  const auto to_a = multi_source_dijkstra(m, A);
  double h = 0.0;
  for (Index a : A) h = std::max(h, to_b[a]);
  for (Index b : B) h = std::max(h, to_a[b]);
  return h;
}

}  // namespace cgkit
