#include "cgkit/gh.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "cgkit/error.hpp"
#include "cgkit/sampled_manifold.hpp"

namespace cgkit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pair_gap(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, double dx, double dy) {
  const bool ix = X.infinite(dx), iy = Y.infinite(dy);
  if (ix && iy) return 0.0;
  if (ix || iy) return kInf;
  return std::abs(dx - dy);
}

// max_j |d_X(x, j) - d_Y(y, f j)| over all j (x reassigned to y).
double row_distortion(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::span<const Index> f, Index x,
                      Index y) {
  double w = 0.0;
  const auto rx = X.row(x), ry = Y.row(y);
  for (Index j = 0; j < f.size(); ++j)
    if (j != x) w = std::max(w, pair_gap(X, Y, rx[j], ry[f[j]]));
  return w;
}

}  // namespace

ApproxMeasure measure_approx(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                             std::span<const Index> assignment) {
  if (assignment.size() != X.size()) throw PreconditionError("approx map: assignment is not total");
  for (Index v : assignment)
    if (v >= Y.size()) throw PreconditionError("approx map: assignment out of range");
  ApproxMeasure m;
  const std::size_t n = X.size();
  for (Index i = 0; i < n; ++i) {
    const auto rx = X.row(i), ry = Y.row(assignment[i]);
    for (Index j = i + 1; j < n; ++j) {
      const double g = pair_gap(X, Y, rx[j], ry[assignment[j]]);
      if (g > m.distortion) m.distortion = g, m.worst_i = i, m.worst_j = j;
    }
  }
  std::vector<double> gap(Y.size(), kInf);
  for (Index i = 0; i < n; ++i) {
    const auto ry = Y.row(assignment[i]);
    for (Index y = 0; y < Y.size(); ++y) gap[y] = std::min(gap[y], Y.infinite(ry[y]) ? kInf : ry[y]);
  }
  for (Index y = 0; y < Y.size(); ++y)
    if (gap[y] > m.net_radius) m.net_radius = gap[y], m.net_witness = y;
  return m;
}

ApproxMap make_approx_map(std::shared_ptr<const FiniteMetricSpace> source,
                          std::shared_ptr<const FiniteMetricSpace> target, std::vector<Index> assignment) {
  if (!source || !target) throw PreconditionError("approx map: null space");
  ApproxMap f;
  const auto m = measure_approx(*source, *target, assignment);
  f.source = std::move(source);
  f.target = std::move(target);
  f.assignment = std::move(assignment);
  f.distortion = m.distortion;
  f.net_radius = m.net_radius;
  f.worst_i = m.worst_i;
  f.worst_j = m.worst_j;
  f.net_witness = m.net_witness;
  return f;
}

double verify_approx(const ApproxMap& f) {
  if (!f.source || !f.target) throw PreconditionError("verify_approx: null space");
  const auto m = measure_approx(*f.source, *f.target, f.assignment);
  return std::max(m.distortion, m.net_radius);
}

namespace {

std::vector<Index> greedy_from_anchors(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                       const std::vector<Index>& anchors, Index first_image) {
  std::vector<Index> img{first_image};
  for (std::size_t a = 1; a < anchors.size(); ++a) {
    Index best = 0;
    double best_w = kInf;
    for (Index y = 0; y < Y.size(); ++y) {
      double w = 0.0;
      for (std::size_t l = 0; l < a && w < best_w; ++l)
        w = std::max(w, pair_gap(X, Y, X(anchors[a], anchors[l]), Y(y, img[l])));
      if (w < best_w) best_w = w, best = y;
    }
    img.push_back(best);
  }
  std::vector<Index> f(X.size());
  for (Index x = 0; x < X.size(); ++x) {
    Index best = 0;
    double best_w = kInf;
    for (Index y = 0; y < Y.size(); ++y) {
      double w = 0.0;
      for (std::size_t l = 0; l < anchors.size() && w < best_w; ++l)
        w = std::max(w, pair_gap(X, Y, X(x, anchors[l]), Y(y, img[l])));
      if (w < best_w) best_w = w, best = y;
    }
    f[x] = best;
  }
  return f;
}

// Target points sorted by distance from y (first `count`).
std::vector<Index> nearest_targets(const FiniteMetricSpace& Y, Index y, std::size_t count) {
  std::vector<Index> idx(Y.size());
  std::iota(idx.begin(), idx.end(), Index{0});
  count = std::min(count, idx.size());
  std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count), idx.end(),
                    [&](Index a, Index b) { return Y(y, a) < Y(y, b) || (Y(y, a) == Y(y, b) && a < b); });
  idx.resize(count);
  return idx;
}

void local_descent(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::vector<Index>& f,
                   const SearchOptions& o) {
  auto meas = measure_approx(X, Y, f);
  double eps = std::max(meas.distortion, meas.net_radius);
  for (std::size_t move = 0; move < o.budget && eps > 0.0; ++move) {
    bool improved = false;
    if (meas.distortion >= meas.net_radius) {
      for (Index x : {meas.worst_i, meas.worst_j}) {
        const Index keep = f[x];
        Index best_y = keep;
        double best_w = row_distortion(X, Y, f, x, keep);
        for (Index y : nearest_targets(Y, keep, o.candidates)) {
          const double w = row_distortion(X, Y, f, x, y);
          if (w < best_w) best_w = w, best_y = y;
        }
        if (best_y == keep) continue;
        f[x] = best_y;
        const auto m2 = measure_approx(X, Y, f);
        if (std::max(m2.distortion, m2.net_radius) < eps) {
          meas = m2;
          eps = std::max(m2.distortion, m2.net_radius);
          improved = true;
          break;
        }
        f[x] = keep;
      }
    } else {
      // Cover the worst target point with the source point whose row
      // suffers least from moving there.
      const Index y = meas.net_witness;
      Index best_x = 0;
      double best_w = kInf;
      for (Index x = 0; x < X.size(); ++x) {
        const double w = row_distortion(X, Y, f, x, y);
        if (w < best_w) best_w = w, best_x = x;
      }
      const Index keep = f[best_x];
      f[best_x] = y;
      const auto m2 = measure_approx(X, Y, f);
      if (std::max(m2.distortion, m2.net_radius) < eps) {
        meas = m2;
        eps = std::max(m2.distortion, m2.net_radius);
        improved = true;
      } else {
        f[best_x] = keep;
      }
    }
    if (!improved) break;
  }
}

}  // namespace

ApproxMap search_approx(std::shared_ptr<const FiniteMetricSpace> Xp, std::shared_ptr<const FiniteMetricSpace> Yp,
                        const SearchOptions& o) {
  if (!Xp || !Yp) throw PreconditionError("search_approx: null space");
  const auto& X = *Xp;
  const auto& Y = *Yp;
  if (X.size() == 0 || Y.size() == 0) throw PreconditionError("search_approx: empty space");

  std::vector<std::vector<Index>> starts;
  if (!o.warm_start.empty()) starts.push_back(o.warm_start);
  if (X.size() == Y.size()) {
    std::vector<Index> id(X.size());
    std::iota(id.begin(), id.end(), Index{0});
    starts.push_back(std::move(id));
  }

  // Anchors: farthest-point order on X; first-anchor images: farthest-point
  // order on Y plus seeded random picks.
  std::vector<Index> anchors{0};
  {
    std::vector<double> gap(X.row(0).begin(), X.row(0).end());
    while (anchors.size() < std::min(o.anchors, X.size())) {
      const Index far = static_cast<Index>(std::max_element(gap.begin(), gap.end()) - gap.begin());
      if (gap[far] <= 0.0) break;
      anchors.push_back(far);
      for (Index i = 0; i < X.size(); ++i) gap[i] = std::min(gap[i], X(far, i));
    }
    // Start from an extremal point (the last farthest pick is peripheral).
    std::swap(anchors.front(), anchors.size() > 1 ? anchors[1] : anchors.front());
  }
  std::vector<Index> firsts;
  {
    std::vector<double> gap(Y.row(0).begin(), Y.row(0).end());
    Index cur = static_cast<Index>(std::max_element(gap.begin(), gap.end()) - gap.begin());
    firsts.push_back(cur);
    gap.assign(Y.row(cur).begin(), Y.row(cur).end());
    while (firsts.size() < std::min(o.restarts, Y.size())) {
      const Index far = static_cast<Index>(std::max_element(gap.begin(), gap.end()) - gap.begin());
      if (gap[far] <= 0.0) break;
      firsts.push_back(far);
      for (Index i = 0; i < Y.size(); ++i) gap[i] = std::min(gap[i], Y(far, i));
    }
    std::mt19937_64 rng(o.seed);
    std::uniform_int_distribution<Index> pick(0, Y.size() - 1);
    for (std::size_t r = 0; r < o.restarts / 2; ++r) firsts.push_back(pick(rng));
  }
  for (Index y0 : firsts) starts.push_back(greedy_from_anchors(X, Y, anchors, y0));

  std::vector<Index> best;
  double best_eps = kInf;
  for (auto& f : starts) {
    local_descent(X, Y, f, o);
    const auto m = measure_approx(X, Y, f);
    const double e = std::max(m.distortion, m.net_radius);
    if (e < best_eps) best_eps = e, best = f;
  }
  return make_approx_map(std::move(Xp), std::move(Yp), std::move(best));
}

GHBounds gh_bounds(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const ApproxMap* f,
                   const SearchOptions& opts) {
  auto xp = std::make_shared<const FiniteMetricSpace>(X);
  auto yp = std::make_shared<const FiniteMetricSpace>(Y);
  return gh_bounds(xp, yp, f, opts);
}

GHBounds gh_bounds(std::shared_ptr<const FiniteMetricSpace> X, std::shared_ptr<const FiniteMetricSpace> Y,
                   const ApproxMap* f, const SearchOptions& opts) {
  GHBounds b;
  b.lower = 0.5 * std::abs(X->diameter() - Y->diameter());
  b.epsilon = f ? verify_approx(*f) : search_approx(X, Y, opts).epsilon();
  b.upper = 3.0 * b.epsilon;
  if (b.lower > b.upper * (1.0 + 1e-12) + 1e-12)
    throw InconsistencyError("gh_bounds: lower bound exceeds upper bound (approximation map is inconsistent)");
  return b;
}

namespace {

// Depth-first search over maps S -> Y minimizing the distortion on S.
struct MapSearch {
  const FiniteMetricSpace& X;
  const FiniteMetricSpace& Y;
  std::vector<Index> S;
  bool need_net;
  std::vector<Index> cur;
  double best = kInf;

  void run(std::size_t depth, double worst) {
    if (worst >= best) return;
    if (depth == S.size()) {
      double eps = worst;
      if (need_net) {
        for (Index y = 0; y < Y.size() && eps < best; ++y) {
          double g = kInf;
          for (Index v : cur) g = std::min(g, Y(y, v));
          eps = std::max(eps, g);
        }
      }
      best = std::min(best, eps);
      return;
    }
    for (Index y = 0; y < Y.size(); ++y) {
      double w = worst;
      for (std::size_t l = 0; l < depth && w < best; ++l)
        w = std::max(w, pair_gap(X, Y, X(S[depth], S[l]), Y(y, cur[l])));
      if (w >= best) continue;
      cur.push_back(y);
      run(depth + 1, w);
      cur.pop_back();
    }
  }
};

}  // namespace

double exhaustive_min_epsilon(const FiniteMetricSpace& X, const FiniteMetricSpace& Y) {
  if (X.size() > 8 || Y.size() > 8) throw PreconditionError("exhaustive_min_epsilon: at most 8 points each");
  if (X.size() == 0 || Y.size() == 0) throw PreconditionError("exhaustive_min_epsilon: empty space");
  MapSearch s{X, Y, {}, true, {}, kInf};
  s.S.resize(X.size());
  std::iota(s.S.begin(), s.S.end(), Index{0});
  s.run(0, 0.0);
  return s.best;
}

double distortion_lower_bound(const FiniteMetricSpace& X, std::span<const Index> S, const FiniteMetricSpace& Y) {
  if (S.size() > 8) throw PreconditionError("distortion_lower_bound: at most 8 points");
  if (S.empty() || Y.size() == 0) throw PreconditionError("distortion_lower_bound: empty input");
  MapSearch s{X, Y, std::vector<Index>(S.begin(), S.end()), false, {}, kInf};
  s.run(0, 0.0);
  return s.best;
}

Quotient quotient_metric(const FiniteMetricSpace& Y, std::span<const Index> A) {
  if (A.empty()) throw PreconditionError("quotient_metric: empty subset");
  const std::size_t n = Y.size();
  std::vector<char> in_a(n, 0);
  for (Index a : A) {
    if (a >= n) throw PreconditionError("quotient_metric: index out of range");
    in_a[a] = 1;
  }
  const Index first = *std::min_element(A.begin(), A.end());
  Quotient q;
  q.projection.assign(n, 0);
  std::vector<Index> rep;  // quotient index -> representative Y index
  for (Index y = 0; y < n; ++y) {
    if (in_a[y] && y != first) continue;
    q.projection[y] = rep.size();
    rep.push_back(y);
  }
  q.collapsed = q.projection[first];
  for (Index y = 0; y < n; ++y)
    if (in_a[y]) q.projection[y] = q.collapsed;

  const double sentinel = Y.sentinel();
  auto clamp = [&](double v) { return sentinel > 0.0 ? std::min(v, sentinel) : v; };
  std::vector<double> to_a(n, kInf);
  for (Index y = 0; y < n; ++y)
    for (Index a : A) to_a[y] = std::min(to_a[y], Y(y, a));

  const std::size_t m = rep.size();
  std::vector<double> d(m * m, 0.0);
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) {
      double v;
      if (i == q.collapsed) v = to_a[rep[j]];
      else if (j == q.collapsed) v = to_a[rep[i]];
      else v = std::min(Y(rep[i], rep[j]), to_a[rep[i]] + to_a[rep[j]]);
      d[i * m + j] = d[j * m + i] = clamp(v);
    }
  std::vector<std::string> labels;
  if (!Y.labels().empty())
    for (Index r : rep) labels.push_back(Y.labels()[r]);
  q.metric = FiniteMetricSpace(m, std::move(d), std::move(labels), sentinel);
  return q;
}

GluingInstance glue(std::shared_ptr<const FiniteMetricSpace> Xp, std::vector<Index> a_in_x,
                    std::shared_ptr<const FiniteMetricSpace> Yp, std::vector<Index> a_in_y) {
  if (!Xp || !Yp) throw PreconditionError("glue: null space");
  if (a_in_x.empty() || a_in_x.size() != a_in_y.size()) throw PreconditionError("glue: seam lists must match");
  const auto& X = *Xp;
  const auto& Y = *Yp;
  const std::size_t nx = X.size(), ny = Y.size(), na = a_in_x.size();
  for (std::size_t k = 0; k < na; ++k)
    if (a_in_x[k] >= nx || a_in_y[k] >= ny) throw PreconditionError("glue: seam index out of range");

  GluingInstance g;
  g.x_in_z.resize(nx);
  std::iota(g.x_in_z.begin(), g.x_in_z.end(), Index{0});
  g.y_in_z.assign(ny, 0);
  std::vector<char> y_seam(ny, 0);
  for (std::size_t k = 0; k < na; ++k) y_seam[a_in_y[k]] = 1, g.y_in_z[a_in_y[k]] = a_in_x[k];
  std::size_t nz = nx;
  std::vector<Index> y_rest;  // Y indices off the seam, in order
  for (Index y = 0; y < ny; ++y)
    if (!y_seam[y]) g.y_in_z[y] = nz++, y_rest.push_back(y);

  const double sentinel = std::max(X.sentinel(), Y.sentinel());
  auto fin = [&](const FiniteMetricSpace& S, double v) { return S.infinite(v) ? kInf : v; };

  // Seam metric closed under X and Y excursions (Floyd-Warshall).
  std::vector<double> D(na * na);
  for (std::size_t a = 0; a < na; ++a)
    for (std::size_t b = 0; b < na; ++b)
      D[a * na + b] = std::min(fin(X, X(a_in_x[a], a_in_x[b])), fin(Y, Y(a_in_y[a], a_in_y[b])));
  for (std::size_t k = 0; k < na; ++k)
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t b = 0; b < na; ++b) D[a * na + b] = std::min(D[a * na + b], D[a * na + k] + D[k * na + b]);

  // g(z, b) = min_a d(z, a) + D(a, b): cheapest way to stand at seam point b.
  auto seam_reach = [&](const FiniteMetricSpace& S, const std::vector<Index>& seam, Index z) {
    std::vector<double> out(na, kInf);
    for (std::size_t a = 0; a < na; ++a) {
      const double da = fin(S, S(z, seam[a]));
      if (da == kInf) continue;
      for (std::size_t b = 0; b < na; ++b) out[b] = std::min(out[b], da + D[a * na + b]);
    }
    return out;
  };
  // Z points: all of X, then Y off the seam. Each Z point has a home space.
  struct Home {
    const FiniteMetricSpace* S;
    const std::vector<Index>* seam;
    Index idx;
  };
  std::vector<Home> home;
  for (Index x = 0; x < nx; ++x) home.push_back({&X, &a_in_x, x});
  for (Index y : y_rest) home.push_back({&Y, &a_in_y, y});
  std::vector<std::vector<double>> reach(nz);
  for (Index z = 0; z < nz; ++z) reach[z] = seam_reach(*home[z].S, *home[z].seam, home[z].idx);

  std::vector<double> d(nz * nz, 0.0);
  for (Index z = 0; z < nz; ++z)
    for (Index w = z + 1; w < nz; ++w) {
      double v = kInf;
      if (home[z].S == home[w].S) v = fin(*home[z].S, (*home[z].S)(home[z].idx, home[w].idx));
      for (std::size_t b = 0; b < na; ++b) {
        const double back = fin(*home[w].S, (*home[w].S)(home[w].idx, (*home[w].seam)[b]));
        v = std::min(v, reach[z][b] + back);
      }
      if (v == kInf) {
        if (sentinel <= 0.0) throw PreconditionError("glue: glued space has unreachable pairs and no sentinel");
        v = sentinel;
      }
      d[z * nz + w] = d[w * nz + z] = sentinel > 0.0 ? std::min(v, sentinel) : v;
    }
  g.X = std::move(Xp);
  g.Y = std::move(Yp);
  g.a_in_x = std::move(a_in_x);
  g.a_in_y = std::move(a_in_y);
  g.Z = std::make_shared<const FiniteMetricSpace>(nz, std::move(d), std::vector<std::string>{}, sentinel);
  return g;
}

GluingCheck gluing_limit_check(const GluingInstance& g, std::shared_ptr<const FiniteMetricSpace> Y_limit,
                               std::span<const Index> A_limit, const ApproxMap& f) {
  if (!g.X || !g.Y || !g.Z || !Y_limit) throw PreconditionError("gluing_limit_check: incomplete instance");
  if (f.assignment.size() != g.Y->size()) throw PreconditionError("gluing_limit_check: f must be defined on Y");
  GluingCheck c;
  auto q = quotient_metric(*Y_limit, A_limit);
  c.limit = std::make_shared<const FiniteMetricSpace>(std::move(q.metric));

  const std::size_t nz = g.Z->size();
  std::vector<Index> F(nz, q.collapsed);  // X \ A goes to pi(A)
  for (Index y = 0; y < g.Y->size(); ++y) F[g.y_in_z[y]] = q.projection[f.assignment[y]];
  c.F = make_approx_map(g.Z, c.limit, std::move(F));
  c.epsilon = c.F.epsilon();
  c.worst_i = c.F.worst_i;
  c.worst_j = c.F.worst_j;

  c.diam_x = g.X->diameter();
  c.eps_f = verify_approx(f);
  std::vector<Index> fa;
  for (Index a : g.a_in_y) fa.push_back(f.assignment[a]);
  c.drift = hausdorff_distance(fa, A_limit, *Y_limit);
  c.bound = c.diam_x + 2.0 * c.eps_f + c.drift;
  c.pass = c.epsilon <= c.bound + 1e-12;
  return c;
}

FiniteMetricSpace warped_product(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, std::span<const double> phi,
                                 std::size_t knn_x, std::size_t knn_y, unsigned jobs) {
  if (phi.size() != Y.size()) throw PreconditionError("warped_product: one warp value per Y point");
  for (double v : phi)
    if (!(v > 0.0) || !std::isfinite(v)) throw PreconditionError("warped_product: warp values must be positive");
  const std::size_t nx = X.size(), ny = Y.size(), n = nx * ny;
  if (n > kMaxAllPairs) throw PreconditionError("warped_product: product exceeds the all-pairs cap");
  auto knn = [](const FiniteMetricSpace& S, Index i, std::size_t k) {
    std::vector<Index> idx;
    for (Index j = 0; j < S.size(); ++j)
      if (j != i && !S.infinite(S(i, j))) idx.push_back(j);
    k = std::min(k, idx.size());
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](Index a, Index b) { return S(i, a) < S(i, b) || (S(i, a) == S(i, b) && a < b); });
    idx.resize(k);
    return idx;
  };
  std::vector<std::vector<Index>> nx_of(nx), ny_of(ny);
  for (Index x = 0; x < nx; ++x) nx_of[x] = knn(X, x, knn_x);
  for (Index y = 0; y < ny; ++y) ny_of[y] = knn(Y, y, knn_y);

  std::vector<Edge> edges;
  for (Index x = 0; x < nx; ++x)
    for (Index y = 0; y < ny; ++y) {
      const Index v = x * ny + y;
      for (Index x2 : nx_of[x]) edges.push_back({v, x2 * ny + y, phi[y] * X(x, x2)});
      for (Index y2 : ny_of[y]) {
        edges.push_back({v, x * ny + y2, Y(y, y2)});
        const double pm = 0.5 * (phi[y] + phi[y2]);
        for (Index x2 : nx_of[x]) edges.push_back({v, x2 * ny + y2, std::hypot(pm * X(x, x2), Y(y, y2))});
      }
    }
  SampledManifold g(1, std::vector<double>(n, 0.0), std::move(edges), std::vector<bool>(n, false), 1.0);
  return intrinsic_metric(g, jobs);
}

ApproxMap warped_limit_map(const FiniteMetricSpace& Xi, const FiniteMetricSpace& X, const ApproxMap& f,
                           const FiniteMetricSpace& Y, std::span<const double> phi, std::size_t knn_x,
                           std::size_t knn_y, unsigned jobs) {
  if (f.assignment.size() != Xi.size()) throw PreconditionError("warped_limit_map: f must be defined on X_i");
  auto src = std::make_shared<const FiniteMetricSpace>(warped_product(Xi, Y, phi, knn_x, knn_y, jobs));
  auto dst = std::make_shared<const FiniteMetricSpace>(warped_product(X, Y, phi, knn_x, knn_y, jobs));
  const std::size_t ny = Y.size();
  std::vector<Index> F(Xi.size() * ny);
  for (Index x = 0; x < Xi.size(); ++x)
    for (Index y = 0; y < ny; ++y) F[x * ny + y] = f.assignment[x] * ny + y;
  return make_approx_map(std::move(src), std::move(dst), std::move(F));
}

}  // namespace cgkit
