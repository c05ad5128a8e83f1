#include "cgkit/collar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cgkit/error.hpp"
#include "cgkit/gh.hpp"

namespace cgkit {

namespace {

// exp() of arguments below this would produce subnormals; the result is
// treated as 0 (phi has already converged to eps to machine precision).
constexpr double kExpFloor = -700.0;

double grid_min(const WarpProfile& p, std::size_t points, auto&& expr) {
  if (points < 2) points = 2;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < points; ++j) {
    const double t = p.t0() * static_cast<double>(j) / static_cast<double>(points - 1);
    best = std::min(best, expr(t));
  }
  return best;
}

}  // namespace

WarpProfile WarpProfile::make(double lambda_bar, double eps, double t0) {
  if (!std::isfinite(lambda_bar) || lambda_bar > 0.0) throw DomainError("warp_profile: lambda_bar must be <= 0");
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("warp_profile: eps must lie in (0, 1)");
  if (!(t0 > 0.0) || !std::isfinite(t0)) throw DomainError("warp_profile: t0 must be > 0");
  WarpProfile p;
  p.lambda_ = lambda_bar;
  p.eps_ = eps;
  p.t0_ = t0;
  return p;
}

double WarpProfile::ratio() const { return std::abs(lambda_) * t0_ / (1.0 - eps_); }

namespace {

struct Terms {
  double E, A, du, ddu;
};

// Exponential factor and the derivatives of u(t) = 1/(t0 - t) - 1/t0.
Terms terms(double lambda, double eps, double t0, double t) {
  const double A = lambda * t0 * t0 / (1.0 - eps);
  const double s = t0 - t;
  const double u = t / (t0 * s);
  const double arg = A * u;
  return {arg < kExpFloor ? 0.0 : std::exp(arg), A, 1.0 / (s * s), 2.0 / (s * s * s)};
}

}  // namespace

double WarpProfile::phi(double t) const {
  if (flat()) return 1.0;
  if (t >= t0_) return eps_;
  const Terms c = terms(lambda_, eps_, t0_, t);
  return (1.0 - eps_) * c.E + eps_;
}

double WarpProfile::dphi(double t) const {
  if (flat() || t >= t0_) return 0.0;
  const Terms c = terms(lambda_, eps_, t0_, t);
  if (c.E == 0.0) return 0.0;
  return (1.0 - eps_) * c.E * c.A * c.du;
}

double WarpProfile::ddphi(double t) const {
  if (flat() || t >= t0_) return 0.0;
  const Terms c = terms(lambda_, eps_, t0_, t);
  if (c.E == 0.0) return 0.0;
  return (1.0 - eps_) * c.E * (c.A * c.ddu + c.A * c.A * c.du * c.du);
}

double radial_ratio_threshold() { return 6.0 / (3.0 - std::sqrt(3.0)); }

double grid_min_radial(const WarpProfile& p, std::size_t grid_points) {
  return grid_min(p, grid_points, [&](double t) { return -p.ddphi(t) / p.phi(t); });
}

double grid_min_tangential(const WarpProfile& p, double K, std::size_t grid_points) {
  return grid_min(p, grid_points, [&](double t) {
    const double f = p.phi(t), df = p.dphi(t);
    return (K - df * df) / (f * f);
  });
}

CurvatureBound radial_bound(const WarpProfile& p) {
  if (p.flat()) return {0.0, true};
  if (p.ratio() > radial_ratio_threshold()) {
    const double lb = p.lambda_bar();
    const double bracket = 2.0 * lb / p.t0() + lb * lb / (1.0 - p.eps());
    return {-std::max(0.0, bracket) / p.eps(), true};
  }
  return {grid_min_radial(p, 100000), false};
}

CurvatureBound tangential_bound(const WarpProfile& p, double K) {
  if (p.flat()) return {K, true};
  if (p.ratio() > 2.0) {
    const double lb = p.lambda_bar();
    return {(std::min(K, 0.0) - lb * lb) / (p.eps() * p.eps()), true};
  }
  return {grid_min_tangential(p, K, 100000), false};
}

WarpProfile adaptive_profile(int i) { return adaptive_profile(i, i >= 1 ? -1.0 / i : 0.0); }

WarpProfile adaptive_profile(int i, double lambda_minus) {
  if (i < 1) throw PreconditionError("adaptive_profile: i must be >= 1");
  const double di = static_cast<double>(i);
  WarpProfile p;
  p.t0_ = 10.0 / std::sqrt(di);
  p.eps_ = 1.0 - std::pow(di, -1.5);
  p.lambda_ = std::min(0.0, lambda_minus);
  if (p.eps_ < 0.01) {
    p.eps_ = 0.01;
    p.clamped_ = true;
  }
  return p;
}

ProjectionBounds projection_bounds(const WarpProfile& p, double d) {
  const double e = p.outer_scale();
  return {1.0 / e, std::max(2.0 * p.t0(), (1.0 / e - 1.0) * (d + 2.0 * p.t0()))};
}

namespace {

// Layer grid balancing equal phi-variation with equal t-steps.
std::vector<double> layer_grid(const WarpProfile& p, std::size_t layers, double max_step) {
  const double t0 = p.t0();
  const double drop = 1.0 - p.outer_scale();
  auto weight = [&](double t) {
    if (p.flat() || drop <= 0.0) return t / t0;
    return 0.5 * (1.0 - p.phi(t)) / drop + 0.5 * t / t0;
  };
  std::vector<double> grid{0.0};
  for (std::size_t l = 1; l < layers; ++l) {
    const double target = static_cast<double>(l) / static_cast<double>(layers);
    double lo = grid.back(), hi = t0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (weight(mid) < target ? lo : hi) = mid;
    }
    grid.push_back(0.5 * (lo + hi));
  }
  grid.push_back(t0);
  if (max_step > 0.0) {
    std::vector<double> fine{0.0};
    for (std::size_t l = 1; l < grid.size(); ++l) {
      const double gap = grid[l] - grid[l - 1];
      const auto parts = static_cast<std::size_t>(std::ceil(gap / max_step - 1e-12));
      for (std::size_t s = 1; s <= std::max<std::size_t>(parts, 1); ++s)
        fine.push_back(grid[l - 1] + gap * static_cast<double>(s) / static_cast<double>(std::max<std::size_t>(parts, 1)));
    }
    fine.back() = t0;
    grid = std::move(fine);
  }
  return grid;
}

}  // namespace

CollarExtension build_extension(const SampledManifold& m, const WarpProfile& p, std::size_t layers,
                                const ExtensionOptions& opts) {
  if (layers < 2) throw PreconditionError("build_extension: at least 2 layers required");
  const auto seam = m.boundary_indices();
  if (seam.empty()) throw PreconditionError("build_extension: empty boundary");

  CollarExtension e;
  e.profile = p;
  e.base_size = m.size();
  e.seam = seam;
  e.layer_t = layer_grid(p, layers, opts.max_step);
  for (std::size_t l = 1; l < e.layer_t.size(); ++l) {
    const double a = p.phi(e.layer_t[l - 1]), b = p.phi(e.layer_t[l]);
    if (std::abs(a - b) / b > opts.max_phi_variation)
      throw PreconditionError("build_extension: layer grid too coarse to resolve phi (variation " +
                              std::to_string(std::abs(a - b) / b) + " per layer)");
  }

  const std::size_t n = m.size(), nb = seam.size(), L = e.layer_t.size();
  std::vector<std::size_t> seam_pos(n, nb);
  for (std::size_t k = 0; k < nb; ++k) seam_pos[seam[k]] = k;
  auto vid = [&](std::size_t k, std::size_t l) -> Index { return l == 0 ? seam[k] : n + (l - 1) * nb + k; };

  const std::size_t dim = m.dim() + 1, total = n + (L - 1) * nb;
  std::vector<double> coords(total * dim, 0.0);
  for (Index i = 0; i < n; ++i)
    for (std::size_t c = 0; c < m.dim(); ++c) coords[i * dim + c] = m.point(i)[c];
  e.footpoint.resize(total);
  e.t_of.assign(total, 0.0);
  for (Index i = 0; i < n; ++i) e.footpoint[i] = i;
  for (std::size_t l = 1; l < L; ++l)
    for (std::size_t k = 0; k < nb; ++k) {
      const Index v = vid(k, l);
      for (std::size_t c = 0; c < m.dim(); ++c) coords[v * dim + c] = m.point(seam[k])[c];
      coords[v * dim + m.dim()] = e.layer_t[l];
      e.footpoint[v] = seam[k];
      e.t_of[v] = e.layer_t[l];
    }

  std::vector<Edge> edges = m.edges();
  std::vector<std::pair<std::size_t, std::size_t>> bedges;  // seam positions
  std::vector<double> blen;
  for (const Edge& ed : m.edges())
    if (m.is_boundary(ed.u) && m.is_boundary(ed.v)) {
      bedges.push_back({seam_pos[ed.u], seam_pos[ed.v]});
      blen.push_back(ed.length);
    }
  for (std::size_t l = 0; l + 1 < L; ++l) {
    const double dt = e.layer_t[l + 1] - e.layer_t[l];
    const double phi_up = p.phi(e.layer_t[l + 1]);
    const double phi_mid = p.phi(0.5 * (e.layer_t[l] + e.layer_t[l + 1]));
    for (std::size_t k = 0; k < nb; ++k) edges.push_back({vid(k, l), vid(k, l + 1), dt});
    for (std::size_t q = 0; q < bedges.size(); ++q) {
      const auto [a, b] = bedges[q];
      edges.push_back({vid(a, l + 1), vid(b, l + 1), phi_up * blen[q]});
      const double diag = std::hypot(dt, phi_mid * blen[q]);
      edges.push_back({vid(a, l), vid(b, l + 1), diag});
      edges.push_back({vid(b, l), vid(a, l + 1), diag});
    }
  }

  std::vector<bool> boundary(total, false);
  for (std::size_t k = 0; k < nb; ++k) {
    boundary[vid(k, L - 1)] = true;
    e.outer_boundary.push_back(vid(k, L - 1));
  }
  double max_dt = 0.0;
  for (std::size_t l = 1; l < L; ++l) max_dt = std::max(max_dt, e.layer_t[l] - e.layer_t[l - 1]);
  e.glued = SampledManifold(dim, std::move(coords), std::move(edges), std::move(boundary),
                            std::max(m.mesh_scale(), max_dt));
  return e;
}

ApproxMap projection(const CollarExtension& e, unsigned jobs) {
  auto source = std::make_shared<const FiniteMetricSpace>(intrinsic_metric(e.glued, jobs));
  std::vector<Index> base(e.base_size);
  for (Index i = 0; i < base.size(); ++i) base[i] = i;
  // The base metric is its own graph metric, not the restriction of M~.
  std::vector<Edge> base_edges;
  for (const Edge& ed : e.glued.edges())
    if (ed.u < e.base_size && ed.v < e.base_size && e.footpoint[ed.u] == ed.u && e.footpoint[ed.v] == ed.v)
      base_edges.push_back(ed);
  std::vector<double> coords(e.glued.coords().begin(),
                             e.glued.coords().begin() + static_cast<std::ptrdiff_t>(e.base_size * e.glued.dim()));
  std::vector<bool> bnd(e.base_size, false);
  for (Index s : e.seam) bnd[s] = true;
  SampledManifold base_m(e.glued.dim(), std::move(coords), std::move(base_edges), std::move(bnd),
                         e.glued.mesh_scale());
  auto target = std::make_shared<const FiniteMetricSpace>(intrinsic_metric(base_m, jobs));
  return make_approx_map(source, target, e.footpoint);
}

}  // namespace cgkit
