#include "cgkit/gallery.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <unordered_map>

#include "cgkit/error.hpp"

namespace cgkit {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Cloud {
  std::size_t dim = 3;
  std::vector<double> coords;
  std::vector<bool> boundary;

  void add(std::initializer_list<double> x, bool b) {
    coords.insert(coords.end(), x.begin(), x.end());
    boundary.push_back(b);
  }
  std::size_t size() const { return boundary.size(); }
};

// Same graph, edge lengths replaced by len(u, v).
template <class F>
SampledManifold reweighted(const SampledManifold& m, F&& len) {
  std::vector<Edge> edges = m.edges();
  for (Edge& e : edges) e.length = len(e.u, e.v);
  return SampledManifold(m.dim(), m.coords(), std::move(edges), m.boundary(), m.mesh_scale());
}

// Hexagonal lattice points (spacing h) inside a box, filtered by keep(x, y).
template <class F>
void hex_lattice(Cloud& c, double h, double xmin, double xmax, double ymin, double ymax, F&& keep) {
  const double dy = h * std::sqrt(3.0) / 2.0;
  const long jmin = static_cast<long>(std::ceil(ymin / dy)), jmax = static_cast<long>(std::floor(ymax / dy));
  for (long j = jmin; j <= jmax; ++j) {
    const double y = static_cast<double>(j) * dy;
    const double shift = (j % 2 != 0) ? 0.5 * h : 0.0;
    const long imin = static_cast<long>(std::ceil((xmin - shift) / h));
    const long imax = static_cast<long>(std::floor((xmax - shift) / h));
    for (long i = imin; i <= imax; ++i) {
      const double x = static_cast<double>(i) * h + shift;
      if (keep(x, y)) c.add({x, y}, false);
    }
  }
}

// Ring of n points (n rounded up to even) on the circle of radius r.
std::size_t even_ring(double r, double h) {
  auto n = static_cast<std::size_t>(std::llround(2.0 * kPi * r / h));
  n = std::max<std::size_t>(n, 8);
  return n + (n % 2);
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return s;
}

// Solid sampled by vertical columns over a square grid: bottom and top
// points flagged as boundary.
template <class Lo, class Hi>
SampledManifold column_solid(double h, double xr, double yr, Lo&& lo, Hi&& hi, bool (*inside)(double, double),
                             double stencil, double min_height_points, Cloud extra = {}) {
  Cloud c = std::move(extra);
  double dz_max = 0.0;
  const long nx = static_cast<long>(std::floor(xr / h)), ny = static_cast<long>(std::floor(yr / h));
  for (long a = -nx; a <= nx; ++a)
    for (long b = -ny; b <= ny; ++b) {
      const double x = static_cast<double>(a) * h, y = static_cast<double>(b) * h;
      if (!inside(x, y)) continue;
      const double z0 = lo(x, y), z1 = hi(x, y);
      auto nz = static_cast<std::size_t>(std::max(min_height_points, std::round((z1 - z0) / h)));
      if (nz % 2 != 0 && min_height_points > 0.0) ++nz;  // even: the mid-surface is sampled
      if (nz == 0 || z1 - z0 < 1e-12) {
        c.add({x, y, 0.5 * (z0 + z1)}, true);
        continue;
      }
      const double dz = (z1 - z0) / static_cast<double>(nz);
      dz_max = std::max(dz_max, dz);
      for (std::size_t k = 0; k <= nz; ++k) c.add({x, y, z0 + dz * static_cast<double>(k)}, k == 0 || k == nz);
    }
  NeighborGraphOptions o;
  o.stencil = stencil;
  return build_neighbor_graph(3, std::move(c.coords), std::move(c.boundary), std::max(h, dz_max), o);
}

double default_eps(int i) { return 1.0 / std::sqrt(static_cast<double>(i)); }

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// --- families ---------------------------------------------------------------

SampledManifold gen_thin_torus(const ExampleSpec& s) {
  const double rho = 1.0 / s.i, w = 1.0 / s.i;
  const std::size_t nt = std::max<std::size_t>(8, 2 * static_cast<std::size_t>(std::llround(kPi * rho / s.h)));
  const std::size_t nw = 2 * std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(w / s.h))) + 1;
  const double dth = 2.0 * kPi / static_cast<double>(nt), dw = 2.0 * w / static_cast<double>(nw - 1);
  Cloud c;
  for (std::size_t a = 0; a < nt; ++a)
    for (std::size_t b = 0; b < nw; ++b) {
      const double th = dth * static_cast<double>(a);
      c.add({rho * std::cos(th), rho * std::sin(th), -w + dw * static_cast<double>(b)}, b == 0 || b + 1 == nw);
    }
  const double h = std::max(rho * dth, dw);
  auto m = build_neighbor_graph(3, c.coords, c.boundary, h);
  // Flat intrinsic edge lengths: arc around the circle, straight across.
  return reweighted(m, [&](Index u, Index v) {
    const double du = std::atan2(m.point(u)[1], m.point(u)[0]), dv = std::atan2(m.point(v)[1], m.point(v)[0]);
    double dth2 = std::abs(du - dv);
    dth2 = std::min(dth2, 2.0 * kPi - dth2);
    return std::hypot(rho * dth2, m.point(u)[2] - m.point(v)[2]);
  });
}

SampledManifold gen_thin_cylinder(const ExampleSpec& s) {
  const double rho = s.radius, len = s.length;
  const std::size_t nt = std::max<std::size_t>(8, static_cast<std::size_t>(std::llround(2.0 * kPi * rho / s.h)));
  const std::size_t nz = 2 * std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(0.5 * len / s.h))) + 1;
  const double dth = 2.0 * kPi / static_cast<double>(nt), dz = len / static_cast<double>(nz - 1);
  Cloud c;
  // Row-major in z: the bottom circle is indices [0, nt), the top circle the last nt.
  for (std::size_t b = 0; b < nz; ++b)
    for (std::size_t a = 0; a < nt; ++a) {
      const double th = dth * static_cast<double>(a);
      c.add({rho * std::cos(th), rho * std::sin(th), dz * static_cast<double>(b)}, b == 0 || b + 1 == nz);
    }
  auto m = build_neighbor_graph(3, c.coords, c.boundary, std::max(rho * dth, dz));
  return reweighted(m, [&](Index u, Index v) {
    const double du = std::atan2(m.point(u)[1], m.point(u)[0]), dv = std::atan2(m.point(v)[1], m.point(v)[0]);
    double d = std::abs(du - dv);
    d = std::min(d, 2.0 * kPi - d);
    return std::hypot(rho * d, m.point(u)[2] - m.point(v)[2]);
  });
}

SampledManifold gen_capsule(const ExampleSpec& s) {
  const double eps = s.eps, h = s.h, cut = 1.0 / s.i;
  require(eps > cut, "capsule_cross_circle: eps must exceed 1/i (otherwise nothing is cut)");
  // Meridian arclength: quarter circle, segment [0, 1], quarter circle.
  const double cap = 0.5 * kPi * eps, total = 2.0 * cap + 1.0;
  const auto ns = static_cast<std::size_t>(std::ceil(total / h));
  Cloud c;
  for (std::size_t k = 0; k <= ns; ++k) {
    const double sm = total * static_cast<double>(k) / static_cast<double>(ns);
    double x, rho;
    if (sm < cap) {
      x = -eps * std::cos(sm / eps);
      rho = eps * std::sin(sm / eps);
    } else if (sm > cap + 1.0) {
      const double a = (total - sm) / eps;
      x = 1.0 + eps * std::cos(a);
      rho = eps * std::sin(a);
    } else {
      x = sm - cap;
      rho = eps;
    }
    if (rho < 1e-12) {
      c.add({x, 0.0, 0.0}, false);
      continue;
    }
    // z = rho cos(theta) >= -cut; theta measured from the top.
    const bool full = rho * s.i <= 1.0;
    const double tb = full ? kPi : std::acos(-cut / rho);
    if (!full && (kPi - tb) * rho < 1e-9) continue;  // endpoints would coincide
    if (full) {
      const auto n = std::max<std::size_t>(3, static_cast<std::size_t>(std::llround(2.0 * kPi * rho / h)));
      for (std::size_t a = 0; a < n; ++a) {
        const double th = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(n);
        c.add({x, rho * std::sin(th), rho * std::cos(th)}, false);
      }
    } else {
      // Even, so the ridge theta = 0 is a sample.
      const auto n = 2 * std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(tb * rho / h)));
      for (std::size_t a = 0; a <= n; ++a) {
        const double th = -tb + 2.0 * tb * static_cast<double>(a) / static_cast<double>(n);
        c.add({x, rho * std::sin(th), rho * std::cos(th)}, a == 0 || a == n);
      }
    }
  }
  // The cut circle on each cap, where the rings are too coarse to close the
  // boundary loop around the tips.
  const double rc = std::sqrt(eps * eps - cut * cut);
  std::vector<std::array<double, 3>> bpts;
  for (std::size_t v = 0; v < c.size(); ++v)
    if (c.boundary[v]) bpts.push_back({c.coords[3 * v], c.coords[3 * v + 1], c.coords[3 * v + 2]});
  const auto nc = static_cast<std::size_t>(std::ceil(kPi * rc / h));
  for (int side = 0; side < 2; ++side)
    for (std::size_t a = 0; a <= nc; ++a) {
      const double ph = 0.5 * kPi + kPi * static_cast<double>(a) / static_cast<double>(nc);
      const std::array<double, 3> q{side == 0 ? rc * std::cos(ph) : 1.0 - rc * std::cos(ph), rc * std::sin(ph), -cut};
      const bool dup = std::any_of(bpts.begin(), bpts.end(), [&](const auto& b) { return dist2(b, q) < 0.25 * h * h; });
      if (dup) continue;
      bpts.push_back(q);
      c.add({q[0], q[1], q[2]}, true);
    }
  auto surface = build_neighbor_graph(3, std::move(c.coords), std::move(c.boundary), h);
  if (s.circle_points == 0) return surface;

  // Product with S^1(r): one copy per circle point, fibers joined by arcs.
  const std::size_t q = s.circle_points, n = surface.size();
  const double arc = 2.0 * kPi * s.r / static_cast<double>(q);
  std::vector<double> coords;
  coords.reserve(n * q * 5);
  std::vector<bool> bnd;
  std::vector<Edge> edges;
  for (std::size_t a = 0; a < q; ++a) {
    const double al = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(q);
    for (Index v = 0; v < n; ++v) {
      const auto p = surface.point(v);
      coords.insert(coords.end(), {p[0], p[1], p[2], s.r * std::cos(al), s.r * std::sin(al)});
      bnd.push_back(surface.is_boundary(v));
      edges.push_back({a * n + v, ((a + 1) % q) * n + v, arc});
    }
    for (const Edge& e : surface.edges()) edges.push_back({a * n + e.u, a * n + e.v, e.length});
  }
  return SampledManifold(5, std::move(coords), std::move(edges), std::move(bnd), std::max(h, arc));
}

SampledManifold gen_tube(const ExampleSpec& s) {
  const double eps = s.eps, h = s.h;
  const bool circle = s.curve == "circle";
  // Nearest point of the core curve.
  auto foot = [&](const std::array<double, 3>& p) -> std::array<double, 3> {
    if (circle) {
      const double r = std::hypot(p[0], p[1]);
      if (r < 1e-12) return {1.0, 0.0, 0.0};
      return {p[0] / r, p[1] / r, 0.0};
    }
    return {std::clamp(p[0], 0.0, 1.0), 0.0, 0.0};
  };
  const double xlo = circle ? -1.0 - eps : -eps, xhi = 1.0 + eps;
  const double ylo = circle ? -1.0 - eps : -eps, yhi = circle ? 1.0 + eps : eps;
  Cloud c;
  std::map<std::array<long, 3>, bool> seen;  // boundary dedup at h/4 resolution
  std::vector<std::array<double, 3>> shell;
  for (long a = static_cast<long>(std::floor(xlo / h)); a <= static_cast<long>(std::ceil(xhi / h)); ++a)
    for (long b = static_cast<long>(std::floor(ylo / h)); b <= static_cast<long>(std::ceil(yhi / h)); ++b)
      for (long k = static_cast<long>(std::floor(-eps / h)); k <= static_cast<long>(std::ceil(eps / h)); ++k) {
        const std::array<double, 3> p{a * h, b * h, k * h};
        const auto f = foot(p);
        const double d = std::sqrt((p[0] - f[0]) * (p[0] - f[0]) + (p[1] - f[1]) * (p[1] - f[1]) + p[2] * p[2]);
        if (d <= eps - 0.5 * h) c.add({p[0], p[1], p[2]}, false);
        if (d > eps - 1.5 * h && d < eps + 0.5 * h && d > 1e-12) {
          std::array<double, 3> q;
          for (int t = 0; t < 3; ++t) q[t] = f[t] + eps * (p[t] - f[t]) / d;
          const std::array<long, 3> key{std::lround(q[0] * 4.0 / h), std::lround(q[1] * 4.0 / h),
                                        std::lround(q[2] * 4.0 / h)};
          if (seen.emplace(key, true).second) shell.push_back(q);
        }
      }
  for (const auto& q : shell) c.add({q[0], q[1], q[2]}, true);
  return build_neighbor_graph(3, std::move(c.coords), std::move(c.boundary), h);
}

SampledManifold gen_slab(const ExampleSpec& s) {
  const double th = s.thickness;
  auto f0 = [](double x, double y) { return std::exp(-(x * x + y * y)); };
  return column_solid(
      s.h, s.extent, s.extent, f0, [&](double x, double y) { return f0(x, y) + th; },
      [](double, double) { return true; }, 2.5, 1.0);
}

SampledManifold gen_flattened_disc(const ExampleSpec& s) {
  const double c = 1.0 / s.i, h = s.h;
  Cloud rim;
  const std::size_t n = even_ring(1.0, h);
  for (std::size_t a = 0; a < n; ++a) {
    const double t = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(n);
    rim.add({std::cos(t), std::sin(t), 0.0}, true);
  }
  auto half = [c](double x, double y) { return c * std::sqrt(std::max(0.0, 1.0 - x * x - y * y)); };
  return column_solid(
      h, 1.0, 1.0, [&](double x, double y) { return -half(x, y); }, half,
      [](double x, double y) { return x * x + y * y < 1.0 - 1e-9; }, 3.0, 0.0, std::move(rim));
}

SampledManifold gen_plane_minus_ball(const ExampleSpec& s) {
  const double r = s.r, h = s.h, L = s.extent;
  const std::array<double, 2> probe{r + s.R, 0.0};
  Cloud c;
  c.dim = 2;
  const std::size_t n = even_ring(r, h);
  for (std::size_t a = 0; a < n; ++a) {
    const double t = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(n);
    c.add({r * std::cos(t), r * std::sin(t)}, true);
  }
  hex_lattice(c, h, -L, L, -L, L, [&](double x, double y) {
    return std::hypot(x, y) >= r + 0.5 * h && std::hypot(x - probe[0], y - probe[1]) >= 0.25 * h;
  });
  c.add({probe[0], probe[1]}, false);
  NeighborGraphOptions o;
  // Reject segments cutting into the ball; chords between close ring
  // points dip in by at most the sagitta (3h)^2 / (8r).
  const double floor_d = r - 9.0 * h * h / (8.0 * r) - 1e-12;
  o.accept = [floor_d](std::span<const double> a, std::span<const double> b) {
    const double dx = b[0] - a[0], dy = b[1] - a[1];
    const double len2 = dx * dx + dy * dy;
    const double t = len2 > 0.0 ? std::clamp(-(a[0] * dx + a[1] * dy) / len2, 0.0, 1.0) : 0.0;
    return std::hypot(a[0] + t * dx, a[1] + t * dy) >= floor_d;
  };
  return build_neighbor_graph(2, std::move(c.coords), std::move(c.boundary), h, o);
}

struct Icosphere {
  std::vector<std::array<double, 3>> v;
  std::vector<std::array<std::size_t, 3>> f;
};

Icosphere make_icosphere(int level) {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  Icosphere s;
  s.v = {{-1, t, 0}, {1, t, 0}, {-1, -t, 0}, {1, -t, 0}, {0, -1, t}, {0, 1, t},
         {0, -1, -t}, {0, 1, -t}, {t, 0, -1}, {t, 0, 1}, {-t, 0, -1}, {-t, 0, 1}};
  s.f = {{0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
         {11, 10, 2}, {10, 7, 6}, {7, 1, 8}, {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8},
         {3, 8, 9}, {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1}};
  auto normalize = [](std::array<double, 3> p) {
    const double n = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    return std::array<double, 3>{p[0] / n, p[1] / n, p[2] / n};
  };
  for (auto& p : s.v) p = normalize(p);
  for (int l = 0; l < level; ++l) {
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mid;
    auto midpoint = [&](std::size_t a, std::size_t b) {
      const auto key = std::minmax(a, b);
      const auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      const auto& p = s.v[a];
      const auto& q = s.v[b];
      s.v.push_back(normalize({p[0] + q[0], p[1] + q[1], p[2] + q[2]}));
      mid.emplace(key, s.v.size() - 1);
      return s.v.size() - 1;
    };
    std::vector<std::array<std::size_t, 3>> next;
    for (const auto& tri : s.f) {
      const std::size_t a = midpoint(tri[0], tri[1]), b = midpoint(tri[1], tri[2]), c = midpoint(tri[2], tri[0]);
      next.push_back({tri[0], a, c});
      next.push_back({tri[1], b, a});
      next.push_back({tri[2], c, b});
      next.push_back({a, b, c});
    }
    s.f = std::move(next);
  }
  return s;
}

double mean_edge(const Icosphere& s) {
  double sum = 0.0;
  for (const auto& tri : s.f)
    for (int k = 0; k < 3; ++k) sum += std::sqrt(dist2(s.v[tri[k]], s.v[tri[(k + 1) % 3]]));
  return sum / (3.0 * static_cast<double>(s.f.size()));
}

// Stencil 4: stencil 3 leaves about 2% relative metric error, enough to fake
// curvature violations on large triangles.
SampledManifold sphere_graph(Cloud c, double radius, double h) {
  NeighborGraphOptions o;
  o.stencil = 4.0;
  auto m = build_neighbor_graph(3, std::move(c.coords), std::move(c.boundary), h, o);
  return reweighted(m, [&](Index u, Index v) {
    const double chord = m.chord(u, v);
    return 2.0 * radius * std::asin(std::min(1.0, chord / (2.0 * radius)));
  });
}

SampledManifold gen_sphere_minus_ball(const ExampleSpec& s) {
  const double r = s.r;
  const int level = std::clamp(static_cast<int>(std::ceil(std::log2(1.0515 / s.h))), 1, 7);
  const auto ico = make_icosphere(level);
  const double h = mean_edge(ico);
  Cloud c;
  const std::size_t n = even_ring(std::sin(r), h);
  for (std::size_t a = 0; a < n; ++a) {
    const double t = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(n);
    c.add({std::sin(r) * std::cos(t), std::sin(r) * std::sin(t), std::cos(r)}, true);
  }
  for (const auto& p : ico.v)
    if (std::acos(std::clamp(p[2], -1.0, 1.0)) >= r + 0.5 * h) c.add({p[0], p[1], p[2]}, false);
  return sphere_graph(std::move(c), 1.0, h);
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::gaussian_slab: return "gaussian_slab";
    case Family::thin_torus: return "thin_torus";
    case Family::capsule_cross_circle: return "capsule_cross_circle";
    case Family::tube_neighborhood: return "tube_neighborhood";
    case Family::flattened_disc: return "flattened_disc";
    case Family::plane_minus_ball: return "plane_minus_ball";
    case Family::sphere_minus_ball: return "sphere_minus_ball";
    case Family::thin_cylinder: return "thin_cylinder";
  }
  return "?";
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> all{Family::gaussian_slab,     Family::thin_torus,
                                       Family::capsule_cross_circle, Family::tube_neighborhood,
                                       Family::flattened_disc,    Family::plane_minus_ball,
                                       Family::sphere_minus_ball, Family::thin_cylinder};
  return all;
}

Family family_from_name(std::string_view name) {
  for (Family f : all_families())
    if (family_name(f) == name) return f;
  throw ParseError("unknown example family '" + std::string(name) + "'", 0);
}

ExampleSpec ExampleSpec::resolved() const {
  ExampleSpec s = *this;
  require(s.i >= 1, "example: i must be >= 1");
  require(s.h >= 0.0 && std::isfinite(s.h), "example: h must be >= 0");
  const double di = static_cast<double>(s.i);
  if (s.eps == 0.0) s.eps = default_eps(s.i);
  if (s.thickness == 0.0) s.thickness = 1.0 / di;
  if (s.radius == 0.0) s.radius = 1.0 / di;
  if (s.length == 0.0) s.length = 1.0 / di;
  require(s.eps > 0.0 && s.thickness > 0.0 && s.radius > 0.0 && s.length > 0.0 && s.r > 0.0 && s.R > 0.0,
          "example: geometry parameters must be positive");
  switch (s.family) {
    case Family::gaussian_slab:
      if (s.h == 0.0) s.h = s.thickness / 3.0;
      if (s.extent == 0.0) s.extent = 1.5;
      break;
    case Family::thin_torus:
      if (s.h == 0.0) s.h = 2.0 * kPi / (24.0 * di);
      break;
    case Family::capsule_cross_circle:
      if (s.h == 0.0) s.h = s.eps / 10.0;
      require(s.eps * di > 1.0, "capsule_cross_circle: need i * eps > 1");
      require(s.circle_points == 0 || s.circle_points >= 3, "capsule_cross_circle: circle_points is 0 or >= 3");
      break;
    case Family::tube_neighborhood:
      if (s.h == 0.0) s.h = s.eps / 4.0;
      require(s.curve == "segment" || s.curve == "circle", "tube_neighborhood: curve is 'segment' or 'circle'");
      require(s.eps >= 3.0 * s.h, "tube_neighborhood: need eps >= 3h");
      require(s.curve == "segment" || s.eps < 1.0, "tube_neighborhood: circle core needs eps < 1");
      break;
    case Family::flattened_disc:
      if (s.h == 0.0) s.h = 1.0 / (3.0 * di);
      break;
    case Family::plane_minus_ball:
      if (s.h == 0.0) s.h = s.r / 15.0;
      if (s.extent == 0.0) s.extent = s.r + s.R + 0.5;
      require(s.extent > s.r + s.R, "plane_minus_ball: extent must contain the probe point");
      break;
    case Family::sphere_minus_ball:
      if (s.h == 0.0) s.h = 0.1;
      require(s.r < kPi, "sphere_minus_ball: need r < pi");
      break;
    case Family::thin_cylinder:
      if (s.h == 0.0) s.h = 2.0 * kPi * s.radius / 16.0;
      break;
  }
  require(s.h > 0.0, "example: h must be > 0");
  return s;
}

SampledManifold generate(const ExampleSpec& spec) {
  const ExampleSpec s = spec.resolved();
  switch (s.family) {
    case Family::gaussian_slab: return gen_slab(s);
    case Family::thin_torus: return gen_thin_torus(s);
    case Family::capsule_cross_circle: return gen_capsule(s);
    case Family::tube_neighborhood: return gen_tube(s);
    case Family::flattened_disc: return gen_flattened_disc(s);
    case Family::plane_minus_ball: return gen_plane_minus_ball(s);
    case Family::sphere_minus_ball: return gen_sphere_minus_ball(s);
    case Family::thin_cylinder: return gen_thin_cylinder(s);
  }
  throw DomainError("generate: unknown family");
}

GroundTruth ground_truth(const ExampleSpec& spec) {
  const ExampleSpec s = spec.resolved();
  const double di = static_cast<double>(s.i);
  GroundTruth g;
  switch (s.family) {
    case Family::gaussian_slab:
      g.inradius = s.thickness / 2.0;
      g.sectional_curvature = 0.0;
      g.limit = "graph of exp(-(x^2+y^2))";
      break;
    case Family::thin_torus:
      g.inradius = 1.0 / di;
      g.diameter = std::sqrt(kPi * kPi + 4.0) / di;
      g.inj = kPi / di;
      g.sectional_curvature = 0.0;
      g.limit = "point";
      break;
    case Family::capsule_cross_circle:
      g.inradius = 0.5 * kPi * s.eps + s.eps * std::asin(1.0 / (di * s.eps));
      g.limit = "[0,1] x S^1(r)";
      break;
    case Family::tube_neighborhood:
      g.inradius = s.eps;
      if (s.curve == "segment") g.diameter = 1.0 + 2.0 * s.eps;
      g.sectional_curvature = 0.0;
      g.limit = s.curve == "segment" ? "[0,1]" : "S^1(1)";
      break;
    case Family::flattened_disc:
      g.inradius = 1.0 / di;
      g.diameter = 2.0;
      g.sectional_curvature = 0.0;
      g.limit = "flat unit disc";
      break;
    case Family::plane_minus_ball: {
      const double r = s.r, R = s.R;
      g.inj = kPi * r;
      g.i_int = kInf;
      g.i_boundary = kInf;
      g.injectivity_proxy = std::sqrt((R + r) * (R + r) - r * r) + r * (0.5 * kPi + std::asin(r / (R + r)));
      g.sectional_curvature = 0.0;
      g.limit = "itself";
      break;
    }
    case Family::sphere_minus_ball: {
      const double r = s.r;
      const bool small = r <= 0.5 * kPi;
      g.i_int = small ? kPi : kInf;
      g.inj = small ? kPi * std::sin(r) : kInf;
      if (small) g.injectivity_proxy = kPi * std::sin(r);
      g.i_boundary = kPi - r;
      g.inradius = kPi - r;
      if (small) g.diameter = kPi;
      g.sectional_curvature = 1.0;
      g.limit = "itself";
      break;
    }
    case Family::thin_cylinder:
      g.inradius = s.length / 2.0;
      g.diameter = std::hypot(kPi * s.radius, s.length);
      g.sectional_curvature = 0.0;
      g.limit = "point";
      break;
  }
  return g;
}

Index nearest_vertex(const SampledManifold& m, std::span<const double> x) {
  if (m.size() == 0) throw PreconditionError("nearest_vertex: empty manifold");
  Index best = 0;
  double bd = kInf;
  for (Index v = 0; v < m.size(); ++v) {
    const double d = dist2(m.point(v).first(std::min(x.size(), m.dim())), x.first(std::min(x.size(), m.dim())));
    if (d < bd) bd = d, best = v;
  }
  return best;
}

double injectivity_proxy(const SampledManifold& m, const ExampleSpec& spec) {
  const ExampleSpec s = spec.resolved();
  Index p, q;
  if (s.family == Family::plane_minus_ball) {
    const std::array<double, 2> a{s.r + s.R, 0.0}, b{-s.r, 0.0};
    p = nearest_vertex(m, a);
    q = nearest_vertex(m, b);
  } else if (s.family == Family::sphere_minus_ball) {
    const std::array<double, 3> a{std::sin(s.r), 0.0, std::cos(s.r)}, b{-std::sin(s.r), 0.0, std::cos(s.r)};
    p = nearest_vertex(m, a);
    q = nearest_vertex(m, b);
  } else {
    throw PreconditionError("injectivity_proxy: defined for plane_minus_ball and sphere_minus_ball only");
  }
  const double d = dijkstra(m, p)[q];
  if (!std::isfinite(d)) throw DisconnectedError("injectivity_proxy: probe and antipode not connected", {});
  return d;
}

SampledManifold icosphere(int level, double radius) {
  if (level < 0 || level > 7) throw DomainError("icosphere: level must lie in [0, 7]");
  if (!(radius > 0.0)) throw DomainError("icosphere: radius must be > 0");
  const auto ico = make_icosphere(level);
  Cloud c;
  for (const auto& p : ico.v) c.add({radius * p[0], radius * p[1], radius * p[2]}, false);
  return sphere_graph(std::move(c), radius, radius * mean_edge(ico));
}

FiniteMetricSpace flat_grid(std::size_t n, double spacing) {
  if (n == 0 || !(spacing > 0.0)) throw DomainError("flat_grid: need n > 0 and spacing > 0");
  std::vector<double> xy;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) xy.insert(xy.end(), {spacing * a, spacing * b});
  return FiniteMetricSpace::from_points(2, xy);
}

FiniteMetricSpace tripod(std::size_t per_arm, double arm) {
  if (per_arm == 0 || !(arm > 0.0)) throw DomainError("tripod: need points and a positive arm length");
  const std::size_t n = 1 + 3 * per_arm;
  auto arm_of = [&](Index v) { return v == 0 ? 0 : (v - 1) / per_arm; };
  auto pos = [&](Index v) { return v == 0 ? 0.0 : arm * static_cast<double>((v - 1) % per_arm + 1) / per_arm; };
  std::vector<double> d(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      d[a * n + b] = (a == 0 || b == 0 || arm_of(a) == arm_of(b)) ? std::abs(pos(a) - pos(b)) : pos(a) + pos(b);
  return FiniteMetricSpace(n, std::move(d));
}

FiniteMetricSpace segment_space(std::size_t n, double length) {
  if (n < 2 || !(length > 0.0)) throw DomainError("segment_space: need n >= 2 and length > 0");
  std::vector<double> d(n * n);
  const double step = length / static_cast<double>(n - 1);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) d[a * n + b] = step * std::abs(static_cast<double>(a) - static_cast<double>(b));
  return FiniteMetricSpace(n, std::move(d));
}

FiniteMetricSpace circle_space(std::size_t n, double radius) {
  if (n < 1 || !(radius > 0.0)) throw DomainError("circle_space: need n >= 1 and radius > 0");
  std::vector<double> d(n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const std::size_t k = a > b ? a - b : b - a;
      d[a * n + b] = radius * 2.0 * kPi * static_cast<double>(std::min(k, n - k)) / static_cast<double>(n);
    }
  return FiniteMetricSpace(n, std::move(d));
}

SampledManifold planar_disc(double h, double radius) {
  if (!(h > 0.0) || !(radius > 4.0 * h)) throw DomainError("planar_disc: need radius > 4h > 0");
  Cloud c;
  c.dim = 2;
  const std::size_t n = even_ring(radius, h);
  for (std::size_t a = 0; a < n; ++a) {
    const double t = 2.0 * kPi * static_cast<double>(a) / static_cast<double>(n);
    c.add({radius * std::cos(t), radius * std::sin(t)}, true);
  }
  hex_lattice(c, h, -radius, radius, -radius, radius,
              [&](double x, double y) { return std::hypot(x, y) <= radius - 0.5 * h; });
  return build_neighbor_graph(2, std::move(c.coords), std::move(c.boundary), h);
}

}  // namespace cgkit
