#pragma once

// Warped collars dt^2 + phi(t)^2 g_boundary glued to a sampled manifold
// along its boundary.

#include <cstddef>
#include <memory>
#include <vector>

#include "cgkit/metric_space.hpp"
#include "cgkit/sampled_manifold.hpp"

namespace cgkit {

struct ApproxMap;

/// phi(t) = (1 - eps) exp[A (1/(t0 - t) - 1/t0)] + eps with
/// A = lambda_bar t0^2 / (1 - eps); phi == 1 when lambda_bar == 0.
class WarpProfile {
 public:
  /// Throws DomainError unless lambda_bar <= 0, t0 > 0 and 0 < eps < 1.
  static WarpProfile make(double lambda_bar, double eps, double t0);

  double t0() const noexcept { return t0_; }
  double eps() const noexcept { return eps_; }
  double lambda_bar() const noexcept { return lambda_; }
  bool flat() const noexcept { return lambda_ == 0.0; }
  /// Set when the parameters were adjusted (adaptive_profile at i = 1).
  bool clamped() const noexcept { return clamped_; }

  double phi(double t) const;
  double dphi(double t) const;
  double ddphi(double t) const;
  /// phi(t0); equals eps unless the profile is flat.
  double outer_scale() const { return phi(t0_); }
  /// |lambda_bar| t0 / (1 - eps).
  double ratio() const;

 private:
  friend WarpProfile adaptive_profile(int i);
  friend WarpProfile adaptive_profile(int i, double lambda_minus);
  double t0_ = 1.0, eps_ = 0.5, lambda_ = 0.0;
  bool clamped_ = false;
};

inline WarpProfile warp_profile(double lambda_bar, double eps, double t0) {
  return WarpProfile::make(lambda_bar, eps, t0);
}

struct CurvatureBound {
  double value = 0.0;
  bool certified = true;  ///< false: numerical grid fallback (ratio condition unmet)
};

/// Threshold 6/(3 - sqrt 3) on the ratio for the closed-form radial bound.
double radial_ratio_threshold();

/// Lower bound for inf_t -phi''/phi.
CurvatureBound radial_bound(const WarpProfile& p);
/// Lower bound for inf_t (K_boundary_lower - phi'^2)/phi^2.
CurvatureBound tangential_bound(const WarpProfile& p, double K_boundary_lower);

/// Grid minima of the two curvature expressions on [0, t0] (grid_points
/// equally spaced points, endpoint limits included).
double grid_min_radial(const WarpProfile& p, std::size_t grid_points = 10000);
double grid_min_tangential(const WarpProfile& p, double K_boundary_lower, std::size_t grid_points = 10000);

/// t0 = 10/sqrt(i), eps = 1 - i^{-3/2}, lambda_bar = -1/i (ratio 10).
/// eps is clamped to 0.01 (flagged) when the formula gives less.
WarpProfile adaptive_profile(int i);
/// Same t0 and eps with lambda_bar = min(0, lambda_minus) supplied by the caller.
WarpProfile adaptive_profile(int i, double lambda_minus);

struct ExtensionOptions {
  /// Subdivide t-intervals longer than this (0: no subdivision).
  double max_step = 0.0;
  /// Maximum relative change of phi across one layer.
  double max_phi_variation = 0.2;
};

struct CollarExtension {
  SampledManifold glued;   ///< base points first (same indices), then collar layers
  std::size_t base_size = 0;
  WarpProfile profile;
  std::vector<double> layer_t;        ///< t grid, layer_t[0] = 0 (the seam)
  std::vector<Index> seam;            ///< base indices of the boundary (collar level 0)
  std::vector<Index> outer_boundary;  ///< glued indices at t = t0
  std::vector<Index> footpoint;       ///< per glued vertex: base index it projects to
  std::vector<double> t_of;           ///< per glued vertex: collar coordinate (0 on the base)
};

/// Glues boundary x [0, t0] with edges of length |dt| along fibers,
/// phi(t) L along boundary edges and the hypotenuse across layers. Boundary
/// vertices are shared with collar level 0. Throws PreconditionError for an
/// empty boundary, layers < 2 or too coarse a layer grid.
CollarExtension build_extension(const SampledManifold& m, const WarpProfile& p, std::size_t layers,
                                const ExtensionOptions& opts = {});

/// Footpoint map M~ -> M (identity on M) as an ApproxMap between the two
/// intrinsic metrics. Both point counts must stay within kMaxAllPairs.
ApproxMap projection(const CollarExtension& e, unsigned jobs = 1);

/// The two bounds the projection should satisfy: Lipschitz 1/eps and
/// distortion max{2 t0, (1/eps - 1)(d + 2 t0)} for base diameter d.
struct ProjectionBounds {
  double lipschitz = 0.0;
  double distortion = 0.0;
};
ProjectionBounds projection_bounds(const WarpProfile& p, double base_diameter);

}  // namespace cgkit
