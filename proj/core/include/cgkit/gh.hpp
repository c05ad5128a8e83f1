#pragma once

// Hausdorff approximations between finite metric spaces, Gromov-Hausdorff
// bounds, quotient/gluing metrics and warped products.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cgkit/metric_space.hpp"

namespace cgkit {

/// A map source -> target with its measured distortion and net radius.
struct ApproxMap {
  std::shared_ptr<const FiniteMetricSpace> source, target;
  std::vector<Index> assignment;
  double distortion = 0.0;  ///< sup |d(fx, fy) - d(x, y)|
  double net_radius = 0.0;  ///< sup over target of the distance to the image
  Index worst_i = 0, worst_j = 0;
  Index net_witness = 0;

  double epsilon() const { return distortion > net_radius ? distortion : net_radius; }
};

struct ApproxMeasure {
  double distortion = 0.0, net_radius = 0.0;
  Index worst_i = 0, worst_j = 0, net_witness = 0;
};

/// Pairs at "infinite" distance (sentinel) on both sides contribute 0; on
/// one side only, +inf.
ApproxMeasure measure_approx(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                             std::span<const Index> assignment);

/// Builds and measures. Throws PreconditionError on a partial or
/// out-of-range assignment.
ApproxMap make_approx_map(std::shared_ptr<const FiniteMetricSpace> source,
                          std::shared_ptr<const FiniteMetricSpace> target, std::vector<Index> assignment);

/// Recomputes max(distortion, net radius) from the assignment.
double verify_approx(const ApproxMap& f);

struct SearchOptions {
  std::size_t budget = 200;     ///< local descent moves per restart
  std::uint64_t seed = 1;
  std::size_t anchors = 12;     ///< farthest-point anchors used by the greedy matching
  std::size_t restarts = 4;     ///< images tried for the first anchor
  std::size_t candidates = 24;  ///< target neighbors tried per descent move
  std::vector<Index> warm_start;
};

/// Best-effort search; the returned map's measured epsilon is what counts.
ApproxMap search_approx(std::shared_ptr<const FiniteMetricSpace> X,
                        std::shared_ptr<const FiniteMetricSpace> Y, const SearchOptions& opts = {});

struct GHBounds {
  double lower = 0.0;    ///< |diam X - diam Y| / 2
  double upper = 0.0;    ///< 3 * epsilon of the map
  double epsilon = 0.0;
};

/// Throws InconsistencyError if lower > upper.
GHBounds gh_bounds(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const ApproxMap* f = nullptr,
                   const SearchOptions& opts = {});
GHBounds gh_bounds(std::shared_ptr<const FiniteMetricSpace> X, std::shared_ptr<const FiniteMetricSpace> Y,
                   const ApproxMap* f = nullptr, const SearchOptions& opts = {});

/// Minimal epsilon over all maps X -> Y; both spaces must have <= 8 points.
double exhaustive_min_epsilon(const FiniteMetricSpace& X, const FiniteMetricSpace& Y);

/// min over maps S -> Y of the distortion on S (|S| <= 8). Any map X -> Y
/// has distortion, hence epsilon, at least this value.
double distortion_lower_bound(const FiniteMetricSpace& X, std::span<const Index> S,
                              const FiniteMetricSpace& Y);

struct Quotient {
  FiniteMetricSpace metric;
  std::vector<Index> projection;  ///< Y index -> quotient index
  Index collapsed = 0;            ///< index of the point A
};

/// Y/A: d(z, w) = min{ d(z, w), d(z, A) + d(A, w) }. Throws
/// PreconditionError if A is empty.
Quotient quotient_metric(const FiniteMetricSpace& Y, std::span<const Index> A);

/// Z = X glued to Y along the seam (a_in_x[k] ~ a_in_y[k]).
struct GluingInstance {
  std::shared_ptr<const FiniteMetricSpace> X, Y, Z;
  std::vector<Index> a_in_x, a_in_y;
  std::vector<Index> x_in_z, y_in_z;
};

/// Gluing metric: seam distances closed under alternating X/Y excursions,
/// then shortest chains through the seam.
GluingInstance glue(std::shared_ptr<const FiniteMetricSpace> X, std::vector<Index> a_in_x,
                    std::shared_ptr<const FiniteMetricSpace> Y, std::vector<Index> a_in_y);

struct GluingCheck {
  bool pass = true;
  double epsilon = 0.0;  ///< measured epsilon of F : Z -> Y_limit / A_limit
  double bound = 0.0;    ///< diam X + 2 eps_f + drift
  double diam_x = 0.0, eps_f = 0.0, drift = 0.0;
  Index worst_i = 0, worst_j = 0;
  std::shared_ptr<const FiniteMetricSpace> limit;  ///< Y_limit / A_limit
  ApproxMap F;
};

/// F(z) = pi f(z) on Y, pi(A) on X \ A. The drift term is the Hausdorff
/// distance between f(A) and A_limit in Y_limit.
GluingCheck gluing_limit_check(const GluingInstance& g, std::shared_ptr<const FiniteMetricSpace> Y_limit,
                               std::span<const Index> A_limit, const ApproxMap& f);

/// Graph warped product X x_phi Y: X-moves cost phi(y) d_X, Y-moves d_Y,
/// diagonals the hypotenuse; factor edges join k nearest neighbors. Index
/// x * |Y| + y.
FiniteMetricSpace warped_product(const FiniteMetricSpace& X, const FiniteMetricSpace& Y,
                                 std::span<const double> phi, std::size_t knn_x = 4, std::size_t knn_y = 2,
                                 unsigned jobs = 1);

/// (x, y) -> (f(x), y) between X_i x_phi Y and X x_phi Y.
ApproxMap warped_limit_map(const FiniteMetricSpace& Xi, const FiniteMetricSpace& X, const ApproxMap& f,
                           const FiniteMetricSpace& Y, std::span<const double> phi, std::size_t knn_x = 4,
                           std::size_t knn_y = 2, unsigned jobs = 1);

}  // namespace cgkit
