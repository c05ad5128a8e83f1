#pragma once

// Sampled certification of lower/upper Alexandrov curvature bounds and of
// (C,2,rho)-convexity on finite metric spaces.

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "cgkit/metric_space.hpp"

namespace cgkit {

struct ApproxMap;

/// Calibrated once against the sphere / flat / tripod anchors; see README.
inline constexpr double kDefaultAngleScale = 0.4;

struct SamplingOptions {
  std::size_t samples = 20000;
  std::uint64_t seed = 1;
  /// Mesh scale h of the underlying sample; 0 for exact metrics (no noise
  /// tolerance, no small-side cutoff).
  double mesh_scale = 0.0;
  double angle_scale = kDefaultAngleScale;
  double small_scale_fraction = 0.5;  ///< share of samples with all sides < diam/10
  double max_perimeter = std::numeric_limits<double>::infinity();
  std::vector<Index> centers;         ///< restrict the apex (or triangle vertex c)
  std::size_t exhaustive_limit = 12;  ///< enumerate everything when n <= this
};

struct ViolationReport {
  double k = 0.0;
  bool pass = true;
  bool inconclusive = false;  ///< nothing could be evaluated at this k
  double worst = -std::numeric_limits<double>::infinity();  ///< largest raw violation
  double worst_margin = -std::numeric_limits<double>::infinity();  ///< violation minus noise tolerance
  std::array<Index, 4> witness{};  ///< (p, a, b, c) or (a, b, c, midpoint)
  std::vector<double> witness_distances;
  std::size_t evaluated = 0;
  std::size_t skipped_small = 0;   ///< below the 3h cutoff
  std::size_t skipped_domain = 0;  ///< outside the spherical domain (inconclusive)
  std::string obstruction;         ///< "", "diameter" or "perimeter"
};

/// Noise tolerance for an angle sum whose shortest side is side_min.
double angle_noise_tolerance(double mesh_scale, double side_min, double angle_scale);

/// Quadruple condition: angle(apb) + angle(bpc) + angle(cpa) <= 2 pi in M^2_k.
ViolationReport cbb_quadruple_test(const FiniteMetricSpace& X, double k, const SamplingOptions& opts = {});

/// Midpoint condition: d(c, m) <= model median + slack for a discrete
/// midpoint m of [ab].
ViolationReport cat_midpoint_test(const FiniteMetricSpace& X, double k, const SamplingOptions& opts = {});

struct CurvatureBounds {
  double k_lower = -std::numeric_limits<double>::infinity();
  double k_upper = std::numeric_limits<double>::infinity();
  std::size_t confidence = 0;  ///< samples per test
  double failing_k = std::numeric_limits<double>::quiet_NaN();  ///< smallest failing k seen
};

inline constexpr double kBracketLow = -100.0;
inline constexpr double kBracketHigh = 100.0;
inline constexpr int kBisectionSteps = 40;

/// Largest k in [-100, 100] passing cbb_quadruple_test (bisection).
CurvatureBounds estimate_lower_bound(const FiniteMetricSpace& X, const SamplingOptions& opts = {});

struct ConvexityParams {
  double C = 0.0;
  int order = 2;
  double rho = 1.0;
};

struct ConvexityReport {
  bool pass = true;
  double worst_violation = -std::numeric_limits<double>::infinity();  ///< max d_Z - d_X - C d_X^3
  Index i = 0, j = 0;  ///< Z indices of the worst pair
  double dz = 0.0, dx = 0.0;
  std::size_t pairs_checked = 0;
};

/// Checks d_Z(x,y) <= d_X(x,y) + C d_X(x,y)^3 for x, y in B(w, rho) for
/// some w in Z. Z is given with its own (intrinsic) metric; z_in_x maps Z
/// indices to X indices.
ConvexityReport c2_convexity_check(const FiniteMetricSpace& Z, const std::vector<Index>& z_in_x,
                                   const FiniteMetricSpace& X, const ConvexityParams& params,
                                   double slack = 1e-9);

/// One element of an approximating sequence (A_i in X_i) with its
/// certificate parameters and the approximations to the limit.
struct ConvexityCertificate {
  std::shared_ptr<const FiniteMetricSpace> X;
  std::shared_ptr<const FiniteMetricSpace> A;  ///< intrinsic metric of the subset
  std::vector<Index> a_in_x;
  ConvexityParams params;
  std::shared_ptr<const ApproxMap> to_X;  ///< X_i -> X
  std::shared_ptr<const ApproxMap> to_A;  ///< A_i -> A
};

struct LimitConvexityReport {
  bool pass = true;
  double best_epsilon = std::numeric_limits<double>::infinity();  ///< smallest measured eps_i
  double worst_slack_used = -std::numeric_limits<double>::infinity();  ///< max d_A - chain bound
  double limit_residual = -std::numeric_limits<double>::infinity();  ///< max d_A - d_X - C d_X^3
  std::size_t valid_certificates = 0;
  Index i = 0, j = 0;
};

/// Transfers (C, 2, rho_i)-convexity of A_i to the limit A at radius rho
/// through the chain d_A <= d_X + eps + C (d_X + eps)^3 + eps with measured
/// eps_i. Requires rho <= rho_i / 2 for every certificate.
LimitConvexityReport limit_convexity_check(const std::vector<ConvexityCertificate>& sequence,
                                           const FiniteMetricSpace& A, const std::vector<Index>& a_in_x,
                                           const FiniteMetricSpace& X, const ConvexityParams& params,
                                           double slack = 1e-9);

}  // namespace cgkit
