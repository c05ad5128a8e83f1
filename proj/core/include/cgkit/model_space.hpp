#pragma once

// Trigonometry of the constant-curvature model planes M^2_K and the
// arc/chord comparison quantities for curves of bounded geodesic curvature.
//
// All formulas are written in terms of the generalized sine sn_K and the
// versine vers_K = (1 - cs_K)/K, which are analytic in K and therefore
// continuous across the Euclidean case.

#include <limits>

namespace cgkit::model {

/// Curvature K of the model plane M^2_K.
class ModelCurvature {
 public:
  constexpr explicit ModelCurvature(double k) : k_(k) {}

  constexpr double value() const { return k_; }
  constexpr bool spherical() const { return k_ > 0.0; }

  /// Length of a closed geodesic (2*pi/sqrt(K)); +inf when K <= 0.
  double max_perimeter() const;
  /// Diameter of the model plane (pi/sqrt(K)); +inf when K <= 0.
  double diameter() const;

 private:
  double k_;
};

inline constexpr double kTaylorSwitch = 1e-6;  // |K| x^2 below this -> series

// Generalized trigonometric functions. x is a length, K the curvature.
double sn(double x, double K);    // sin(sqrt(K) x)/sqrt(K), sinh for K < 0, x for K = 0
double cs(double x, double K);    // cos(sqrt(K) x), cosh for K < 0
double vers(double x, double K);  // (1 - cs)/K, x^2/2 for K = 0
/// Principal inverse of sn. Requires sqrt(K) y <= 1 when K > 0.
double asn(double y, double K);
/// Inverse of vers on [0, pi/sqrt(K)].
double vers_inverse(double v, double K);

/// Third side of the model hinge with sides a, b enclosing angle gamma.
/// Throws DomainError when K > 0 and the triangle does not fit (perimeter
/// must stay below 2*pi/sqrt(K)).
double side_from_hinge(double a, double b, double gamma, ModelCurvature K);

/// Model angle between sides a and b of the triangle with sides (a, b, c),
/// i.e. the angle opposite c. Throws DomainError on triangle-inequality or
/// perimeter violations and PreconditionError if a or b is not positive.
double comparison_angle(double a, double b, double c, ModelCurvature K);

/// Length of the median from the vertex joining sides x and y to the
/// midpoint of the opposite side z in the model triangle (x, y, z).
double model_median(double x, double y, double z, ModelCurvature K);

/// Certified lower bound for the angle opposite c when the third side is
/// only known up to the cubic defect C c^3, i.e. lies in [c, c + C c^3].
///
/// The bound is obtained from the companion triangle (a, b, c + C c^3)
/// by shifting its cosine by C c^3 (2c + C c^3) / (2ab). It is evaluated in
/// the Euclidean plane and transferred to M^2_K by monotonicity of model
/// angles in K (for K < 0 the model angle of (a, b, c) caps it).
/// Requires C c^3 < c/10.
double excess_angle_lower_bound(double a, double b, double c, double C,
                                ModelCurvature K = ModelCurvature{0.0});

/// Cosine shift C c^3 (2c + C c^3) / (2ab) between the triangles (a, b, c)
/// and (a, b, c + C c^3) in the Euclidean plane.
double cubic_cosine_shift(double a, double b, double c, double C);

struct ArcChordQuery {
  double chord = 0.0;      ///< chord length r >= 0
  double k = 0.0;          ///< curvature bound of the curve, >= 0
  ModelCurvature K{0.0};   ///< curvature of the ambient model plane
};

/// Length of the minor arc of a k-curve in M^2_K spanning the given chord.
double arc_length_from_chord(const ArcChordQuery& q);

/// Inverse of arc_length_from_chord: chord spanned by a minor k-arc of
/// length s.
double chord_from_arc_length(double s, double k, ModelCurvature K);

/// Constant C(k, K) with s <= r + C r^3 for every admissible chord r <= 1.
///
/// Starts from twice the r^3 coefficient plus the positive part of the r^5
/// coefficient and is raised, if necessary, to the largest ratio
/// (s - r)/r^3 observed on a dense chord grid (times 1 + 1e-3).
double cubic_arc_constant(double k, ModelCurvature K);

struct ArcShape {
  double width = 0.0;       ///< max distance from the arc to its chord
  double base_angle = 0.0;  ///< angle between arc and chord at an endpoint
};

/// Width and base angle of the model k-arc over the given chord.
ArcShape arc_width_and_base_angle(const ArcChordQuery& q);

/// Lower bound (1/sqrt(K+)) arctan(sqrt(K+)/lambda+) for the focal distance
/// of a boundary with second fundamental form <= lambda+ in a manifold with
/// sectional curvature <= K+. Extended by its limits: pi/(2 sqrt(K+)) for
/// lambda+ <= 0, 1/lambda+ for K+ <= 0, +inf when both are <= 0.
double focal_radius_lower_bound(double K_plus, double lambda_plus);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace cgkit::model
