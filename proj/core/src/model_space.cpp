#include "cgkit/model_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "cgkit/error.hpp"

namespace cgkit::model {

namespace {

constexpr double kPi = std::numbers::pi;

// Relative slack used when deciding whether a triangle inequality holds.
constexpr double kTriangleSlack = 1e-12;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) throw PreconditionError(std::string(name) + " must be finite");
}

}  // namespace

double ModelCurvature::max_perimeter() const {
  return k_ > 0.0 ? 2.0 * kPi / std::sqrt(k_) : kInfinity;
}

double ModelCurvature::diameter() const { return k_ > 0.0 ? kPi / std::sqrt(k_) : kInfinity; }

double sn(double x, double K) {
  const double z = K * x * x;
  if (std::abs(z) < kTaylorSwitch) return x * (1.0 - z / 6.0 + z * z / 120.0);
  if (K > 0.0) {
    const double s = std::sqrt(K);
    return std::sin(s * x) / s;
  }
  const double s = std::sqrt(-K);
  return std::sinh(s * x) / s;
}

double vers(double x, double K) {
  const double half = sn(0.5 * x, K);
  return 2.0 * half * half;
}

double cs(double x, double K) { return 1.0 - K * vers(x, K); }

double asn(double y, double K) {
  const double z = K * y * y;
  if (std::abs(z) < kTaylorSwitch) return y * (1.0 + z / 6.0 + 3.0 * z * z / 40.0);
  if (K > 0.0) {
    const double s = std::sqrt(K);
    double w = s * y;
    if (w > 1.0) {
      if (w > 1.0 + 1e-12) throw DomainError("asn: argument exceeds 1/sqrt(K)");
      w = 1.0;
    }
    return std::asin(w) / s;
  }
  const double s = std::sqrt(-K);
  return std::asinh(s * y) / s;
}

double vers_inverse(double v, double K) {
  if (v < 0.0) v = 0.0;
  return 2.0 * asn(std::sqrt(0.5 * v), K);
}

double side_from_hinge(double a, double b, double gamma, ModelCurvature Kc) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(gamma, "gamma");
  if (a < 0.0 || b < 0.0) throw PreconditionError("side_from_hinge: negative side");
  if (gamma < -1e-12 || gamma > kPi + 1e-12)
    throw PreconditionError("side_from_hinge: angle outside [0, pi]");
  gamma = std::clamp(gamma, 0.0, kPi);
  const double K = Kc.value();
  if (Kc.spherical() && (a > Kc.diameter() || b > Kc.diameter()))
    throw DomainError("side_from_hinge: side longer than pi/sqrt(K)");

  const double half = std::sin(0.5 * gamma);
  const double v = vers(a - b, K) + 2.0 * sn(a, K) * sn(b, K) * half * half;
  if (Kc.spherical() && v * K > 2.0 * (1.0 + 1e-12))
    throw DomainError("side_from_hinge: hinge wraps around the sphere");
  const double c = vers_inverse(std::min(v, Kc.spherical() ? 2.0 / K : v), K);
  if (Kc.spherical() && a + b + c >= Kc.max_perimeter())
    throw DomainError("side_from_hinge: perimeter reaches 2*pi/sqrt(K)");
  return c;
}

double comparison_angle(double a, double b, double c, ModelCurvature Kc) {
  require_finite(a, "a");
  require_finite(b, "b");
  require_finite(c, "c");
  if (!(a > 0.0) || !(b > 0.0)) throw PreconditionError("comparison_angle: sides a, b must be > 0");
  if (c < 0.0) throw PreconditionError("comparison_angle: negative side");
  const double scale = a + b + c;
  const double slack = kTriangleSlack * scale;
  if (c > a + b + slack || c < std::abs(a - b) - slack)
    throw DomainError("comparison_angle: triangle inequality violated");
  const double K = Kc.value();
  if (Kc.spherical() && scale >= Kc.max_perimeter())
    throw DomainError("comparison_angle: perimeter reaches 2*pi/sqrt(K)");

  // Half-angle form: tan^2(gamma/2) = sn(s-a) sn(s-b) / (sn(s) sn(s-c)),
  // with s the half perimeter. Stable at both degenerate ends.
  const double num = sn(0.5 * (c + a - b), K) * sn(0.5 * (c - a + b), K);
  const double den = sn(0.5 * scale, K) * sn(0.5 * (a + b - c), K);
  return 2.0 * std::atan2(std::sqrt(std::max(num, 0.0)), std::sqrt(std::max(den, 0.0)));
}

double model_median(double x, double y, double z, ModelCurvature Kc) {
  // Validates the triangle (and the spherical perimeter) as a side effect.
  if (x > 0.0 && y > 0.0) (void)comparison_angle(x, y, z, Kc);
  const double K = Kc.value();
  const double vz = vers(0.5 * z, K);
  const double vm = (vers(x, K) + vers(y, K) - 2.0 * vz) / (2.0 * (1.0 - K * vz));
  return vers_inverse(vm, K);
}

double cubic_cosine_shift(double a, double b, double c, double C) {
  const double d = C * c * c * c;
  return d * (2.0 * c + d) / (2.0 * a * b);
}

double excess_angle_lower_bound(double a, double b, double c, double C, ModelCurvature Kc) {
  if (!(a > 0.0) || !(b > 0.0)) throw PreconditionError("excess_angle_lower_bound: a, b must be > 0");
  if (c < 0.0 || C < 0.0) throw PreconditionError("excess_angle_lower_bound: negative c or C");
  const double defect = C * c * c * c;
  if (C > 0.0 && !(defect < 0.1 * c))
    throw PreconditionError("excess_angle_lower_bound: requires C c^3 < c/10");
  const double slack = kTriangleSlack * (a + b + c);
  if (c > a + b + slack || c < std::abs(a - b) - slack)
    throw DomainError("excess_angle_lower_bound: triangle inequality violated");

  const double companion = c + defect;
  const double cos_companion =
      std::clamp((a * a + b * b - companion * companion) / (2.0 * a * b), -1.0, 1.0);
  const double cos_bound = std::min(1.0, cos_companion + cubic_cosine_shift(a, b, c, C));
  double bound = std::acos(cos_bound);
  if (Kc.value() < 0.0) bound = std::min(bound, comparison_angle(a, b, c, Kc));
  return bound;
}

namespace {

void validate_query(const ArcChordQuery& q) {
  require_finite(q.chord, "chord");
  require_finite(q.k, "k");
  if (q.chord < 0.0) throw PreconditionError("arc/chord: negative chord");
  if (q.k < 0.0) throw PreconditionError("arc/chord: negative curvature bound k");
}

// Curvature parameter of the arc-length/chord correspondence: the k-curve
// behaves like a "circle" whose sn-radius is 1/sqrt(k^2 + K).
double arc_parameter(double k, double K) { return k * k + K; }

}  // namespace

double arc_length_from_chord(const ArcChordQuery& q) {
  validate_query(q);
  const double K = q.K.value();
  if (q.K.spherical() && q.chord > q.K.diameter())
    throw DomainError("arc_length_from_chord: chord longer than pi/sqrt(K)");
  const double y = sn(0.5 * q.chord, K);
  const double p = arc_parameter(q.k, K);
  if (p > 0.0 && std::sqrt(p) * y > 1.0 + 1e-12)
    throw DomainError("arc_length_from_chord: chord exceeds the diameter of the complete k-curve");
  const double s = 2.0 * asn(y, p);
  if (q.K.spherical() && s + q.chord >= q.K.max_perimeter())
    throw DomainError("arc_length_from_chord: s + r must stay below 2*pi/sqrt(K)");
  return s;
}

double chord_from_arc_length(double s, double k, ModelCurvature Kc) {
  require_finite(s, "s");
  if (s < 0.0 || k < 0.0) throw PreconditionError("chord_from_arc_length: negative input");
  const double K = Kc.value();
  const double p = arc_parameter(k, K);
  if (p > 0.0 && 0.5 * s > 0.5 * kPi / std::sqrt(p) * (1.0 + 1e-12))
    throw DomainError("chord_from_arc_length: arc longer than half the complete k-curve");
  return 2.0 * asn(sn(0.5 * s, p), K);
}

double cubic_arc_constant(double k, ModelCurvature Kc) {
  if (k < 0.0) throw PreconditionError("cubic_arc_constant: negative k");
  const double K = Kc.value();
  const double k2 = k * k;
  double C = 2.0 * k2 / 24.0 + std::max(0.0, (9.0 * k2 * k2 + 8.0 * k2 * K) / 1920.0);
  if (k == 0.0) return C;

  // Largest admissible chord no longer than 1.
  double r_max = 1.0;
  const double p = arc_parameter(k, K);
  if (p > 0.0) r_max = std::min(r_max, 2.0 * asn(std::min(1.0 / std::sqrt(p), Kc.spherical() ? 1.0 / std::sqrt(K) : 1e300), K));
  if (Kc.spherical()) r_max = std::min(r_max, Kc.diameter());

  constexpr int kGrid = 4000;
  double worst = 0.0;
  for (int j = 1; j <= kGrid; ++j) {
    const double r = r_max * static_cast<double>(j) / kGrid;
    try {
      const double s = arc_length_from_chord({r, k, Kc});
      worst = std::max(worst, (s - r) / (r * r * r));
    } catch (const DomainError&) {
      break;
    }
  }
  return std::max(C, worst * (1.0 + 1e-3));
}

ArcShape arc_width_and_base_angle(const ArcChordQuery& q) {
  const double s = arc_length_from_chord(q);  // validates the domain
  if (q.k == 0.0 || q.chord == 0.0) return {};
  const double K = q.K.value();
  const double half = 0.5 * q.chord;

  // Base angle: sin(angle) = k * tn_K(r/2).
  const double tn = sn(half, K) / cs(half, K);
  const double base = std::asin(std::clamp(q.k * tn, 0.0, 1.0));

  // Width: right triangle (arc midpoint, chord midpoint, endpoint) whose
  // hypotenuse is the chord of the half arc; Pythagoras in versine form.
  const double e = chord_from_arc_length(0.5 * s, q.k, q.K);
  const double vh = vers(half, K);
  const double vw = (vers(e, K) - vh) / (1.0 - K * vh);
  return {vers_inverse(vw, K), base};
}

double focal_radius_lower_bound(double K_plus, double lambda_plus) {
  if (K_plus <= 0.0) return lambda_plus > 0.0 ? 1.0 / lambda_plus : kInfinity;
  const double root = std::sqrt(K_plus);
  if (lambda_plus <= 0.0) return 0.5 * kPi / root;
  const double z = root / lambda_plus;
  if (z * z < kTaylorSwitch) return (1.0 - z * z / 3.0 + z * z * z * z / 5.0) / lambda_plus;
  return std::atan(z) / root;
}

}  // namespace cgkit::model
