#pragma once

// Finite metric spaces stored as dense row-major distance matrices.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cgkit {

using Index = std::size_t;

class FiniteMetricSpace {
 public:
  FiniteMetricSpace() = default;

  /// Takes ownership of an n*n row-major matrix. Checks shape, zero
  /// diagonal, symmetry and nonnegativity (not the triangle inequality; see
  /// check_metric_axioms). `sentinel` > 0 marks entries >= sentinel as
  /// "different components" (infinite distance).
  FiniteMetricSpace(std::size_t n, std::vector<double> dist, std::vector<std::string> labels = {},
                    double sentinel = 0.0);

  /// Euclidean distances between the rows of a flat coordinate array.
  static FiniteMetricSpace from_points(std::size_t dim, std::span<const double> coords);

  std::size_t size() const noexcept { return n_; }
  double operator()(Index i, Index j) const noexcept { return d_[i * n_ + j]; }
  std::span<const double> row(Index i) const noexcept { return {d_.data() + i * n_, n_}; }
  const std::vector<double>& matrix() const noexcept { return d_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  double sentinel() const noexcept { return sentinel_; }
  bool infinite(double d) const noexcept { return sentinel_ > 0.0 && d >= sentinel_; }

  /// Largest finite distance.
  double diameter() const;

  /// Induced metric on a subset, in the order given.
  FiniteMetricSpace restricted(std::span<const Index> subset) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
  std::vector<std::string> labels_;
  double sentinel_ = 0.0;
};

struct AxiomReport {
  bool ok = true;
  bool exhaustive = true;
  std::size_t triples_checked = 0;
  double worst_violation = 0.0;  // max of d(i,j) - d(i,k) - d(k,j)
  Index i = 0, j = 0, k = 0;
};

/// Triangle inequality check: every triple for n <= 200, otherwise
/// `sampled_triples` seeded random triples. Tolerance is relative to the
/// diameter.
AxiomReport check_metric_axioms(const FiniteMetricSpace& X, double rel_tol = 1e-9,
                                std::size_t sampled_triples = 100000, std::uint64_t seed = 7);

/// sqrt(dA^2 + dB^2) on the product, index a * |B| + b.
FiniteMetricSpace product_metric(const FiniteMetricSpace& A, const FiniteMetricSpace& B);

/// Components at mutual distance `sentinel` (10^6 times the largest finite
/// distance of either part).
FiniteMetricSpace disjoint_union(const FiniteMetricSpace& A, const FiniteMetricSpace& B);

/// max(sup_a d(a,B), sup_b d(b,A)). Throws PreconditionError if a set is empty.
double hausdorff_distance(std::span<const Index> A, std::span<const Index> B,
                          const FiniteMetricSpace& X);

/// Farthest-point sampling: adds the farthest point while it is more than
/// eps from the net. Result covers X at radius eps and is eps-separated.
std::vector<Index> eps_net(const FiniteMetricSpace& X, double eps, Index start = 0);

/// Covering radius of a subset: sup_x d(x, S).
double covering_radius(const FiniteMetricSpace& X, std::span<const Index> S);

/// Finest vertex chain from p to q whose consecutive distances add up to
/// d(p,q) (within a relative tolerance). At least {p, q}.
std::vector<Index> discrete_geodesic(const FiniteMetricSpace& X, Index p, Index q,
                                     double rel_tol = 1e-9);

/// Sum of consecutive distances along a vertex path.
double path_length(const FiniteMetricSpace& X, std::span<const Index> path);

}  // namespace cgkit
