#include "cgkit/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cgkit/error.hpp"

namespace cgkit {

FiniteMetricSpace::FiniteMetricSpace(std::size_t n, std::vector<double> dist,
                                     std::vector<std::string> labels, double sentinel)
    : n_(n), d_(std::move(dist)), labels_(std::move(labels)), sentinel_(sentinel) {
  if (d_.size() != n_ * n_) throw PreconditionError("distance matrix is not n x n");
  if (!labels_.empty() && labels_.size() != n_) throw PreconditionError("label count != n");
  for (std::size_t i = 0; i < n_; ++i) {
    if (d_[i * n_ + i] != 0.0) throw PreconditionError("nonzero diagonal entry");
    for (std::size_t j = i + 1; j < n_; ++j) {
      const double a = d_[i * n_ + j], b = d_[j * n_ + i];
      if (!(a >= 0.0) || std::isnan(b)) throw PreconditionError("negative or NaN distance");
      if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a)))
        throw PreconditionError("distance matrix not symmetric");
    }
  }
}

FiniteMetricSpace FiniteMetricSpace::from_points(std::size_t dim, std::span<const double> coords) {
  if (dim == 0 || coords.size() % dim) throw PreconditionError("coordinate array / dim mismatch");
  const std::size_t n = coords.size() / dim;
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double t = coords[i * dim + k] - coords[j * dim + k];
        s += t * t;
      }
      d[i * n + j] = d[j * n + i] = std::sqrt(s);
    }
  return FiniteMetricSpace(n, std::move(d));
}

double FiniteMetricSpace::diameter() const {
  double m = 0.0;
  for (double v : d_)
    if (!infinite(v)) m = std::max(m, v);
  return m;
}

FiniteMetricSpace FiniteMetricSpace::restricted(std::span<const Index> subset) const {
  const std::size_t m = subset.size();
  std::vector<double> d(m * m);
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < m; ++a) {
    if (subset[a] >= n_) throw PreconditionError("subset index out of range");
    for (std::size_t b = 0; b < m; ++b) d[a * m + b] = (*this)(subset[a], subset[b]);
    if (!labels_.empty()) labels.push_back(labels_[subset[a]]);
  }
  return FiniteMetricSpace(m, std::move(d), std::move(labels), sentinel_);
}

AxiomReport check_metric_axioms(const FiniteMetricSpace& X, double rel_tol,
                                std::size_t sampled_triples, std::uint64_t seed) {
  AxiomReport r;
  const std::size_t n = X.size();
  if (n < 3) return r;
  const double tol = rel_tol * std::max(1.0, X.diameter());
  auto visit = [&](Index i, Index j, Index k) {
    ++r.triples_checked;
    const double v = X(i, j) - X(i, k) - X(k, j);
    if (v > r.worst_violation) {
      r.worst_violation = v;
      r.i = i, r.j = j, r.k = k;
    }
  };
  if (n <= 200) {
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j)
        for (Index k = 0; k < n; ++k)
          if (k != i && k != j) visit(i, j, k);
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Index> pick(0, n - 1);
    for (std::size_t s = 0; s < sampled_triples; ++s) visit(pick(rng), pick(rng), pick(rng));
  }
  r.ok = r.worst_violation <= tol;
  return r;
}

FiniteMetricSpace product_metric(const FiniteMetricSpace& A, const FiniteMetricSpace& B) {
  const std::size_t na = A.size(), nb = B.size(), n = na * nb;
  std::vector<double> d(n * n);
  for (Index a = 0; a < na; ++a)
    for (Index b = 0; b < nb; ++b)
      for (Index a2 = 0; a2 < na; ++a2) {
        const double da = A(a, a2);
        double* out = &d[(a * nb + b) * n + a2 * nb];
        for (Index b2 = 0; b2 < nb; ++b2) out[b2] = std::sqrt(da * da + B(b, b2) * B(b, b2));
      }
  return FiniteMetricSpace(n, std::move(d));
}

FiniteMetricSpace disjoint_union(const FiniteMetricSpace& A, const FiniteMetricSpace& B) {
  const std::size_t na = A.size(), nb = B.size(), n = na + nb;
  const double sentinel = 1e6 * std::max({A.diameter(), B.diameter(), 1e-300});
  std::vector<double> d(n * n, sentinel);
  for (Index i = 0; i < na; ++i)
    for (Index j = 0; j < na; ++j) d[i * n + j] = A.infinite(A(i, j)) ? sentinel : A(i, j);
  for (Index i = 0; i < nb; ++i)
    for (Index j = 0; j < nb; ++j)
      d[(na + i) * n + na + j] = B.infinite(B(i, j)) ? sentinel : B(i, j);
  std::vector<std::string> labels;
  if (!A.labels().empty() || !B.labels().empty()) {
    for (Index i = 0; i < na; ++i) labels.push_back(A.labels().empty() ? "" : A.labels()[i]);
    for (Index i = 0; i < nb; ++i) labels.push_back(B.labels().empty() ? "" : B.labels()[i]);
  }
  return FiniteMetricSpace(n, std::move(d), std::move(labels), sentinel);
}

namespace {

double directed(std::span<const Index> from, std::span<const Index> to, const FiniteMetricSpace& X) {
  double sup = 0.0;
  for (Index a : from) {
    double inf = std::numeric_limits<double>::infinity();
    for (Index b : to) inf = std::min(inf, X(a, b));
    sup = std::max(sup, inf);
  }
  return sup;
}

}  // namespace

double hausdorff_distance(std::span<const Index> A, std::span<const Index> B,
                          const FiniteMetricSpace& X) {
  if (A.empty() || B.empty()) throw PreconditionError("hausdorff_distance: empty subset");
  for (Index v : A)
    if (v >= X.size()) throw PreconditionError("hausdorff_distance: index out of range");
  for (Index v : B)
    if (v >= X.size()) throw PreconditionError("hausdorff_distance: index out of range");
  return std::max(directed(A, B, X), directed(B, A, X));
}

std::vector<Index> eps_net(const FiniteMetricSpace& X, double eps, Index start) {
  if (!(eps > 0.0)) throw PreconditionError("eps_net: eps must be > 0");
  const std::size_t n = X.size();
  if (n == 0) return {};
  if (start >= n) throw PreconditionError("eps_net: start out of range");
  std::vector<Index> net{start};
  std::vector<double> gap(X.row(start).begin(), X.row(start).end());
  for (;;) {
    const auto it = std::max_element(gap.begin(), gap.end());
    if (*it <= eps) break;
    const Index far = static_cast<Index>(it - gap.begin());
    net.push_back(far);
    const auto row = X.row(far);
    for (Index i = 0; i < n; ++i) gap[i] = std::min(gap[i], row[i]);
  }
  return net;
}

double covering_radius(const FiniteMetricSpace& X, std::span<const Index> S) {
  if (S.empty()) throw PreconditionError("covering_radius: empty subset");
  std::vector<Index> all(X.size());
  for (Index i = 0; i < all.size(); ++i) all[i] = i;
  return directed(all, S, X);
}

std::vector<Index> discrete_geodesic(const FiniteMetricSpace& X, Index p, Index q, double rel_tol) {
  const std::size_t n = X.size();
  if (p >= n || q >= n) throw PreconditionError("discrete_geodesic: index out of range");
  if (p == q) return {p};
  const double total = X(p, q);
  const double tol = rel_tol * std::max(1.0, total);

  // Points between p and q, ordered by distance from p.
  std::vector<Index> between;
  for (Index x = 0; x < n; ++x)
    if (x != p && x != q && X(p, x) > 0.0 && X(x, q) > 0.0 && X(p, x) + X(x, q) <= total + tol)
      between.push_back(x);
  std::sort(between.begin(), between.end(),
            [&](Index a, Index b) { return X(p, a) < X(p, b) || (X(p, a) == X(p, b) && a < b); });
  std::vector<Index> chain{p};
  chain.insert(chain.end(), between.begin(), between.end());
  chain.push_back(q);

  // Longest additive chain (DAG longest path). Telescoping makes the
  // per-step check sufficient.
  const std::size_t m = chain.size();
  std::vector<int> best(m, -1);
  std::vector<std::size_t> prev(m, 0);
  best[0] = 0;
  for (std::size_t b = 1; b < m; ++b)
    for (std::size_t a = 0; a < b; ++a) {
      if (best[a] < 0) continue;
      const double step = X(chain[a], chain[b]);
      if (step <= 0.0) continue;
      if (std::abs(X(p, chain[a]) + step - X(p, chain[b])) > tol) continue;
      if (best[a] + 1 > best[b]) {
        best[b] = best[a] + 1;
        prev[b] = a;
      }
    }
  std::vector<Index> path;
  for (std::size_t v = m - 1;; v = prev[v]) {
    path.push_back(chain[v]);
    if (v == 0) break;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

double path_length(const FiniteMetricSpace& X, std::span<const Index> path) {
  double s = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) s += X(path[i - 1], path[i]);
  return s;
}

}  // namespace cgkit
