#include <cmath>
#include <memory>
#include <numbers>
#include <random>

#include "cgkit/curvature_tests.hpp"
#include "cgkit/error.hpp"
#include "cgkit/gallery.hpp"
#include "cgkit/gh.hpp"
#include "doctest.h"

using namespace cgkit;

namespace {

constexpr double kPi = std::numbers::pi;

using Ptr = std::shared_ptr<const FiniteMetricSpace>;

Ptr share(FiniteMetricSpace X) { return std::make_shared<const FiniteMetricSpace>(std::move(X)); }

std::vector<Index> iota(std::size_t n) {
  std::vector<Index> v(n);
  for (Index k = 0; k < n; ++k) v[k] = k;
  return v;
}

FiniteMetricSpace point_space() { return FiniteMetricSpace(1, std::vector<double>{0.0}); }

// Brute-force oracle for the approximation epsilon.
double brute_epsilon(const FiniteMetricSpace& X, const FiniteMetricSpace& Y, const std::vector<Index>& f) {
  double dis = 0.0, net = 0.0;
  for (Index a = 0; a < X.size(); ++a)
    for (Index b = 0; b < X.size(); ++b) dis = std::max(dis, std::abs(Y(f[a], f[b]) - X(a, b)));
  for (Index y = 0; y < Y.size(); ++y) {
    double best = INFINITY;
    for (Index a = 0; a < X.size(); ++a) best = std::min(best, Y(y, f[a]));
    net = std::max(net, best);
  }
  return std::max(dis, net);
}

}  // namespace

TEST_CASE("verify_approx: identity, constant map, random maps") {
  const Ptr S = share(circle_space(30));
  const ApproxMap id = make_approx_map(S, S, iota(30));
  CHECK(verify_approx(id) == 0.0);

  const Ptr T = share(segment_space(20));
  const ApproxMap c = make_approx_map(S, T, std::vector<Index>(30, 5));
  CHECK(verify_approx(c) >= std::max(S->diameter(), 15.0 / 19.0) - 1e-12);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<Index> pick(0, 19);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Index> a(30);
    for (Index& x : a) x = pick(rng);
    const ApproxMap f = make_approx_map(S, T, a);
    CHECK(f.epsilon() == doctest::Approx(brute_epsilon(*S, *T, a)).epsilon(1e-12));
    CHECK(verify_approx(f) == f.epsilon());
  }
  CHECK_THROWS_AS(make_approx_map(S, T, std::vector<Index>(29, 0)), PreconditionError);
  CHECK_THROWS_AS(make_approx_map(S, T, std::vector<Index>(30, 20)), PreconditionError);
}

TEST_CASE("thin cylinder projects onto its core circle") {
  const std::size_t n = 40, m = 5;
  const double delta = 0.1;
  const Ptr C = share(circle_space(n));
  const Ptr Cyl = share(product_metric(*C, segment_space(m, delta)));
  std::vector<Index> proj(n * m);
  for (Index k = 0; k < proj.size(); ++k) proj[k] = k / m;
  const ApproxMap f = make_approx_map(Cyl, C, proj);
  CHECK(f.epsilon() <= 2.0 * delta);
  const GHBounds b = gh_bounds(*Cyl, *C, &f);
  CHECK(b.upper <= 0.6);
  CHECK(b.lower <= 0.05);
  CHECK(b.lower <= b.upper);
  CHECK(b.lower == doctest::Approx(0.5 * (Cyl->diameter() - C->diameter())));
}

TEST_CASE("gh_bounds: trivial cases and the inconsistency guard") {
  const Ptr S = share(circle_space(24));
  const ApproxMap id = make_approx_map(S, S, iota(24));
  const GHBounds same = gh_bounds(*S, *S, &id);
  CHECK(same.lower == 0.0);
  CHECK(same.upper == 0.0);

  const Ptr P = share(point_space());
  const GHBounds pt = gh_bounds(P, S);
  CHECK(pt.lower == doctest::Approx(S->diameter() / 2));
  CHECK(pt.upper <= 3.0 * S->diameter() + 1e-12);

  // A map between other spaces: epsilon 0 against a diameter gap.
  CHECK_THROWS_AS(gh_bounds(*P, *S, &id), InconsistencyError);
}

TEST_CASE("search_approx") {
  const Ptr S = share(circle_space(32));
  CHECK(search_approx(S, S).epsilon() == 0.0);

  const Ptr X = share(segment_space(100)), Y = share(segment_space(50));
  const ApproxMap a = search_approx(X, Y), b = search_approx(X, Y);
  CHECK(a.epsilon() <= 0.03);
  CHECK(a.assignment == b.assignment);

  // Small segments: search agrees with the exhaustive minimum.
  const FiniteMetricSpace s6 = segment_space(6), s4 = segment_space(4);
  const double best = exhaustive_min_epsilon(s6, s4);
  const ApproxMap found = search_approx(share(s6), share(s4));
  CHECK(found.epsilon() >= best - 1e-12);
  CHECK(found.epsilon() <= best + 1e-12);
  CHECK_THROWS_AS(exhaustive_min_epsilon(segment_space(9), s4), PreconditionError);
}

TEST_CASE("circle and segment of equal diameter are far apart") {
  const FiniteMetricSpace C = circle_space(64);
  // Eight target points keep the sweep over all maps small.
  const FiniteMetricSpace I = segment_space(8, C.diameter());
  const auto net = eps_net(C, 0.5);
  REQUIRE(net.size() <= 8);
  const double lb = distortion_lower_bound(C, net, I);
  CHECK(lb >= 0.2);
  const ApproxMap f = search_approx(share(C), share(I));
  CHECK(f.epsilon() >= lb - 1e-12);
}

TEST_CASE("quotient metric") {
  const FiniteMetricSpace I = segment_space(11);
  const Quotient same = quotient_metric(I, std::vector<Index>{4});
  CHECK(same.metric.size() == I.size());
  for (Index a = 0; a < I.size(); ++a)
    for (Index b = 0; b < I.size(); ++b)
      CHECK(same.metric(same.projection[a], same.projection[b]) == doctest::Approx(I(a, b)));

  // Two unit segments wedged at their left ends.
  const FiniteMetricSpace Y = disjoint_union(I, I);
  CHECK(Y.infinite(Y(0, 11)));
  const Quotient w = quotient_metric(Y, std::vector<Index>{0, 11});
  CHECK(w.metric(w.projection[10], w.projection[21]) == 2.0);
  CHECK(w.projection[0] == w.collapsed);
  CHECK(w.projection[11] == w.collapsed);
  CHECK(check_metric_axioms(w.metric).ok);

  // Circle of circumference 4 with two antipodes identified.
  const FiniteMetricSpace C = circle_space(40, 2.0 / kPi);
  const Quotient eight = quotient_metric(C, std::vector<Index>{0, 20});
  CHECK(eight.metric(eight.projection[10], eight.projection[30]) == doctest::Approx(2.0));
  CHECK(eight.metric(eight.projection[10], eight.projection[20]) == doctest::Approx(1.0));
  CHECK(check_metric_axioms(eight.metric).ok);

  CHECK_THROWS_AS(quotient_metric(I, std::vector<Index>{}), PreconditionError);
}

TEST_CASE("three-arm wedge is not curvature bounded below") {
  const FiniteMetricSpace I = segment_space(6);
  const FiniteMetricSpace Y = disjoint_union(disjoint_union(I, I), I);
  const Quotient q = quotient_metric(Y, std::vector<Index>{0, 6, 12});
  for (double k : {-100.0, -10.0, 0.0, 10.0}) CHECK_FALSE(cbb_quadruple_test(q.metric, k).pass);
  // Two arms: a segment, fine.
  const Quotient two = quotient_metric(disjoint_union(I, I), std::vector<Index>{0, 6});
  CHECK(cbb_quadruple_test(two.metric, 0.0).pass);
}

TEST_CASE("gluing at a single point changes nothing") {
  const Ptr P = share(point_space());
  const Ptr Y = share(segment_space(21));
  const GluingInstance g = glue(P, {0}, Y, {10});
  REQUIRE(g.Z->size() == 21);
  for (Index a = 0; a < 21; ++a)
    for (Index b = 0; b < 21; ++b) CHECK((*g.Z)(g.y_in_z[a], g.y_in_z[b]) == doctest::Approx((*Y)(a, b)));

  const Ptr L = share(segment_space(11));
  std::vector<Index> a(21);
  for (Index k = 0; k < 21; ++k) a[k] = k / 2;
  const ApproxMap f = make_approx_map(Y, L, a);
  const GluingCheck c = gluing_limit_check(g, L, std::vector<Index>{5}, f);
  CHECK(c.pass);
  CHECK(c.diam_x == 0.0);
  CHECK(c.drift == 0.0);
  CHECK(c.epsilon <= f.epsilon() + 1e-12);
}

TEST_CASE("glue: Z distances never exceed the pieces") {
  const Ptr X = share(circle_space(20, 0.2)), Y = share(segment_space(15, 2.0));
  const GluingInstance g = glue(X, {0, 10}, Y, {0, 14});
  for (Index a = 0; a < X->size(); ++a)
    for (Index b = 0; b < X->size(); ++b) CHECK((*g.Z)(g.x_in_z[a], g.x_in_z[b]) <= (*X)(a, b) + 1e-12);
  for (Index a = 0; a < Y->size(); ++a)
    for (Index b = 0; b < Y->size(); ++b) CHECK((*g.Z)(g.y_in_z[a], g.y_in_z[b]) <= (*Y)(a, b) + 1e-12);
  CHECK(check_metric_axioms(*g.Z).ok);
}

TEST_CASE("warped limit map") {
  const std::size_t n = 40, m = 6;
  const FiniteMetricSpace Y = segment_space(m);
  std::vector<double> phi(m), one(m, 1.0);
  for (Index y = 0; y < m; ++y) phi[y] = 1.0 + static_cast<double>(y) / (m - 1);

  const Ptr X = share(circle_space(n));
  const ApproxMap id = make_approx_map(X, X, iota(n));
  CHECK(warped_limit_map(*X, *X, id, Y, phi).epsilon() <= 1e-12);

  double prev = INFINITY;
  for (int i : {5, 10, 20}) {
    const Ptr Xi = share(circle_space(n, 1.0 + 1.0 / i));
    const ApproxMap f = make_approx_map(Xi, X, iota(n));
    const double eps = f.epsilon();
    const double slack = 2.0 * (2 * kPi / n);
    CHECK(warped_limit_map(*Xi, *X, f, Y, one).distortion <= eps + slack);
    const ApproxMap F = warped_limit_map(*Xi, *X, f, Y, phi);
    CHECK(F.distortion <= 2.0 * eps + slack);
    CHECK(F.epsilon() < prev);
    prev = F.epsilon();
  }
}
