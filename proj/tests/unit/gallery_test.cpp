#include <cmath>
#include <numbers>
#include <string>

#include "cgkit/error.hpp"
#include "cgkit/gallery.hpp"
#include "cgkit/radii.hpp"
#include "cgkit/sampled_manifold.hpp"
#include "doctest.h"

using namespace cgkit;

namespace {

constexpr double kPi = std::numbers::pi;

ExampleSpec spec(Family f, int i = 10) {
  ExampleSpec s;
  s.family = f;
  s.i = i;
  return s;
}

}  // namespace

TEST_CASE("family names round-trip") {
  for (Family f : all_families()) CHECK(family_from_name(family_name(f)) == f);
  CHECK(all_families().size() == 8);
  CHECK_THROWS_AS(family_from_name("klein_bottle"), ParseError);
}

TEST_CASE("ExampleSpec::resolved fills defaults and rejects bad values") {
  const ExampleSpec c = spec(Family::capsule_cross_circle, 16).resolved();
  CHECK(c.eps == doctest::Approx(0.25));
  CHECK(c.h == doctest::Approx(0.025));
  CHECK(spec(Family::thin_cylinder, 4).resolved().radius == 0.25);
  CHECK(spec(Family::plane_minus_ball).resolved().extent == doctest::Approx(2.5));

  ExampleSpec bad = spec(Family::thin_torus, 0);
  CHECK_THROWS_AS(bad.resolved(), DomainError);
  bad = spec(Family::thin_torus);
  bad.h = -0.1;
  CHECK_THROWS_AS(bad.resolved(), DomainError);
  bad = spec(Family::capsule_cross_circle);
  bad.eps = 0.05;  // i * eps = 0.5
  CHECK_THROWS_AS(bad.resolved(), DomainError);
  bad = spec(Family::tube_neighborhood);
  bad.curve = "helix";
  CHECK_THROWS_AS(bad.resolved(), DomainError);
  bad = spec(Family::sphere_minus_ball);
  bad.r = 3.2;
  CHECK_THROWS_AS(bad.resolved(), DomainError);
  bad = spec(Family::plane_minus_ball);
  bad.extent = 1.5;
  CHECK_THROWS_AS(bad.resolved(), DomainError);
  CHECK_THROWS_AS(generate(bad), DomainError);
}

TEST_CASE("ground truth closed forms") {
  for (int i : {1, 5, 10, 40}) {
    const GroundTruth t = ground_truth(spec(Family::thin_torus, i));
    CHECK(*t.inj == doctest::Approx(kPi / i));
    CHECK(*t.diameter == doctest::Approx(std::hypot(kPi / i, 2.0 / i)));
  }
  const GroundTruth cap = ground_truth(spec(Family::capsule_cross_circle, 10));
  const double e = 1.0 / std::sqrt(10.0);
  CHECK(*cap.inradius == doctest::Approx(0.5 * kPi * e + e * std::asin(1.0 / (10.0 * e))));

  ExampleSpec sp = spec(Family::sphere_minus_ball);
  for (double r : {0.3, 1.0, 1.5}) {
    sp.r = r;
    const GroundTruth t = ground_truth(sp);
    CHECK(*t.i_boundary == doctest::Approx(kPi - r));
    CHECK(t.diameter.has_value());
  }
  sp.r = 2.0;
  const GroundTruth big = ground_truth(sp);
  CHECK(*big.i_boundary == doctest::Approx(kPi - 2.0));
  CHECK_FALSE(big.diameter.has_value());
  CHECK_FALSE(big.injectivity_proxy.has_value());

  const GroundTruth plane = ground_truth(spec(Family::plane_minus_ball));
  CHECK(*plane.injectivity_proxy == doctest::Approx(std::sqrt(3.0) + 2.0 * kPi / 3.0));
  CHECK(*plane.injectivity_proxy == doctest::Approx(3.8264).epsilon(1e-4));

  // Absent, not invented.
  CHECK_FALSE(ground_truth(spec(Family::gaussian_slab)).diameter.has_value());
  CHECK_FALSE(ground_truth(spec(Family::capsule_cross_circle)).inj.has_value());
}

TEST_CASE("generate is deterministic and flags boundaries") {
  for (Family f : all_families()) {
    ExampleSpec s = spec(f, 4);
    if (f == Family::capsule_cross_circle) s.i = 10;
    const SampledManifold a = generate(s), b = generate(s);
    CHECK(a.coords() == b.coords());
    CHECK(a.boundary() == b.boundary());
    REQUIRE(a.edges().size() == b.edges().size());
    CHECK(a.size() > 0);
    CHECK(a.connected());
    CHECK_FALSE(a.boundary_indices().empty());
  }
}

TEST_CASE("thin torus: circle and width distances are exact") {
  const int i = 10;
  ExampleSpec s = spec(Family::thin_torus, i);
  const SampledManifold m = generate(s);
  // Antipodes on the middle circle, and the two ends of one segment.
  const double mid[3] = {1.0 / i, 0.0, 0.0}, anti[3] = {-1.0 / i, 0.0, 0.0};
  const double lo[3] = {1.0 / i, 0.0, -1.0 / i}, hi[3] = {1.0 / i, 0.0, 1.0 / i};
  const Index p = nearest_vertex(m, mid), q = nearest_vertex(m, anti);
  CHECK(dijkstra(m, p)[q] == doctest::Approx(kPi / i).epsilon(1e-9));
  const Index a = nearest_vertex(m, lo), b = nearest_vertex(m, hi);
  CHECK(dijkstra(m, a)[b] == doctest::Approx(2.0 / i).epsilon(1e-9));
  // Off-lattice directions carry the stencil's relative error.
  const RadiiReport r = radii_report(m);
  CHECK(r.diameter == doctest::Approx(*ground_truth(s).diameter).epsilon(0.02));
  CHECK(r.diameter >= *ground_truth(s).diameter - 1e-12);
}

TEST_CASE("plane minus ball: proxy converges under refinement") {
  ExampleSpec s = spec(Family::plane_minus_ball);
  const double truth = *ground_truth(s).injectivity_proxy;
  double prev = INFINITY;
  for (double h : {0.125, 0.0625, 0.03125}) {
    s.h = h;
    const double err = std::abs(injectivity_proxy(generate(s), s) - truth);
    CHECK(err <= 0.5 * prev);
    CHECK(err <= 0.05 * h);
    prev = err;
  }
}

TEST_CASE("sphere minus ball: antipodal boundary proxy") {
  ExampleSpec s = spec(Family::sphere_minus_ball);
  s.r = 1.0;
  s.h = 0.05;
  const double proxy = injectivity_proxy(generate(s), s);
  CHECK(proxy == doctest::Approx(*ground_truth(s).injectivity_proxy).epsilon(0.03));
  CHECK_THROWS_AS(injectivity_proxy(generate(spec(Family::thin_torus)), spec(Family::thin_torus)),
                  PreconditionError);
}

TEST_CASE("capsule inradius tracks the closed form") {
  for (int i : {10, 20}) {
    ExampleSpec s = spec(Family::capsule_cross_circle, i);
    const RadiiReport r = radii_report(generate(s));
    CHECK(r.inradius == doctest::Approx(*ground_truth(s).inradius).epsilon(0.02));
    CHECK(r.boundary_components == 1);
  }
}

TEST_CASE("auxiliary spaces") {
  const FiniteMetricSpace T = tripod(4, 2.0);
  CHECK(T.size() == 13);
  CHECK(T.diameter() == doctest::Approx(4.0));
  CHECK(T(0, 4) == doctest::Approx(2.0));
  CHECK(segment_space(5, 2.0)(0, 4) == 2.0);
  CHECK(circle_space(8, 1.0)(0, 4) == doctest::Approx(kPi));
  CHECK(flat_grid(3, 0.5)(0, 8) == doctest::Approx(std::sqrt(2.0)));
  const SampledManifold disc = planar_disc(0.1);
  for (Index v : disc.boundary_indices())
    CHECK(std::hypot(disc.point(v)[0], disc.point(v)[1]) == doctest::Approx(1.0));
  const SampledManifold s2 = icosphere(2, 2.0);
  CHECK(s2.size() == 162);
  CHECK(std::hypot(s2.point(7)[0], s2.point(7)[1], s2.point(7)[2]) == doctest::Approx(2.0));
}
