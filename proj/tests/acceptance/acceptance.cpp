// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "cgkit/collar.hpp"
#include "cgkit/curvature_tests.hpp"
#include "cgkit/experiment.hpp"
#include "cgkit/gallery.hpp"
#include "cgkit/gh.hpp"
#include "cgkit/model_space.hpp"
#include "cgkit/radii.hpp"

namespace {

using namespace cgkit;
constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Appends a note and folds the check into the outcome.
void check(Outcome& o, bool ok, const std::string& note) {
  if (!ok) o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += (ok ? "" : "FAILED ") + note;
}

Outcome arc_chord() {
  Outcome o;
  double worst_closed = 0.0, worst_series = 0.0;
  bool series_ok = true;
  for (double r : {0.05, 0.1, 0.2}) {
    const double s = model::arc_length_from_chord({r, 1.0, model::ModelCurvature{0.0}});
    worst_closed = std::max(worst_closed, std::abs(s - 2.0 * std::asin(r / 2.0)));
    const double dev = std::abs(s - (r + r * r * r / 24.0));
    worst_series = std::max(worst_series, dev / std::pow(r, 5));
    series_ok = series_ok && dev <= 2.0 * std::pow(r, 5);
  }
  check(o, worst_closed <= 1e-10, "max |s - 2 asin(r/2)| = " + num(worst_closed));
  check(o, series_ok, "max |s - (r + r^3/24)| / r^5 = " + num(worst_series) + " (limit 2)");
  return o;
}

Outcome warp_invariants() {
  Outcome o;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> lam(-5.0, -0.01), eps(0.01, 0.99), t0(0.05, 2.0);
  std::size_t bad_start = 0, bad_end = 0, bad_slope = 0, bad_mono = 0;
  double worst_end = 0.0;
  constexpr std::size_t kGrid = 10000;
  for (int s = 0; s < 1000; ++s) {
    const WarpProfile p = warp_profile(lam(rng), eps(rng), t0(rng));
    if (p.phi(0.0) != 1.0) ++bad_start;
    const double end = std::abs(p.phi(p.t0()) - p.eps());
    worst_end = std::max(worst_end, end);
    if (end > 1e-9) ++bad_end;
    if (p.dphi(p.t0()) != 0.0) ++bad_slope;
    double prev = p.phi(0.0);
    for (std::size_t k = 1; k < kGrid; ++k) {
      const double v = p.phi(p.t0() * static_cast<double>(k) / static_cast<double>(kGrid - 1));
      if (v > prev) {
        ++bad_mono;
        break;
      }
      prev = v;
    }
  }
  check(o, bad_start == 0, "phi(0) != 1 in " + std::to_string(bad_start) + "/1000");
  check(o, bad_end == 0, "max |phi(t0) - eps| = " + num(worst_end));
  check(o, bad_slope == 0, "phi'(t0) != 0 in " + std::to_string(bad_slope) + "/1000");
  check(o, bad_mono == 0, "non-monotone in " + std::to_string(bad_mono) + "/1000");
  return o;
}

Outcome collar_certificates() {
  Outcome o;
  double prev = -std::numeric_limits<double>::infinity();
  std::string tang;
  for (int i : {4, 9, 16, 25, 100}) {
    const WarpProfile p = adaptive_profile(i);
    const CurvatureBound rb = radial_bound(p), tb = tangential_bound(p, 0.0);
    const double gr = grid_min_radial(p), gt = grid_min_tangential(p, 0.0);
    check(o, gr >= rb.value && rb.certified,
          "i=" + std::to_string(i) + " radial grid " + num(gr) + " >= " + num(rb.value));
    check(o, gt >= tb.value && tb.certified,
          "i=" + std::to_string(i) + " tangential grid " + num(gt) + " >= " + num(tb.value));
    check(o, tb.value > prev && tb.value <= 0.0, "tangential bound " + num(tb.value) + " increases to 0");
    prev = tb.value;
  }
  check(o, std::abs(prev) < 0.01, "|tangential bound| at i=100 is " + num(std::abs(prev)));
  return o;
}

Outcome capsule_inradius() {
  Outcome o;
  for (int i : {10, 20, 40}) {
    ExampleSpec s;
    s.family = Family::capsule_cross_circle;
    s.i = i;
    s.eps = 1.0 / std::sqrt(static_cast<double>(i));
    s.h = s.eps / 20.0;
    const SampledManifold m = generate(s);
    const auto d = distance_to_boundary(m);
    const double measured = *std::max_element(d.begin(), d.end());
    const double truth = 0.5 * kPi * s.eps + s.eps * std::asin(1.0 / (i * s.eps));
    const double rel = measured / truth - 1.0;
    check(o, std::abs(rel) <= 0.02, "i=" + std::to_string(i) + " rel err " + num(rel));
  }
  return o;
}

Outcome projection_certificates() {
  Outcome o;
  const SampledManifold disc = planar_disc(0.06);
  const double h = disc.mesh_scale();
  const WarpProfile p = warp_profile(-1.0, 0.5, 0.2);
  const CollarExtension e = build_extension(disc, p, 20);
  const ApproxMap f = projection(e);
  const ProjectionBounds b = projection_bounds(p, 2.0);
  const FiniteMetricSpace &ext = *f.source, &base = *f.target;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<Index> pick(0, ext.size() - 1);
  double lip = 0.0, dist = 0.0;
  for (int s = 0; s < 10000; ++s) {
    const Index x = pick(rng), y = pick(rng);
    if (x == y) continue;
    const double dm = base(f.assignment[x], f.assignment[y]), de = ext(x, y);
    lip = std::max(lip, dm / de);
    dist = std::max(dist, std::abs(dm - de));
  }
  check(o, lip <= b.lipschitz + 5.0 * h, "Lipschitz " + num(lip) + " <= " + num(b.lipschitz + 5.0 * h));
  check(o, dist <= b.distortion + 5.0 * h, "distortion " + num(dist) + " <= " + num(b.distortion + 5.0 * h));
  check(o, f.distortion <= b.distortion + 5.0 * h, "distortion over all pairs " + num(f.distortion));
  return o;
}

Outcome quotient_gluing() {
  Outcome o;
  {
    const FiniteMetricSpace U = disjoint_union(segment_space(11), segment_space(11));
    const std::vector<Index> A{0, 11};
    const Quotient q = quotient_metric(U, A);
    const double far = q.metric(q.projection[10], q.projection[21]);
    check(o, far == 2.0, "2-wedge far endpoints at " + num(far));
  }
  {
    const FiniteMetricSpace U =
        disjoint_union(disjoint_union(segment_space(6), segment_space(6)), segment_space(6));
    const std::vector<Index> A{0, 6, 12};
    const Quotient q = quotient_metric(U, A);
    std::size_t passing = 0, tried = 0;
    for (int s = 0; s <= 400; ++s, ++tried) {
      const double k = -100.0 + 0.5 * s;
      if (cbb_quadruple_test(q.metric, k).pass) ++passing;
    }
    const CurvatureBounds lb = estimate_lower_bound(q.metric);
    check(o, passing == 0 && std::isinf(lb.k_lower),
          "3-wedge passes at " + std::to_string(passing) + "/" + std::to_string(tried) + " k");
  }
  double prev = std::numeric_limits<double>::infinity();
  for (int i : {10, 20, 40}) {
    ExampleSpec s;
    s.family = Family::thin_cylinder;
    s.i = i;
    const DoubleCollar dc = double_collar(s, adaptive_profile(i), 20);
    const GluingCheck g = gluing_limit_check(dc.glued, dc.y_limit, dc.a_limit, dc.f);
    check(o, g.epsilon <= g.bound && g.epsilon < prev,
          "i=" + std::to_string(i) + " eps " + num(g.epsilon) + " <= " + num(g.bound));
    prev = g.epsilon;
  }
  return o;
}

Outcome curvature_calibration() {
  Outcome o;
  const SampledManifold sphere = icosphere(5);
  check(o, sphere.mesh_scale() <= 0.05, "icosphere h = " + num(sphere.mesh_scale()));
  const FiniteMetricSpace S = intrinsic_metric_on(sphere, net_by_count(sphere, 150));
  SamplingOptions so;
  so.mesh_scale = sphere.mesh_scale();
  check(o, cbb_quadruple_test(S, 0.9, so).pass, "sphere passes at 0.9");
  check(o, !cbb_quadruple_test(S, 1.3, so).pass, "sphere fails at 1.3");
  const FiniteMetricSpace G = flat_grid(15, 0.1);
  check(o, cbb_quadruple_test(G, -0.05).pass, "grid passes at -0.05");
  check(o, !cbb_quadruple_test(G, 0.1).pass, "grid fails at 0.1");
  const FiniteMetricSpace T = tripod(10);
  std::size_t passing = 0;
  for (int s = 0; s <= 200; ++s)
    if (cbb_quadruple_test(T, kBracketLow + s * (kBracketHigh - kBracketLow) / 200.0).pass) ++passing;
  check(o, passing == 0, "tripod passes at " + std::to_string(passing) + "/201 k");
  return o;
}

Outcome wrapping_loop() {
  Outcome o;
  ExampleSpec s;
  s.family = Family::plane_minus_ball;
  s.r = 1.0;
  s.R = 1.0;
  s.h = 0.03;
  const SampledManifold m = generate(s);
  const double measured = injectivity_proxy(m, s);
  const double truth = std::sqrt(3.0) + (0.5 * kPi + std::asin(0.5));
  const double rel = measured / truth - 1.0;
  check(o, std::abs(rel) <= 0.03, "proxy " + num(measured) + " vs " + num(truth) + " rel " + num(rel));
  return o;
}

Outcome gh_sanity() {
  Outcome o;
  std::vector<double> scaled_lower, scaled_upper;
  const std::vector<int> is{5, 10, 20, 40};
  for (int i : is) {
    ExampleSpec s;
    s.family = Family::thin_torus;
    s.i = i;
    const LimitComparison lc = limit_comparison(s, generate(s), 150);
    SearchOptions so;
    so.warm_start = lc.natural;
    const GHBounds b = gh_bounds(lc.sample, lc.limit, nullptr, so);
    const double diam = lc.sample->diameter();
    check(o, std::abs(b.lower - diam / 2.0) <= 1e-12 * diam && b.upper <= 3.0 * diam * (1.0 + 1e-12),
          "torus i=" + std::to_string(i) + " [" + num(b.lower) + ", " + num(b.upper) + "]");
    scaled_lower.push_back(i * b.lower);
    scaled_upper.push_back(i * b.upper);
  }
  auto flat = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *hi <= 1.05 * *lo;
  };
  check(o, flat(scaled_lower) && flat(scaled_upper), "i * bounds constant within 5%");
  double prev = std::numeric_limits<double>::infinity();
  for (int i : {10, 20, 40}) {
    ExampleSpec s;
    s.family = Family::capsule_cross_circle;
    s.i = i;
    const LimitComparison lc = limit_comparison(s, generate(s), 150);
    SearchOptions so;
    so.warm_start = lc.natural;
    const GHBounds b = gh_bounds(lc.sample, lc.limit, nullptr, so);
    check(o, b.upper < prev, "capsule i=" + std::to_string(i) + " upper " + num(b.upper));
    prev = b.upper;
  }
  return o;
}

Outcome determinism() {
  Outcome o;
  const ExperimentConfig c = parse_config(
      "family = \"thin_cylinder\"\n"
      "i = [4, 8, 16]\n"
      "tests = [\"radii\", \"curvature\", \"gh\", \"collar\", \"gluing\"]\n"
      "samples = 500\n"
      "net_points = 60\n"
      "seed = 11\n");
  const RunResult a = run_experiment(c, 1), b = run_experiment(c, 1), p = run_experiment(c, 2);
  check(o, a.failed_rows == 0, std::to_string(a.failed_rows) + " failed rows");
  check(o, a.csv == b.csv && a.manifest == b.manifest && a.schema == b.schema && a.plots == b.plots,
        "re-run byte-identical");
  check(o, a.csv == p.csv && a.manifest == p.manifest && a.plots == p.plots, "jobs=2 byte-identical");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"arc/chord closed form and series", arc_chord},
      {"warp profile invariants", warp_invariants},
      {"collar curvature certificates", collar_certificates},
      {"capsule inradius", capsule_inradius},
      {"projection certificates", projection_certificates},
      {"quotient gluing", quotient_gluing},
      {"curvature tester calibration", curvature_calibration},
      {"wrapping loop half-length", wrapping_loop},
      {"GH bound sanity", gh_sanity},
      {"report determinism", determinism},
  };
  int failed = 0, n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    const auto t = std::chrono::steady_clock::now();
    Outcome r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
    if (!r.pass) ++failed;
    std::printf("%s %2d %s (%.1fs): %s\n", r.pass ? "PASS" : "FAIL", n, name.c_str(), secs, r.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", n - failed, n);
  return failed ? 1 : 0;
}
