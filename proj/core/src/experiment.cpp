#include "cgkit/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <set>
#include <thread>

#include "cgkit/curvature_tests.hpp"
#include "cgkit/error.hpp"
#include "cgkit/io.hpp"
#include "cgkit/radii.hpp"
#include "cgkit/svg_plot.hpp"
#include "json.hpp"

namespace cgkit {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// A parsed right-hand side.
struct Value {
  enum Kind { number, string, boolean, list } kind = number;
  double num = 0.0;
  std::string str;
  bool flag = false;
  std::vector<Value> items;
};

Value parse_value(std::string_view s, std::size_t line) {
  s = trim(s);
  if (s.empty()) throw ParseError("missing value", line);
  Value v;
  if (s.front() == '[') {
    if (s.back() != ']') throw ParseError("unterminated list", line);
    v.kind = Value::list;
    std::string_view body = trim(s.substr(1, s.size() - 2));
    while (!body.empty()) {
      // Items are scalars; strings may not contain commas.
      const auto comma = body.find(',');
      v.items.push_back(parse_value(body.substr(0, comma), line));
      if (v.items.back().kind == Value::list) throw ParseError("nested lists are not supported", line);
      if (comma == std::string_view::npos) break;
      body = trim(body.substr(comma + 1));
      if (body.empty()) throw ParseError("trailing comma in list", line);
    }
    return v;
  }
  if (s.front() == '"') {
    if (s.size() < 2 || s.back() != '"') throw ParseError("unterminated string", line);
    v.kind = Value::string;
    for (std::size_t k = 1; k + 1 < s.size(); ++k) {
      if (s[k] == '\\' && k + 2 < s.size()) ++k;
      else if (s[k] == '"') throw ParseError("unescaped quote in string", line);
      v.str += s[k];
    }
    return v;
  }
  if (s == "true" || s == "false") {
    v.kind = Value::boolean;
    v.flag = s == "true";
    return v;
  }
  if (s == "inf" || s == "-inf") {
    v.num = s == "inf" ? INFINITY : -INFINITY;
    return v;
  }
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v.num);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw ParseError("cannot parse value '" + std::string(s) + "'", line);
  return v;
}

std::string quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += c;
  }
  return q + '"';
}

const std::vector<std::pair<TestKind, std::string_view>>& test_names() {
  static const std::vector<std::pair<TestKind, std::string_view>> t{{TestKind::radii, "radii"},
                                                                      {TestKind::curvature, "curvature"},
                                                                      {TestKind::gh, "gh"},
                                                                      {TestKind::collar, "collar"},
                                                                      {TestKind::gluing, "gluing"}};
  return t;
}

std::string_view collar_name(CollarMode m) {
  switch (m) {
    case CollarMode::none: return "none";
    case CollarMode::adaptive: return "adaptive";
    case CollarMode::fixed: return "fixed";
  }
  return "?";
}

}  // namespace

std::string_view test_name(TestKind t) {
  for (const auto& [k, n] : test_names())
    if (k == t) return n;
  return "?";
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig c;
  std::set<std::string> seen;
  bool have_family = false, have_i = false;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    // Strip comments outside strings.
    bool in_str = false;
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (line[k] == '"' && (k == 0 || line[k - 1] != '\\')) in_str = !in_str;
      if (line[k] == '#' && !in_str) {
        line = line.substr(0, k);
        break;
      }
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) throw ParseError("missing key", line_no);
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line_no);
    const Value v = parse_value(line.substr(eq + 1), line_no);

    auto need = [&](Value::Kind k, const char* what) {
      if (v.kind != k) throw ParseError("'" + key + "' expects " + what, line_no);
    };
    auto number = [&] {
      need(Value::number, "a number");
      return v.num;
    };
    auto count = [&](double lo) {
      const double x = number();
      if (x != std::floor(x) || x < lo || x > 1e15)
        throw ParseError("'" + key + "' expects an integer >= " + io::format_double(lo), line_no);
      return static_cast<std::size_t>(x);
    };
    auto string = [&] {
      need(Value::string, "a quoted string");
      return v.str;
    };

    auto& e = c.example;
    if (key == "family") {
      try {
        e.family = family_from_name(string());
      } catch (const ParseError& err) {
        throw ParseError(err.what(), line_no);
      }
      have_family = true;
    } else if (key == "i") {
      std::vector<Value> items = v.kind == Value::list ? v.items : std::vector<Value>{v};
      c.i_values.clear();
      for (const Value& it : items) {
        if (it.kind != Value::number || it.num != std::floor(it.num) || it.num < 1 || it.num > 1e9)
          throw ParseError("'i' expects positive integers", line_no);
        c.i_values.push_back(static_cast<int>(it.num));
      }
      if (c.i_values.empty()) throw ParseError("empty i-range", line_no);
      have_i = true;
    } else if (key == "h") e.h = number();
    else if (key == "r") e.r = number();
    else if (key == "R") e.R = number();
    else if (key == "eps") e.eps = number();
    else if (key == "thickness") e.thickness = number();
    else if (key == "radius") e.radius = number();
    else if (key == "length") e.length = number();
    else if (key == "extent") e.extent = number();
    else if (key == "curve") e.curve = string();
    else if (key == "circle_points") e.circle_points = count(0);
    else if (key == "collar") {
      const auto s = string();
      if (s == "none") c.collar = CollarMode::none;
      else if (s == "adaptive") c.collar = CollarMode::adaptive;
      else if (s == "fixed") c.collar = CollarMode::fixed;
      else throw ParseError("collar must be \"none\", \"adaptive\" or \"fixed\"", line_no);
    } else if (key == "collar_t0") c.collar_t0 = number();
    else if (key == "collar_eps") c.collar_eps = number();
    else if (key == "collar_lambda_bar") c.collar_lambda_bar = number();
    else if (key == "collar_boundary_k") c.collar_boundary_k = number();
    else if (key == "collar_layers") c.collar_layers = count(2);
    else if (key == "tests") {
      need(Value::list, "a list of test names");
      c.tests.clear();
      for (const Value& it : v.items) {
        if (it.kind != Value::string) throw ParseError("'tests' expects quoted names", line_no);
        const auto f = std::find_if(test_names().begin(), test_names().end(),
                                    [&](const auto& p) { return p.second == it.str; });
        if (f == test_names().end()) throw ParseError("unknown test '" + it.str + "'", line_no);
        if (std::find(c.tests.begin(), c.tests.end(), f->first) != c.tests.end())
          throw ParseError("test '" + it.str + "' listed twice", line_no);
        c.tests.push_back(f->first);
      }
    } else if (key == "out") c.out = string();
    else if (key == "seed") c.seed = count(0);
    else if (key == "samples") c.samples = count(1);
    else if (key == "net_points") c.net_points = count(4);
    else throw ParseError("unknown key '" + key + "'", line_no);
  }
  if (!have_family) throw ParseError("missing required key 'family'");
  if (!have_i) throw ParseError("missing required key 'i'");
  const bool gluing = std::find(c.tests.begin(), c.tests.end(), TestKind::gluing) != c.tests.end();
  if (gluing && c.example.family != Family::thin_cylinder)
    throw ParseError("the gluing test requires family \"thin_cylinder\"");
  if (c.collar == CollarMode::fixed) {
    try {
      (void)warp_profile(c.collar_lambda_bar, c.collar_eps, c.collar_t0);
    } catch (const DomainError& err) {
      throw ParseError(std::string("invalid fixed collar: ") + err.what());
    }
  }
  return c;
}

std::string serialize_config(const ExperimentConfig& c) {
  const auto& e = c.example;
  auto d = [](double v) { return io::format_double(v); };
  std::string s;
  s += "family = " + quote(std::string(family_name(e.family))) + "\n";
  s += "i = [";
  for (std::size_t k = 0; k < c.i_values.size(); ++k) s += (k ? ", " : "") + std::to_string(c.i_values[k]);
  s += "]\n";
  s += "h = " + d(e.h) + "\n";
  s += "r = " + d(e.r) + "\n";
  s += "R = " + d(e.R) + "\n";
  s += "eps = " + d(e.eps) + "\n";
  s += "thickness = " + d(e.thickness) + "\n";
  s += "radius = " + d(e.radius) + "\n";
  s += "length = " + d(e.length) + "\n";
  s += "extent = " + d(e.extent) + "\n";
  s += "curve = " + quote(e.curve) + "\n";
  s += "circle_points = " + std::to_string(e.circle_points) + "\n";
  s += "collar = " + quote(std::string(collar_name(c.collar))) + "\n";
  s += "collar_t0 = " + d(c.collar_t0) + "\n";
  s += "collar_eps = " + d(c.collar_eps) + "\n";
  s += "collar_lambda_bar = " + d(c.collar_lambda_bar) + "\n";
  s += "collar_boundary_k = " + d(c.collar_boundary_k) + "\n";
  s += "collar_layers = " + std::to_string(c.collar_layers) + "\n";
  s += "tests = [";
  for (std::size_t k = 0; k < c.tests.size(); ++k) s += (k ? ", " : "") + quote(std::string(test_name(c.tests[k])));
  s += "]\n";
  s += "out = " + quote(c.out) + "\n";
  s += "seed = " + std::to_string(c.seed) + "\n";
  s += "samples = " + std::to_string(c.samples) + "\n";
  s += "net_points = " + std::to_string(c.net_points) + "\n";
  return s;
}

const std::vector<Column>& csv_columns() {
  static const std::vector<Column> cols{
      {"i", "sequence index"},
      {"status", "ok or failed"},
      {"points", "sample size of M_i"},
      {"mesh_scale", "sampling resolution h"},
      {"inradius", "max graph distance to the boundary"},
      {"inradius_exact", "closed-form inradius (empty if none)"},
      {"diameter", "graph diameter"},
      {"diameter_exact", "closed-form diameter (empty if none)"},
      {"gh_lower", "|diam M_i - diam X| / 2 on the samples"},
      {"gh_upper", "3 * epsilon of the best approximation found"},
      {"gh_epsilon", "measured epsilon of that approximation"},
      {"curv_lower", "largest k in [-100, 100] passing the quadruple test"},
      {"curv_failing_k", "smallest failing k seen by the bisection"},
      {"collar_t0", "collar length"},
      {"collar_eps", "outer warp value phi(t0)"},
      {"collar_radial", "lower bound for the radial curvature"},
      {"collar_tangential", "lower bound for the tangential curvature"},
      {"collar_certified", "1 if both bounds are closed-form, 0 if grid fallback"},
      {"gluing_epsilon", "measured epsilon of the glued space against the quotient limit"},
      {"gluing_bound", "diam X + 2 eps_f + drift"},
      {"error", "failure message for failed rows"},
  };
  return cols;
}

// --- scenarios -----------------------------------------------------------------

std::vector<Index> net_by_count(const SampledManifold& m, std::size_t count) {
  if (count == 0) throw PreconditionError("net_by_count: count must be > 0");
  if (count >= m.size()) {
    std::vector<Index> all(m.size());
    for (Index v = 0; v < m.size(); ++v) all[v] = v;
    return all;
  }
  const auto d0 = dijkstra(m, 0);
  double far = 0.0;
  for (double d : d0)
    if (std::isfinite(d)) far = std::max(far, d);
  // Start from a peripheral point; adjust the radius until the size is close.
  const Index start = static_cast<Index>(std::find(d0.begin(), d0.end(), far) - d0.begin());
  double eps = far / std::sqrt(static_cast<double>(count));
  std::vector<Index> best;
  for (int it = 0; it < 6; ++it) {
    auto net = manifold_eps_net(m, eps, start);
    if (best.empty() || std::abs(static_cast<double>(net.size()) - static_cast<double>(count)) <
                            std::abs(static_cast<double>(best.size()) - static_cast<double>(count)))
      best = net;
    const double ratio = static_cast<double>(net.size()) / static_cast<double>(count);
    if (ratio > 0.9 && ratio < 1.1) break;
    eps *= std::pow(ratio, 0.5);
  }
  return best;
}

DoubleCollar double_collar(const ExampleSpec& cylinder, const WarpProfile& p, std::size_t layers, unsigned jobs) {
  if (cylinder.family != Family::thin_cylinder) throw PreconditionError("double_collar: needs a thin_cylinder spec");
  if (layers < 2) throw PreconditionError("double_collar: at least 2 layers");
  const ExampleSpec s = cylinder.resolved();
  const SampledManifold m = generate(s);
  auto X = std::make_shared<const FiniteMetricSpace>(intrinsic_metric(m, jobs));
  const auto bnd = m.boundary_indices();
  const std::size_t nt = bnd.size() / 2;
  // Bottom ring: indices [0, nt); top ring: the last nt (same angular order).
  std::vector<Index> bottom(bnd.begin(), bnd.begin() + static_cast<std::ptrdiff_t>(nt));
  std::vector<Index> top(bnd.end() - static_cast<std::ptrdiff_t>(nt), bnd.end());

  const FiniteMetricSpace circle = circle_space(nt, s.radius);
  const FiniteMetricSpace fiber = segment_space(layers, p.t0());
  std::vector<double> phi(layers);
  for (std::size_t l = 0; l < layers; ++l) phi[l] = p.phi(p.t0() * static_cast<double>(l) / (layers - 1.0));
  const FiniteMetricSpace collar = warped_product(circle, fiber, phi, 4, 2, jobs);
  auto Y = std::make_shared<const FiniteMetricSpace>(disjoint_union(collar, collar));
  const std::size_t nc = collar.size();

  std::vector<Index> a_in_x, a_in_y;
  for (std::size_t k = 0; k < nt; ++k) {
    a_in_x.push_back(bottom[k]);
    a_in_y.push_back(k * layers);
  }
  for (std::size_t k = 0; k < nt; ++k) {
    a_in_x.push_back(top[k]);
    a_in_y.push_back(nc + k * layers);
  }
  DoubleCollar dc;
  dc.glued = glue(X, a_in_x, Y, a_in_y);
  dc.y_limit = std::make_shared<const FiniteMetricSpace>(disjoint_union(fiber, fiber));
  dc.a_limit = {0, layers};
  std::vector<Index> f(Y->size());
  for (Index y = 0; y < Y->size(); ++y) {
    const Index part = y / nc, local = y % nc;
    f[y] = part * layers + local % layers;
  }
  dc.f = make_approx_map(Y, dc.y_limit, std::move(f));
  return dc;
}

LimitComparison limit_comparison(const ExampleSpec& spec, const SampledManifold& m, std::size_t net_points,
                                 unsigned jobs) {
  const ExampleSpec s = spec.resolved();
  LimitComparison lc;
  lc.mesh_scale = m.mesh_scale();
  const bool product = s.family == Family::capsule_cross_circle;
  const std::size_t q = product ? 6 : 1;  // circle samples of the S^1(r) factor
  if (product && s.circle_points != 0)
    throw PreconditionError("limit_comparison: capsule must be sampled as the surface factor (circle_points = 0)");
  const auto net = net_by_count(m, std::max<std::size_t>(4, net_points / q));
  FiniteMetricSpace sample = intrinsic_metric_on(m, net, jobs);
  std::vector<Index> natural(net.size(), 0);

  switch (s.family) {
    case Family::thin_torus:
    case Family::thin_cylinder:
      lc.limit = std::make_shared<const FiniteMetricSpace>(1, std::vector<double>{0.0});
      break;
    case Family::capsule_cross_circle:
    case Family::tube_neighborhood: {
      const bool circle = s.family == Family::tube_neighborhood && s.curve == "circle";
      const std::size_t k = std::max<std::size_t>(4, net.size() / 4);
      FiniteMetricSpace core = circle ? circle_space(k, 1.0) : segment_space(k, 1.0);
      for (std::size_t a = 0; a < net.size(); ++a) {
        const auto pt = m.point(net[a]);
        double t;
        if (circle) {
          const double ang = std::atan2(pt[1], pt[0]);
          t = (ang < 0 ? ang + 2.0 * M_PI : ang) / (2.0 * M_PI) * static_cast<double>(k);
          natural[a] = static_cast<Index>(std::llround(t)) % k;
        } else {
          t = std::clamp(pt[0], 0.0, 1.0) * static_cast<double>(k - 1);
          natural[a] = static_cast<Index>(std::llround(t));
        }
      }
      if (product) {
        const FiniteMetricSpace ring = circle_space(q, s.r);
        sample = product_metric(sample, ring);
        core = product_metric(core, ring);
        std::vector<Index> nat(sample.size());
        for (std::size_t a = 0; a < net.size(); ++a)
          for (std::size_t b = 0; b < q; ++b) nat[a * q + b] = natural[a] * q + b;
        natural = std::move(nat);
      }
      lc.limit = std::make_shared<const FiniteMetricSpace>(std::move(core));
      break;
    }
    case Family::flattened_disc: {
      const SampledManifold disc = planar_disc(std::max(0.05, 2.0 / std::sqrt(static_cast<double>(net.size()))));
      lc.limit = std::make_shared<const FiniteMetricSpace>(FiniteMetricSpace::from_points(2, disc.coords()));
      for (std::size_t a = 0; a < net.size(); ++a) {
        const auto pt = m.point(net[a]);
        natural[a] = nearest_vertex(disc, std::array<double, 2>{pt[0], pt[1]});
      }
      break;
    }
    case Family::gaussian_slab: {
      // The limit surface z = exp(-(x^2 + y^2)) over the same square.
      const double L = s.extent;
      const std::size_t k = std::max<std::size_t>(4, static_cast<std::size_t>(std::sqrt(static_cast<double>(net.size()))));
      const double step = 2.0 * L / static_cast<double>(k - 1);
      std::vector<double> xyz;
      const std::size_t fine = 4 * k;
      const double fstep = 2.0 * L / static_cast<double>(fine - 1);
      for (std::size_t a = 0; a < fine; ++a)
        for (std::size_t b = 0; b < fine; ++b) {
          const double x = -L + fstep * a, y = -L + fstep * b;
          xyz.insert(xyz.end(), {x, y, std::exp(-(x * x + y * y))});
        }
      const SampledManifold surf = build_neighbor_graph(3, xyz, std::vector<bool>(fine * fine, false), fstep);
      std::vector<Index> coarse;
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
          const double x = -L + step * a, y = -L + step * b;
          coarse.push_back(nearest_vertex(surf, std::array<double, 3>{x, y, std::exp(-(x * x + y * y))}));
        }
      lc.limit = std::make_shared<const FiniteMetricSpace>(intrinsic_metric_on(surf, coarse, jobs));
      for (std::size_t a = 0; a < net.size(); ++a) {
        const auto pt = m.point(net[a]);
        const auto ia = static_cast<std::size_t>(std::llround((std::clamp(pt[0], -L, L) + L) / step));
        const auto ib = static_cast<std::size_t>(std::llround((std::clamp(pt[1], -L, L) + L) / step));
        natural[a] = std::min(ia, k - 1) * k + std::min(ib, k - 1);
      }
      break;
    }
    default:
      throw PreconditionError("limit_comparison: family '" + std::string(family_name(s.family)) +
                              "' does not collapse; no separate limit space");
  }
  lc.sample = std::make_shared<const FiniteMetricSpace>(std::move(sample));
  lc.natural = std::move(natural);
  return lc;
}

// --- sweep ---------------------------------------------------------------------

namespace {

bool has(const ExperimentConfig& c, TestKind t) { return std::find(c.tests.begin(), c.tests.end(), t) != c.tests.end(); }

WarpProfile row_profile(const ExperimentConfig& c, int i) {
  switch (c.collar) {
    case CollarMode::adaptive: return adaptive_profile(i);
    case CollarMode::fixed: return warp_profile(c.collar_lambda_bar, c.collar_eps, c.collar_t0);
    case CollarMode::none: break;
  }
  return warp_profile(0.0, c.collar_eps, c.collar_t0);
}

bool collapses(Family f) { return f != Family::plane_minus_ball && f != Family::sphere_minus_ball; }

}  // namespace

std::map<std::string, std::string> run_row(const ExperimentConfig& c, int i, unsigned jobs) {
  std::map<std::string, std::string> row;
  for (const auto& col : csv_columns()) row[col.name] = "";
  auto put = [&](const char* k, double v) { row[k] = io::format_double(v); };
  row["i"] = std::to_string(i);
  row["status"] = "ok";

  ExampleSpec spec = c.example;
  spec.i = i;
  const ExampleSpec s = spec.resolved();
  const std::uint64_t row_seed = c.seed * 1000003ull + static_cast<std::uint64_t>(i);
  const bool needs_sample = has(c, TestKind::radii) || has(c, TestKind::curvature) || has(c, TestKind::gh);
  SampledManifold m;
  if (needs_sample) {
    m = generate(s);
    row["points"] = std::to_string(m.size());
    put("mesh_scale", m.mesh_scale());
  }
  const GroundTruth truth = ground_truth(s);

  if (has(c, TestKind::radii)) {
    const RadiiReport r = radii_report(m);
    put("inradius", r.inradius);
    put("diameter", r.diameter);
    if (truth.inradius) put("inradius_exact", *truth.inradius);
    if (truth.diameter) put("diameter_exact", *truth.diameter);
  }
  std::shared_ptr<const FiniteMetricSpace> sample;
  LimitComparison lc;
  if (has(c, TestKind::gh) && collapses(s.family)) {
    ExampleSpec factor = s;
    factor.circle_points = 0;
    if (s.circle_points == 0) {
      lc = limit_comparison(factor, m, c.net_points, jobs);
    } else {
      lc = limit_comparison(factor, generate(factor), c.net_points, jobs);
    }
    sample = lc.sample;
    SearchOptions o;
    o.seed = row_seed;
    o.warm_start = lc.natural;
    const GHBounds b = gh_bounds(lc.sample, lc.limit, nullptr, o);
    put("gh_lower", b.lower);
    put("gh_upper", b.upper);
    put("gh_epsilon", b.epsilon);
  }
  if (has(c, TestKind::curvature)) {
    if (!sample) sample = std::make_shared<const FiniteMetricSpace>(intrinsic_metric_on(m, net_by_count(m, c.net_points), jobs));
    SamplingOptions o;
    o.samples = c.samples;
    o.seed = row_seed;
    o.mesh_scale = m.mesh_scale();
    const CurvatureBounds b = estimate_lower_bound(*sample, o);
    put("curv_lower", b.k_lower);
    put("curv_failing_k", b.failing_k);
  }
  if (has(c, TestKind::collar) && c.collar != CollarMode::none) {
    const WarpProfile p = row_profile(c, i);
    const CurvatureBound rad = radial_bound(p), tan = tangential_bound(p, c.collar_boundary_k);
    put("collar_t0", p.t0());
    put("collar_eps", p.outer_scale());
    put("collar_radial", rad.value);
    put("collar_tangential", tan.value);
    row["collar_certified"] = (rad.certified && tan.certified) ? "1" : "0";
  }
  if (has(c, TestKind::gluing)) {
    const DoubleCollar dc = double_collar(s, row_profile(c, i), c.collar_layers, jobs);
    const GluingCheck g = gluing_limit_check(dc.glued, dc.y_limit, dc.a_limit, dc.f);
    put("gluing_epsilon", g.epsilon);
    put("gluing_bound", g.bound);
    if (!g.pass) {
      row["status"] = "failed";
      row["error"] = "gluing epsilon exceeds its bound";
    }
  }
  return row;
}

RunResult run_experiment(const ExperimentConfig& c, unsigned jobs) {
  if (c.i_values.empty()) throw ParseError("empty i-range");
  const std::size_t n = c.i_values.size();
  std::vector<std::map<std::string, std::string>> rows(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      const int i = c.i_values[k];
      try {
        rows[k] = run_row(c, i, 1);
      } catch (const std::exception& e) {
        rows[k].clear();
        for (const auto& col : csv_columns()) rows[k][col.name] = "";
        rows[k]["i"] = std::to_string(i);
        rows[k]["status"] = "failed";
        rows[k]["error"] = e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  RunResult r;
  io::CsvTable table;
  for (const auto& col : csv_columns()) table.header.push_back(col.name);
  for (const auto& row : rows) {
    std::vector<std::string> cells;
    for (const auto& col : csv_columns()) cells.push_back(row.at(col.name));
    table.rows.push_back(std::move(cells));
    if (row.at("status") != "ok") ++r.failed_rows;
  }
  r.csv = io::to_csv(table);

  nlohmann::ordered_json man;
  man["schema"] = "cgkit.manifest/1";
  man["version"] = kVersion;
  man["seed"] = c.seed;
  man["config"] = serialize_config(c);
  man["results"] = "results.csv";
  auto& status = man["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : rows) status.push_back({{"i", std::stoi(row.at("i"))}, {"status", row.at("status")}});
  r.manifest = man.dump(2) + "\n";

  nlohmann::ordered_json sch;
  sch["schema"] = "cgkit.results_schema/1";
  auto& cols = sch["columns"] = nlohmann::ordered_json::array();
  for (const auto& col : csv_columns()) cols.push_back({{"name", col.name}, {"description", col.description}});
  r.schema = sch.dump(2) + "\n";

  // One plot per numeric column that has at least one value.
  for (const auto& col : csv_columns()) {
    if (col.name == "i" || col.name == "status" || col.name == "error") continue;
    svg::Series series{col.name, {}, {}};
    for (const auto& row : rows) {
      const auto& v = row.at(col.name);
      if (v.empty()) continue;
      double y = 0.0;
      const auto res = std::from_chars(v.data(), v.data() + v.size(), y);
      if (res.ec != std::errc()) continue;
      series.x.push_back(std::stod(row.at("i")));
      series.y.push_back(y);
    }
    if (series.x.empty()) continue;
    r.plots[col.name + ".svg"] = svg::line_plot(col.name + " vs i", "i", col.name, {series});
  }
  return r;
}

void write_run(const RunResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "plots", ec);
  if (ec) throw PreconditionError("cannot create '" + dir + "': " + ec.message());
  io::write_file((fs::path(dir) / "results.csv").string(), r.csv);
  io::write_file((fs::path(dir) / "manifest.json").string(), r.manifest);
  io::write_file((fs::path(dir) / "schema.json").string(), r.schema);
  for (const auto& [name, svg] : r.plots) io::write_file((fs::path(dir) / "plots" / name).string(), svg);
}

}  // namespace cgkit
