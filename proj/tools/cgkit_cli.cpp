// cgkit command-line driver.
//
// Exit codes: 0 success, 1 configuration error, 2 some rows failed.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cgkit/collar.hpp"
#include "cgkit/curvature_tests.hpp"
#include "cgkit/error.hpp"
#include "cgkit/experiment.hpp"
#include "cgkit/gallery.hpp"
#include "cgkit/gh.hpp"
#include "cgkit/io.hpp"
#include "cgkit/radii.hpp"
#include "json.hpp"

namespace {

using namespace cgkit;
namespace fs = std::filesystem;

struct Common {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  bool seed_set = false;
  unsigned jobs = 1;
};

ExperimentConfig load(const Common& o) {
  ExperimentConfig c = parse_config(io::read_file(o.config));
  if (!o.out.empty()) c.out = o.out;
  if (o.seed_set) c.seed = o.seed;
  return c;
}

WarpProfile profile_for(const ExperimentConfig& c, int i) {
  if (c.collar == CollarMode::adaptive) return adaptive_profile(i);
  if (c.collar == CollarMode::fixed) return warp_profile(c.collar_lambda_bar, c.collar_eps, c.collar_t0);
  return warp_profile(0.0, c.collar_eps, c.collar_t0);
}

// Runs body(i) for every i; failures are reported and counted.
int per_row(const ExperimentConfig& c, const std::function<void(int, const std::string&)>& body) {
  fs::create_directories(c.out);
  int failed = 0;
  for (int i : c.i_values) {
    try {
      body(i, (fs::path(c.out) / ("i" + std::to_string(i))).string());
      std::cout << "i=" << i << " ok\n";
    } catch (const std::exception& e) {
      ++failed;
      std::cerr << "i=" << i << " failed: " << e.what() << "\n";
    }
  }
  return failed ? 2 : 0;
}

ExampleSpec spec_at(const ExperimentConfig& c, int i) {
  ExampleSpec s = c.example;
  s.i = i;
  return s;
}

int cmd_gen(const ExperimentConfig& c, unsigned) {
  return per_row(c, [&](int i, const std::string& stem) {
    const ExampleSpec s = spec_at(c, i);
    const SampledManifold m = generate(s);
    io::write_file(stem + "_manifold.json", io::manifold_to_json(m));
    io::write_file(stem + "_radii.json", io::radii_to_json(radii_report(m)));
  });
}

int cmd_extend(const ExperimentConfig& c, unsigned) {
  return per_row(c, [&](int i, const std::string& stem) {
    const SampledManifold m = generate(spec_at(c, i));
    const CollarExtension e = build_extension(m, profile_for(c, i), c.collar_layers);
    io::write_file(stem + "_collar.json", io::collar_to_json(e));
  });
}

int cmd_curv(const ExperimentConfig& c, unsigned jobs) {
  return per_row(c, [&](int i, const std::string& stem) {
    const SampledManifold m = generate(spec_at(c, i));
    const FiniteMetricSpace X = intrinsic_metric_on(m, net_by_count(m, c.net_points), jobs);
    SamplingOptions o;
    o.samples = c.samples;
    o.seed = c.seed * 1000003ull + static_cast<std::uint64_t>(i);
    o.mesh_scale = m.mesh_scale();
    const CurvatureBounds b = estimate_lower_bound(X, o);
    nlohmann::ordered_json j;
    j["schema"] = "cgkit.curvature_bounds/1";
    j["k_lower"] = io::format_double(b.k_lower);
    j["failing_k"] = io::format_double(b.failing_k);
    j["samples"] = b.confidence;
    const double k_fail = std::isfinite(b.failing_k) ? b.failing_k : kBracketHigh;
    j["violation_at_failing_k"] = nlohmann::json::parse(io::violation_to_json(cbb_quadruple_test(X, k_fail, o)));
    io::write_file(stem + "_curvature.json", j.dump(2) + "\n");
  });
}

int cmd_gh(const ExperimentConfig& c, unsigned jobs) {
  return per_row(c, [&](int i, const std::string& stem) {
    ExampleSpec s = spec_at(c, i);
    s.circle_points = 0;
    const SampledManifold m = generate(s);
    const LimitComparison lc = limit_comparison(s, m, c.net_points, jobs);
    SearchOptions o;
    o.seed = c.seed * 1000003ull + static_cast<std::uint64_t>(i);
    o.warm_start = lc.natural;
    const ApproxMap f = search_approx(lc.sample, lc.limit, o);
    io::write_file(stem + "_approx.json", io::approx_to_json(f));
  });
}

int cmd_glue(const ExperimentConfig& c, unsigned jobs) {
  if (c.example.family != Family::thin_cylinder) throw ParseError("glue requires family \"thin_cylinder\"");
  return per_row(c, [&](int i, const std::string& stem) {
    const DoubleCollar dc = double_collar(spec_at(c, i), profile_for(c, i), c.collar_layers, jobs);
    const GluingCheck g = gluing_limit_check(dc.glued, dc.y_limit, dc.a_limit, dc.f);
    nlohmann::ordered_json j;
    j["schema"] = "cgkit.gluing/1";
    j["pass"] = g.pass;
    j["epsilon"] = g.epsilon;
    j["bound"] = g.bound;
    j["diam_x"] = g.diam_x;
    j["eps_f"] = g.eps_f;
    j["drift"] = g.drift;
    j["worst_pair"] = {g.worst_i, g.worst_j};
    io::write_file(stem + "_gluing.json", j.dump(2) + "\n");
    if (!g.pass) throw InconsistencyError("gluing epsilon exceeds its bound");
  });
}

int cmd_report(const ExperimentConfig& c, unsigned jobs) {
  const RunResult r = run_experiment(c, jobs);
  write_run(r, c.out);
  std::cout << "wrote " << c.out << "/results.csv (" << c.i_values.size() << " rows, " << r.failed_rows
            << " failed)\n";
  return r.failed_rows ? 2 : 0;
}

std::string columns_help() {
  std::string s = "results.csv columns:\n";
  for (const auto& col : csv_columns()) s += "  " + col.name + ": " + col.description + "\n";
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Comparison-geometry experiments on sampled metric spaces"};
  app.require_subcommand(1);
  Common o;
  std::function<int(const ExperimentConfig&, unsigned)> action;

  auto add = [&](const char* name, const char* help, int (*fn)(const ExperimentConfig&, unsigned)) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", o.config, "Experiment config (key = value lines)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", o.out, "Output directory (overrides 'out')");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { o.seed = v, o.seed_set = true; }, "Random seed (overrides 'seed')");
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::Range(1u, 1024u));
    sub->callback([&, fn] { action = fn; });
    return sub;
  };
  add("gen", "Generate examples and write manifold + radii JSON", cmd_gen);
  add("extend", "Glue the warped collar and write the extension JSON", cmd_extend);
  add("curv", "Estimate lower curvature bounds on an eps-net", cmd_curv);
  add("gh", "Search a Hausdorff approximation to the limit space", cmd_gh);
  add("glue", "Double-collar gluing check (thin_cylinder)", cmd_glue);
  add("report", "Full sweep: results.csv, manifest.json, schema.json, plots/", cmd_report)
      ->footer(columns_help());

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  ExperimentConfig c;
  try {
    c = load(o);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }
  try {
    return action(c, o.jobs);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
