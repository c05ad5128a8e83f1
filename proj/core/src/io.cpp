#include "cgkit/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cgkit/error.hpp"
#include "json.hpp"

namespace cgkit::io {

using nlohmann::json;

namespace {

// JSON has no infinities; they travel as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json parse(std::string_view text, std::string_view schema) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("schema") || j["schema"] != schema)
    throw ParseError("expected schema '" + std::string(schema) + "'");
  return j;
}

json manifold_json(const SampledManifold& m) {
  json j;
  j["schema"] = kManifoldSchema;
  j["dim"] = m.dim();
  j["mesh_scale"] = m.mesh_scale();
  j["points"] = m.coords();
  json edges = json::array();
  for (const Edge& e : m.edges()) edges.push_back({e.u, e.v, e.length});
  j["edges"] = std::move(edges);
  std::vector<Index> b = m.boundary_indices();
  j["boundary"] = b;
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string manifold_to_json(const SampledManifold& m) { return manifold_json(m).dump(); }

SampledManifold manifold_from_json(std::string_view text) {
  const json j = parse(text, kManifoldSchema);
  try {
    const auto dim = j.at("dim").get<std::size_t>();
    auto coords = j.at("points").get<std::vector<double>>();
    if (dim == 0 || coords.size() % dim != 0) throw ParseError("points length is not a multiple of dim");
    const std::size_t n = coords.size() / dim;
    std::vector<bool> boundary(n, false);
    for (const auto& b : j.at("boundary")) {
      const auto i = b.get<std::size_t>();
      if (i >= n) throw ParseError("boundary index out of range");
      boundary[i] = true;
    }
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("edge must be [u, v, length]");
      edges.push_back({e[0].get<Index>(), e[1].get<Index>(), e[2].get<double>()});
    }
    return SampledManifold(dim, std::move(coords), std::move(edges), std::move(boundary),
                           j.at("mesh_scale").get<double>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed manifold: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("inconsistent manifold: ") + e.what());
  }
}

std::string collar_to_json(const CollarExtension& e) {
  json j = manifold_json(e.glued);
  j["collar"] = {{"t0", e.profile.t0()},
                 {"eps", e.profile.eps()},
                 {"lambda_bar", e.profile.lambda_bar()},
                 {"clamped", e.profile.clamped()},
                 {"base_size", e.base_size},
                 {"layer_t", e.layer_t},
                 {"seam", e.seam},
                 {"outer_boundary", e.outer_boundary},
                 {"footpoint", e.footpoint}};
  return j.dump();
}

std::string metric_to_json(const FiniteMetricSpace& X) {
  json j;
  j["schema"] = kMetricSchema;
  j["size"] = X.size();
  j["sentinel"] = X.sentinel();
  j["distances"] = X.matrix();
  if (!X.labels().empty()) j["labels"] = X.labels();
  return j.dump();
}

FiniteMetricSpace metric_from_json(std::string_view text) {
  const json j = parse(text, kMetricSchema);
  try {
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return FiniteMetricSpace(j.at("size").get<std::size_t>(), j.at("distances").get<std::vector<double>>(),
                             std::move(labels), j.value("sentinel", 0.0));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed metric: ") + e.what());
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("inconsistent metric: ") + e.what());
  }
}

std::string metric_to_csv(const FiniteMetricSpace& X) {
  CsvTable t;
  t.header.push_back("index");
  for (Index i = 0; i < X.size(); ++i) t.header.push_back(std::to_string(i));
  for (Index i = 0; i < X.size(); ++i) {
    std::vector<std::string> row{std::to_string(i)};
    for (double d : X.row(i)) row.push_back(format_double(d));
    t.rows.push_back(std::move(row));
  }
  return to_csv(t);
}

std::string approx_to_json(const ApproxMap& f) {
  json j;
  j["schema"] = kApproxSchema;
  j["source_size"] = f.source ? f.source->size() : 0;
  j["target_size"] = f.target ? f.target->size() : 0;
  j["assignment"] = f.assignment;
  j["distortion"] = num(f.distortion);
  j["net_radius"] = num(f.net_radius);
  j["epsilon"] = num(f.epsilon());
  j["worst_pair"] = {f.worst_i, f.worst_j};
  j["net_witness"] = f.net_witness;
  return j.dump();
}

std::vector<Index> assignment_from_json(std::string_view text) {
  const json j = parse(text, kApproxSchema);
  try {
    return j.at("assignment").get<std::vector<Index>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed approximation map: ") + e.what());
  }
}

std::string violation_to_json(const ViolationReport& r) {
  json j;
  j["schema"] = kViolationSchema;
  j["k"] = num(r.k);
  j["pass"] = r.pass;
  j["inconclusive"] = r.inconclusive;
  j["worst"] = num(r.worst);
  j["worst_margin"] = num(r.worst_margin);
  j["witness"] = r.witness;
  json d = json::array();
  for (double v : r.witness_distances) d.push_back(num(v));
  j["witness_distances"] = std::move(d);
  j["evaluated"] = r.evaluated;
  j["skipped_small"] = r.skipped_small;
  j["skipped_domain"] = r.skipped_domain;
  j["obstruction"] = r.obstruction;
  return j.dump();
}

std::string radii_to_json(const RadiiReport& r) {
  json j;
  j["schema"] = kRadiiSchema;
  j["inradius"] = num(r.inradius);
  j["max_reach"] = num(r.max_reach);
  j["diameter"] = num(r.diameter);
  j["diameter_exact"] = r.diameter_exact;
  j["boundary_diameter"] = num(r.boundary_diameter);
  j["boundary_components"] = r.boundary_components;
  j["mesh_scale"] = r.mesh_scale;
  j["inradius_point"] = r.inradius_point;
  j["reach_point"] = r.reach_point;
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = num(*v);
  };
  opt("inj", r.inj);
  opt("i_int", r.i_int);
  opt("i_boundary", r.i_boundary);
  opt("conj", r.conj);
  return j.dump();
}

std::string to_csv(const CsvTable& t) {
  auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (k) out += ',';
      out += field(cells[k]);
    }
    out += '\n';
  };
  line(t.header);
  for (const auto& r : t.rows) line(r);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw PreconditionError("cannot write '" + path + "'");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw PreconditionError("write failed for '" + path + "'");
}

}  // namespace cgkit::io
