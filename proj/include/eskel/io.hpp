#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eskel/pipeline.hpp"

namespace eskel {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON / CSV serialization of pipeline results. All emitters are pure
// functions of their inputs; writes go through a temp file + rename so
// readers never observe a half-written artifact.
// ---------------------------------------------------------------------------

inline json to_json(const Point2& p) { return json::array({p.x, p.y}); }

inline json to_json(const FacePair& pair) { return json::array({pair.i, pair.j}); }

inline json vertices_json(const ConvexPolygon& poly) {
  json arr = json::array();
  for (std::size_t v = 0; v < poly.num_faces(); ++v) arr.push_back(to_json(poly.vertex(v)));
  return arr;
}

inline json config_json(const RunConfig& cfg) {
  return json{{"panels_per_side", cfg.panels_per_side},
              {"grading", cfg.grading},
              {"grid_resolution", cfg.grid_resolution},
              {"samples_per_arc", cfg.samples_per_arc},
              {"seed", cfg.seed}};
}

inline json skeleton_json(const Skeleton& skel) {
  const auto kind_name = [](EndpointKind k) {
    return k == EndpointKind::Vertex ? "vertex" : "junction";
  };
  json arcs = json::array();
  for (const RidgeArc& arc : skel.arcs) {
    json pts = json::array();
    for (const Point2& p : arc.points) pts.push_back(to_json(p));
    arcs.push_back(json{{"pair", to_json(arc.pair)},
                        {"start", {{"kind", kind_name(arc.start_kind)}, {"ref", arc.start_ref}}},
                        {"end", {{"kind", kind_name(arc.end_kind)}, {"ref", arc.end_ref}}},
                        {"points", pts}});
  }
  json junctions = json::array();
  for (const Junction& j : skel.junctions) {
    json pairs = json::array();
    for (const FacePair& p : j.incident_pairs) pairs.push_back(to_json(p));
    junctions.push_back(json{{"location", to_json(j.location)}, {"pairs", pairs}});
  }
  return json{{"arcs", arcs}, {"junctions", junctions}};
}

inline json measure_json(const RieszMeasure& mu) {
  json samples = json::array();
  for (const RieszSample& s : mu.samples)
    samples.push_back(json{{"point", to_json(s.point)},
                           {"weight", s.weight},
                           {"density", s.density},
                           {"pair", to_json(s.arc_pair)}});
  return json{{"samples", samples}};
}

inline json bundle_json(const PipelineResult& result, const RunConfig& cfg) {
  return json{{"config", config_json(cfg)},
              {"polygon", {{"vertices", vertices_json(result.polygon)}}},
              {"robin_constant", result.solution().robin_constant()},
              {"skeleton", skeleton_json(result.skeleton)},
              {"measure", measure_json(result.measure)},
              {"summary",
               {{"mass", result.measure.total_mass()},
                {"n_regions", result.connectivity.regions.size()},
                {"n_arcs", result.skeleton.arcs.size()},
                {"n_junctions", result.skeleton.junctions.size()},
                {"every_region_touches_its_face",
                 result.connectivity.every_region_touches_its_face},
                {"complement_connected", result.connectivity.complement_connected}}}};
}

// --- atomic file output -----------------------------------------------------

inline void atomic_write(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw IoError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw IoError("rename to " + path + " failed: " + ec.message());
}

// --- CSV exports -------------------------------------------------------------

namespace detail {
inline std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

inline std::string measure_csv(const RieszMeasure& mu) {
  std::ostringstream out;
  out << "x,y,weight,density,pair_i,pair_j\n";
  for (const RieszSample& s : mu.samples)
    out << detail::fmt_double(s.point.x) << ',' << detail::fmt_double(s.point.y) << ','
        << detail::fmt_double(s.weight) << ',' << detail::fmt_double(s.density) << ','
        << s.arc_pair.i << ',' << s.arc_pair.j << '\n';
  return out.str();
}

inline std::string arcs_csv(const Skeleton& skel) {
  std::ostringstream out;
  out << "arc,pair_i,pair_j,x,y\n";
  for (std::size_t a = 0; a < skel.arcs.size(); ++a)
    for (const Point2& p : skel.arcs[a].points)
      out << a << ',' << skel.arcs[a].pair.i << ',' << skel.arcs[a].pair.j << ','
          << detail::fmt_double(p.x) << ',' << detail::fmt_double(p.y) << '\n';
  return out.str();
}

inline std::string junctions_csv(const Skeleton& skel) {
  std::ostringstream out;
  out << "junction,x,y,degree\n";
  for (std::size_t j = 0; j < skel.junctions.size(); ++j)
    out << j << ',' << detail::fmt_double(skel.junctions[j].location.x) << ','
        << detail::fmt_double(skel.junctions[j].location.y) << ','
        << skel.junctions[j].incident_pairs.size() << '\n';
  return out.str();
}

inline std::string boundary_csv(const EquilibriumSolution& sol) {
  std::ostringstream out;
  out << "x,y,density,arclength\n";
  const BoundaryMesh& mesh = sol.mesh();
  for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
    out << detail::fmt_double(mesh.nodes[i].x) << ',' << detail::fmt_double(mesh.nodes[i].y)
        << ',' << detail::fmt_double(sol.density()[i]) << ','
        << detail::fmt_double(mesh.arclengths[i]) << '\n';
  return out.str();
}

inline void write_csv_exports(const std::string& prefix, const PipelineResult& result) {
  atomic_write(prefix + "_measure.csv", measure_csv(result.measure));
  atomic_write(prefix + "_arcs.csv", arcs_csv(result.skeleton));
  atomic_write(prefix + "_junctions.csv", junctions_csv(result.skeleton));
  atomic_write(prefix + "_boundary.csv", boundary_csv(result.solution()));
}

// --- input parsing -----------------------------------------------------------

// "x1,y1,x2,y2,..." -> points. Whitespace around numbers is tolerated.
inline std::vector<Point2> parse_vertex_list(const std::string& text) {
  std::vector<double> nums;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      nums.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse vertex coordinate '" + item + "'");
    }
  }
  if (nums.size() < 6 || nums.size() % 2 != 0)
    throw std::invalid_argument("vertex list needs an even number (>= 6) of coordinates");
  std::vector<Point2> pts;
  for (std::size_t k = 0; k + 1 < nums.size(); k += 2) pts.push_back({nums[k], nums[k + 1]});
  return pts;
}

// Config file: {"vertices": [[x,y],...], optional resolution overrides}.
inline void load_config_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& err) {
    throw IoError("cannot parse " + path + ": " + err.what());
  }
  if (doc.contains("vertices")) {
    cfg.vertices.clear();
    for (const json& v : doc.at("vertices"))
      cfg.vertices.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
  }
  if (doc.contains("panels_per_side")) cfg.panels_per_side = doc["panels_per_side"];
  if (doc.contains("grading")) cfg.grading = doc["grading"];
  if (doc.contains("grid_resolution")) cfg.grid_resolution = doc["grid_resolution"];
  if (doc.contains("samples_per_arc")) cfg.samples_per_arc = doc["samples_per_arc"];
  if (doc.contains("seed")) cfg.seed = doc["seed"];
  if (doc.contains("levels")) cfg.levels = doc["levels"].get<std::vector<double>>();
}

}  // namespace eskel
