#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "eskel/verify.hpp"

namespace eskel {

// One configuration object drives every command; the defaults reproduce the
// acceptance suite.
struct RunConfig {
  std::vector<Point2> vertices;
  std::size_t panels_per_side = 64;
  double grading = 3.0;
  std::size_t grid_resolution = 512;
  std::size_t samples_per_arc = 256;
  std::vector<double> levels = {0.05, 0.3, 1.0};
  std::size_t monotonicity_trials = 30;
  std::uint64_t seed = 1;
  double perturb = 0.0;  // arm-mass perturbation for the negative control
  std::string output_path;
  std::string csv_prefix;

  void check() const {
    if (vertices.size() < 3) throw std::invalid_argument("need at least 3 vertices");
    if (panels_per_side == 0 || grid_resolution == 0 || samples_per_arc == 0)
      throw std::invalid_argument("all resolution counts must be positive");
  }
};

// Everything the pipeline produces for one polygon, kept together so the
// commands and tests can pick what they need.
struct PipelineResult {
  ConvexPolygon polygon;
  ReflectedFieldSet fields;  // owns a copy of the equilibrium solution
  LabelGrid grid;
  Skeleton skeleton;
  RieszMeasure measure;
  ConnectivityReport connectivity;

  const EquilibriumSolution& solution() const { return fields.solution(); }
};

inline PipelineResult run_skeleton_pipeline(const ConvexPolygon& poly, const RunConfig& cfg) {
  const EquilibriumSolution sol =
      solve_equilibrium(build_mesh(poly, cfg.panels_per_side, cfg.grading));
  ReflectedFieldSet fields(poly, sol);
  LabelGrid grid = label_grid(fields, cfg.grid_resolution);
  Skeleton skel = extract_ridges(fields, grid);
  RieszMeasure mu = assemble_measure(fields, skel, cfg.samples_per_arc);
  ConnectivityReport conn = connectivity_report(grid, skel);
  return PipelineResult{poly,          std::move(fields), std::move(grid),
                        std::move(skel), std::move(mu),   std::move(conn)};
}

inline PipelineResult run_skeleton_pipeline(const RunConfig& cfg) {
  cfg.check();
  return run_skeleton_pipeline(ConvexPolygon::validate(cfg.vertices), cfg);
}

// Radii for the exterior-match circles: 2 and 5 suit unit-scale polygons and
// grow with the enclosing radius for larger ones, so the circles always
// enclose K.
inline std::vector<double> default_match_radii(const ConvexPolygon& poly) {
  const Point2 c = poly.centroid();
  double enclosing = 0.0;
  for (std::size_t v = 0; v < poly.num_faces(); ++v)
    enclosing = std::max(enclosing, distance(c, poly.vertex(v)));
  return {std::max(2.0, 1.5 * enclosing), std::max(5.0, 4.0 * enclosing)};
}

}  // namespace eskel
