// Command-line driver: computes the ridge skeleton and line measure of a
// convex polygon's equilibrium potential, verifies the construction's
// defining properties, and hunts for connectivity counterexamples on random
// polygons.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eskel/io.hpp"
#include "eskel/random_polygon.hpp"

namespace {

using namespace eskel;

constexpr const char* kExitCodeMap =
    "Exit codes:\n"
    "  0   success (verify: every check passed)\n"
    "  1   unexpected internal error\n"
    "  2   command-line usage error\n"
    "  3   polygon is not convex\n"
    "  4   polygon has a degenerate interior angle\n"
    "  5   polygon repeats a vertex\n"
    "  6   boundary integral system is singular\n"
    "  7   equilibrium density came out negative\n"
    "  8   ridge chaining failed (raise --grid)\n"
    "  9   gradient evaluated too close to the boundary\n"
    "  10  density evaluated too close to a junction\n"
    "  11  density evaluated too close to a vertex\n"
    "  12  field evaluated outside its domain\n"
    "  13  level-curve root not bracketed (level too high)\n"
    "  14  comparison circle does not enclose the polygon\n"
    "  15  file I/O failure\n"
    "  16  a verification check failed\n"
    "  17  invalid configuration value\n";

struct Thresholds {
  double match = 5e-3;
  double moment = 5e-3;
  double mass = 5e-3;
  double convexity = -1e-6;     // min normalized cross product must exceed this
  double monotonicity = -1e-8;  // min increment must exceed this
};

struct CheckLine {
  std::string name;
  bool passed;
  double value;
  double threshold;
};

json checks_json(const std::vector<CheckLine>& checks) {
  json arr = json::array();
  for (const CheckLine& c : checks)
    arr.push_back(json{{"name", c.name},
                       {"passed", c.passed},
                       {"value", c.value},
                       {"threshold", c.threshold}});
  return arr;
}

void print_checks(const std::vector<CheckLine>& checks) {
  for (const CheckLine& c : checks)
    std::printf("%-44s %s  (value % .3e, threshold % .3e)\n", c.name.c_str(),
                c.passed ? "pass" : "FAIL", c.value, c.threshold);
}

void emit(const json& doc, const std::string& out_path, bool to_stdout_when_unset) {
  const std::string text = doc.dump(2) + "\n";
  if (!out_path.empty())
    atomic_write(out_path, text);
  else if (to_stdout_when_unset)
    std::fputs(text.c_str(), stdout);
}

int cmd_compute(const RunConfig& cfg) {
  const PipelineResult result = run_skeleton_pipeline(cfg);
  const json bundle = bundle_json(result, cfg);
  emit(bundle, cfg.output_path, /*to_stdout_when_unset=*/true);
  if (!cfg.csv_prefix.empty()) write_csv_exports(cfg.csv_prefix, result);
  if (!cfg.output_path.empty())
    std::printf("wrote %s (%zu arcs, %zu junctions, mass %.6f)\n", cfg.output_path.c_str(),
                result.skeleton.arcs.size(), result.skeleton.junctions.size(),
                result.measure.total_mass());
  return 0;
}

int cmd_verify(const RunConfig& cfg, const Thresholds& tol) {
  const PipelineResult result = run_skeleton_pipeline(cfg);
  const ConvexPolygon& poly = result.polygon;
  std::vector<CheckLine> checks;

  RieszMeasure measure = result.measure;
  if (cfg.perturb != 0.0 && result.skeleton.arcs.size() >= 2) {
    const FacePair up = result.skeleton.arcs[0].pair;
    const FacePair down = result.skeleton.arcs[1].pair;
    for (RieszSample& s : measure.samples) {
      if (s.arc_pair == up) s.weight *= 1.0 + cfg.perturb;
      if (s.arc_pair == down) s.weight *= 1.0 - cfg.perturb;
    }
  }

  const std::vector<double> radii = default_match_radii(poly);
  const MatchReport match = match_exterior(result.solution(), measure, radii, 128);
  for (const auto& [radius, err] : match.sup_error_by_radius)
    checks.push_back({"exterior match, circle r=" + std::to_string(radius), err < tol.match,
                      err, tol.match});
  double worst_moment = 0.0;
  for (double e : match.moment_errors) worst_moment = std::max(worst_moment, e);
  checks.push_back({"moment match k<=6", worst_moment < tol.moment, worst_moment, tol.moment});
  checks.push_back({"total mass", match.mass_error < tol.mass, match.mass_error, tol.mass});

  json convexity = json::array();
  for (double level : cfg.levels) {
    const ConvexityReport rep = trace_level_curve(result.solution(), level, 256);
    checks.push_back({"level curve convex at c=" + std::to_string(level),
                      rep.min_cross_product > tol.convexity, rep.min_cross_product,
                      tol.convexity});
    convexity.push_back(json{{"level", level}, {"min_cross_product", rep.min_cross_product}});
  }

  const auto mono =
      check_ray_monotonicity(result.solution(), poly, cfg.monotonicity_trials, cfg.seed);
  double min_inc = std::numeric_limits<double>::infinity();
  for (const MonotonicityReport& rep : mono) min_inc = std::min(min_inc, rep.min_increment);
  checks.push_back(
      {"potential increases along reflected chords", min_inc > tol.monotonicity, min_inc,
       tol.monotonicity});

  const ConnectivityReport& conn = result.connectivity;
  checks.push_back({"one region per face",
                    conn.regions.size() == poly.num_faces(),
                    double(conn.regions.size()), double(poly.num_faces())});
  checks.push_back({"regions touch their own faces", conn.every_region_touches_its_face,
                    conn.every_region_touches_its_face ? 1.0 : 0.0, 1.0});
  checks.push_back({"complement connected", conn.complement_connected,
                    double(conn.unreachable_cells), 0.0});

  bool all_passed = true;
  for (const CheckLine& c : checks) all_passed = all_passed && c.passed;
  print_checks(checks);
  std::printf("verification: %s\n", all_passed ? "all checks passed" : "CHECKS FAILED");

  json report{{"config", config_json(cfg)},
              {"polygon", {{"vertices", vertices_json(poly)}}},
              {"robin_constant", result.solution().robin_constant()},
              {"checks", checks_json(checks)},
              {"match",
               {{"radii", radii},
                {"moment_errors", match.moment_errors},
                {"mass_error", match.mass_error}}},
              {"convexity", convexity},
              {"monotonicity",
               {{"segments", mono.size()}, {"min_increment", min_inc}}},
              {"connectivity",
               {{"n_regions", conn.regions.size()},
                {"every_region_touches_its_face", conn.every_region_touches_its_face},
                {"complement_connected", conn.complement_connected},
                {"unreachable_cells", conn.unreachable_cells}}},
              {"passed", all_passed}};
  emit(report, cfg.output_path, /*to_stdout_when_unset=*/false);
  return all_passed ? 0 : 16;
}

int cmd_conjecture(RunConfig cfg, std::size_t n_sides, std::size_t trials) {
  if (n_sides < 4)
    throw std::invalid_argument(
        "conjecture hunting starts at 4 sides: triangle complements are "
        "always connected, so only larger polygons are worth scanning");
  std::mt19937_64 rng(cfg.seed);
  json runs = json::array();
  json counterexamples = json::array();
  std::size_t n_counterexamples = 0, n_failed = 0;

  for (std::size_t k = 0; k < trials; ++k) {
    const ConvexPolygon poly = random_convex_polygon(n_sides, rng, 15.0);
    json entry{{"index", k}, {"vertices", vertices_json(poly)}};
    try {
      const PipelineResult result = run_skeleton_pipeline(poly, cfg);
      const ConnectivityReport& conn = result.connectivity;
      entry["n_regions"] = conn.regions.size();
      entry["n_junctions"] = result.skeleton.junctions.size();
      entry["complement_connected"] = conn.complement_connected;
      entry["unreachable_cells"] = conn.unreachable_cells;
      entry["error"] = nullptr;
      if (!conn.complement_connected) {
        ++n_counterexamples;
        json cells = json::array();
        for (const Point2& p : conn.unreachable_examples) cells.push_back(to_json(p));
        counterexamples.push_back(json{{"index", k},
                                       {"vertices", vertices_json(poly)},
                                       {"config", config_json(cfg)},
                                       {"unreachable_cells", conn.unreachable_cells},
                                       {"unreachable_examples", cells}});
        std::printf("trial %zu: DISCONNECTED COMPLEMENT (%ld cells) -- dumped\n", k,
                    conn.unreachable_cells);
      }
    } catch (const std::exception& err) {
      ++n_failed;
      entry["error"] = err.what();
      std::printf("trial %zu: pipeline failed: %s\n", k, err.what());
    }
    runs.push_back(entry);
  }

  std::printf("conjecture scan: %zu trials, %zu counterexample candidate(s), %zu failed run(s)\n",
              trials, n_counterexamples, n_failed);
  json report{{"config", config_json(cfg)},
              {"n_sides", n_sides},
              {"trials", trials},
              {"runs", runs},
              {"counterexamples", counterexamples},
              {"summary",
               {{"n_counterexamples", n_counterexamples}, {"n_failed_runs", n_failed}}}};
  emit(report, cfg.output_path, /*to_stdout_when_unset=*/false);
  return 0;
}

void add_common_flags(CLI::App* cmd, RunConfig& cfg, std::string& vertices_text,
                      std::string& input_path) {
  cmd->add_option("--vertices", vertices_text, "polygon vertices as x1,y1,x2,y2,...");
  cmd->add_option("--input", input_path, "JSON config file with vertices and overrides");
  cmd->add_option("--panels", cfg.panels_per_side, "boundary panels per polygon side")
      ->capture_default_str();
  cmd->add_option("--grading", cfg.grading, "panel grading exponent toward the vertices")
      ->capture_default_str();
  cmd->add_option("--grid", cfg.grid_resolution, "label grid resolution (cells per axis)")
      ->capture_default_str();
  cmd->add_option("--arc-samples", cfg.samples_per_arc, "density samples per ridge arc")
      ->capture_default_str();
  cmd->add_option("--seed", cfg.seed, "random seed (monotonicity trials, conjecture scans)")
      ->capture_default_str();
  cmd->add_option("--out", cfg.output_path, "write the JSON artifact to this path");
  cmd->add_option("--csv", cfg.csv_prefix, "also write CSV exports with this path prefix");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app(
      "Ridge skeletons of convex polygons: equilibrium potential, reflected\n"
      "fields, ridge extraction, line measure, and verification.");
  app.require_subcommand(1);
  app.footer(kExitCodeMap);

  RunConfig cfg;
  Thresholds tol;
  std::string vertices_text, input_path, levels_text;
  std::size_t n_sides = 4, trials = 50;

  CLI::App* compute =
      app.add_subcommand("compute", "compute the skeleton bundle for one polygon");
  add_common_flags(compute, cfg, vertices_text, input_path);

  CLI::App* verify =
      app.add_subcommand("verify", "run all verification checks for one polygon");
  add_common_flags(verify, cfg, vertices_text, input_path);
  verify->add_option("--levels", levels_text, "level-curve values, comma separated")
      ->capture_default_str();
  verify->add_option("--perturb", cfg.perturb,
                     "negative control: skew two arm masses by +/- this fraction");
  verify->add_option("--match-tol", tol.match, "exterior match tolerance")
      ->capture_default_str();
  verify->add_option("--moment-tol", tol.moment, "moment match tolerance")
      ->capture_default_str();
  verify->add_option("--mass-tol", tol.mass, "total mass tolerance")->capture_default_str();
  verify->add_option("--convexity-tol", tol.convexity, "min cross-product floor")
      ->capture_default_str();
  verify->add_option("--monotonicity-tol", tol.monotonicity, "min increment floor")
      ->capture_default_str();

  CLI::App* conjecture = app.add_subcommand(
      "conjecture", "scan random n-gons for disconnected-complement counterexamples");
  add_common_flags(conjecture, cfg, vertices_text, input_path);
  conjecture->add_option("--sides", n_sides, "number of polygon sides (>= 4)")
      ->capture_default_str();
  conjecture->add_option("--trials", trials, "number of random polygons")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int rc = app.exit(err);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!input_path.empty()) load_config_file(input_path, cfg);
    if (!vertices_text.empty()) cfg.vertices = parse_vertex_list(vertices_text);
    if (!levels_text.empty()) {
      cfg.levels.clear();
      std::stringstream ss(levels_text);
      std::string item;
      while (std::getline(ss, item, ',')) cfg.levels.push_back(std::stod(item));
    }

    if (compute->parsed()) return cmd_compute(cfg);
    if (verify->parsed()) return cmd_verify(cfg, tol);
    if (conjecture->parsed()) return cmd_conjecture(cfg, n_sides, trials);
    return 2;
  } catch (const Error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return err.exit_code;
  } catch (const std::invalid_argument& err) {
    std::fprintf(stderr, "configuration error: %s\n", err.what());
    return 17;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "internal error: %s\n", err.what());
    return 1;
  }
}
