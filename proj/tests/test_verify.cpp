#include <catch2/catch_amalgamated.hpp>
#include <algorithm>
#include <cmath>

#include "eskel/verify.hpp"
#include "fixtures.hpp"

using namespace eskel;

TEST_CASE("exterior potentials of the two measures agree on enclosing circles", "[verify]") {
  const MatchReport report = match_exterior(fixtures::equilateral_solution(),
                                            fixtures::equilateral_measure(), {2.0, 5.0}, 128);
  REQUIRE(report.sup_error_by_radius.at(2.0) < 5e-3);
  REQUIRE(report.sup_error_by_radius.at(5.0) < 5e-3);
  REQUIRE(report.mass_error < 5e-3);
  for (double e : report.moment_errors) REQUIRE(e < 5e-3);
}

TEST_CASE("a deliberately perturbed measure fails the exterior match", "[verify]") {
  RieszMeasure bad = fixtures::equilateral_measure();
  for (RieszSample& s : bad.samples) {
    if (s.arc_pair == FacePair(0, 1)) s.weight *= 1.10;
    if (s.arc_pair == FacePair(0, 2)) s.weight *= 0.90;
  }
  const MatchReport report =
      match_exterior(fixtures::equilateral_solution(), bad, {2.0}, 128);
  REQUIRE(report.sup_error_by_radius.at(2.0) > 1e-2);
}

TEST_CASE("circles that fail to enclose the polygon are rejected", "[verify]") {
  REQUIRE_THROWS_AS(match_exterior(fixtures::equilateral_solution(),
                                   fixtures::equilateral_measure(), {0.5}, 32),
                    CircleIntersectsKError);
}

TEST_CASE("level curves of the potential are convex", "[verify]") {
  for (double level : {0.05, 0.3, 1.0}) {
    const ConvexityReport report =
        trace_level_curve(fixtures::equilateral_solution(), level, 256);
    INFO("level " << level);
    REQUIRE(report.polyline.size() == 256);
    REQUIRE(report.min_cross_product > -1e-6);
  }
}

TEST_CASE("high level curves approach circles", "[verify]") {
  const ConvexityReport report = trace_level_curve(fixtures::equilateral_solution(), 2.0, 64);
  const Point2 c = fixtures::equilateral().centroid();
  double dmin = std::numeric_limits<double>::infinity(), dmax = 0.0;
  for (const Point2& p : report.polyline) {
    dmin = std::min(dmin, distance(p, c));
    dmax = std::max(dmax, distance(p, c));
  }
  REQUIRE(dmax / dmin < 1.01);
}

TEST_CASE("low level curves hug the boundary", "[verify]") {
  const ConvexityReport report =
      trace_level_curve(fixtures::equilateral_solution(), 0.005, 128);
  for (const Point2& p : report.polyline)
    REQUIRE(fixtures::equilateral().boundary_distance(p) < 0.02);
}

TEST_CASE("level tracing validates its inputs and search radius", "[verify]") {
  REQUIRE_THROWS_AS(trace_level_curve(fixtures::equilateral_solution(), 50.0, 64),
                    RootNotBracketedError);
  REQUIRE_THROWS_AS(trace_level_curve(fixtures::equilateral_solution(), 0.0, 64),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(trace_level_curve(fixtures::equilateral_solution(), 0.05, 16),
                    std::invalid_argument);
}

TEST_CASE("potential increases along reflected chords", "[verify]") {
  const auto reports =
      check_ray_monotonicity(fixtures::equilateral_solution(), fixtures::equilateral(), 30);
  REQUIRE(reports.size() >= 30);
  for (const MonotonicityReport& rep : reports) {
    REQUIRE(rep.values.size() >= 50);
    REQUIRE(rep.min_increment > -1e-8);
    // Starts at the common vertex on the boundary, where u vanishes.
    REQUIRE(std::abs(rep.values.front()) < 2e-2);
    // The same samples walked backward must be non-increasing.
    double max_reversed_inc = -std::numeric_limits<double>::infinity();
    for (std::size_t k = rep.values.size(); k-- > 1;)
      max_reversed_inc = std::max(max_reversed_inc, rep.values[k - 1] - rep.values[k]);
    REQUIRE(max_reversed_inc < 1e-8);
  }
}

TEST_CASE("monotonicity also holds on the scalene triangle", "[verify]") {
  const auto reports =
      check_ray_monotonicity(fixtures::scalene_solution(), fixtures::scalene(), 10);
  for (const MonotonicityReport& rep : reports) REQUIRE(rep.min_increment > -1e-8);
}

TEST_CASE("Robin constant self-converges under panel refinement", "[verify]") {
  const auto rows = convergence_study(fixtures::equilateral(), {32, 64, 128, 256});
  REQUIRE(rows.size() == 4);
  std::vector<double> deltas;
  for (std::size_t k = 1; k < rows.size(); ++k)
    deltas.push_back(std::abs(rows[k].robin_constant - rows[k - 1].robin_constant));
  for (std::size_t k = 1; k < deltas.size(); ++k) REQUIRE(deltas[k] < deltas[k - 1]);
}

TEST_CASE("pipeline error columns do not grow under refinement", "[verify]") {
  const auto rows = convergence_study(fixtures::equilateral(), {16, 48}, 3.0, 192, 96);
  REQUIRE(rows.size() == 2);
  for (const ConvergenceRow& r : rows) {
    REQUIRE(r.mass_error < 5e-3);
    REQUIRE(r.match_error < 2e-2);
  }
  REQUIRE(rows[1].match_error < std::max(rows[0].match_error, 5e-3));
  REQUIRE(rows[1].mass_error < std::max(rows[0].mass_error, 2e-3));
}

TEST_CASE("convergence study needs two panel counts", "[verify]") {
  REQUIRE_THROWS_AS(convergence_study(fixtures::equilateral(), {64}), std::invalid_argument);
}
