#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "eskel/riesz.hpp"

namespace eskel {

// ---------------------------------------------------------------------------
// Numerical checks of the defining properties of the construction: the ridge
// measure's potential must equal the equilibrium potential outside K, the
// level curves of the equilibrium potential of a convex set are convex, and
// the potential increases along reflected rays. Everything here is read-only
// diagnostics over immutable inputs.
// ---------------------------------------------------------------------------

struct MatchReport {
  std::map<double, double> sup_error_by_radius;
  std::vector<double> moment_errors;  // |m_k(ridge) - m_k(boundary)| about the
                                      // centroid, divided by max(1, R)^k with R
                                      // the enclosing radius; k = 0..k_max
  double mass_error = 0.0;            // |m_0(ridge) - 1|
};

struct ConvexityReport {
  double level = 0.0;
  std::vector<Point2> polyline;  // closed: edge from back() to front()
  double min_cross_product = 0.0;  // min normalized cross of consecutive edges
};

struct MonotonicityReport {
  std::pair<Point2, Point2> segment;  // from the common vertex outward
  std::vector<double> values;         // u sampled along the segment
  double min_increment = 0.0;
};

// Sup-norm comparison of the two exterior potentials on centroid-centered
// circles. They share total mass 1, so they must agree with no constant
// offset; the raw single-layer value (eval_u + robin constant) is the
// boundary-measure potential.
inline MatchReport match_exterior(const EquilibriumSolution& sol, const RieszMeasure& mu,
                                  const std::vector<double>& radii,
                                  std::size_t points_per_circle, std::size_t k_max = 6) {
  const ConvexPolygon& poly = sol.mesh().polygon;
  const Point2 c = poly.centroid();
  double enclosing = 0.0;
  for (std::size_t v = 0; v < poly.num_faces(); ++v)
    enclosing = std::max(enclosing, distance(c, poly.vertex(v)));

  MatchReport report;
  const double two_pi = 2.0 * std::acos(-1.0);
  for (double r : radii) {
    if (r <= enclosing)
      throw CircleIntersectsKError("comparison circle of radius " + std::to_string(r) +
                                   " does not enclose the polygon (needs > " +
                                   std::to_string(enclosing) + ")");
    double sup = 0.0;
    for (std::size_t k = 0; k < points_per_circle; ++k) {
      const double th = two_pi * double(k) / double(points_per_circle);
      const Point2 z{c.x + r * std::cos(th), c.y + r * std::sin(th)};
      const double u_nu = sol.eval_u(z) + sol.robin_constant();
      sup = std::max(sup, std::abs(potential_of_measure(mu, z) - u_nu));
    }
    report.sup_error_by_radius[r] = sup;
  }

  // Moments are taken about the centroid and the k-th error is divided by
  // max(1, R)^k, R the enclosing radius: raw moments grow like R^k, so an
  // absolute tolerance is only meaningful after scale normalization.
  const MomentVector mm = complex_moments(mu, k_max, c);
  const MomentVector nm = complex_moments(sol, k_max, c);
  const double scale = std::max(1.0, enclosing);
  for (std::size_t k = 0; k <= k_max; ++k)
    report.moment_errors.push_back(std::abs(mm.moments[k] - nm.moments[k]) /
                                   std::pow(scale, static_cast<double>(k)));
  report.mass_error = std::abs(mm.moments[0].real() - 1.0);
  return report;
}

// Trace the level curve u = c by bisecting along rays from the centroid. The
// level sets are convex and contain the centroid, hence starshaped about it,
// so each ray crosses the level exactly once.
inline ConvexityReport trace_level_curve(const EquilibriumSolution& sol, double c,
                                         std::size_t n_angles) {
  if (c <= 0.0) throw std::invalid_argument("level must be positive (u = 0 on the set)");
  if (n_angles < 32) throw std::invalid_argument("need at least 32 rays for a level polyline");
  const ConvexPolygon& poly = sol.mesh().polygon;
  const Point2 o = poly.centroid();
  const double two_pi = 2.0 * std::acos(-1.0);
  const double t_cap = 1e9 * poly.diameter();

  ConvexityReport report;
  report.level = c;
  for (std::size_t k = 0; k < n_angles; ++k) {
    const double th = two_pi * double(k) / double(n_angles);
    const Vec2 dir{std::cos(th), std::sin(th)};
    auto f = [&](double t) { return sol.eval_u({o.x + t * dir.x, o.y + t * dir.y}) - c; };
    double lo = 0.0, hi = poly.diameter();
    while (f(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > t_cap)
        throw RootNotBracketedError("level " + std::to_string(c) +
                                    " not reached within the search radius");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    const double t = 0.5 * (lo + hi);
    report.polyline.push_back({o.x + t * dir.x, o.y + t * dir.y});
  }

  double min_cross = std::numeric_limits<double>::infinity();
  const std::size_t n = report.polyline.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2& a = report.polyline[k];
    const Point2& b = report.polyline[(k + 1) % n];
    const Point2& d = report.polyline[(k + 2) % n];
    const Vec2 e1 = b - a, e2 = d - b;
    min_cross = std::min(min_cross, cross(e1, e2) / (norm(e1) * norm(e2)));
  }
  report.min_cross_product = min_cross;
  return report;
}

// For a random point b on a face and the vertex farthest from that face,
// reflect the chord [vertex, b] across the faces meeting at the vertex and
// sample u outward along each exterior image. The potential must not
// decrease along these segments.
inline std::vector<MonotonicityReport> check_ray_monotonicity(const EquilibriumSolution& sol,
                                                              const ConvexPolygon& poly,
                                                              std::size_t trials,
                                                              std::uint64_t seed = 2026) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> face_pos(0.05, 0.95);
  std::uniform_int_distribution<std::size_t> face_pick(0, poly.num_faces() - 1);
  constexpr std::size_t n_samples = 64;

  std::vector<MonotonicityReport> reports;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const std::size_t f = face_pick(rng);
    const Point2 fa = poly.vertex(f);
    const Point2 fb = poly.vertex((f + 1) % poly.num_faces());
    const double t = face_pos(rng);
    const Point2 b{fa.x + t * (fb.x - fa.x), fa.y + t * (fb.y - fa.y)};

    // Vertex farthest from the face line (for a triangle: the opposite one).
    std::size_t a_idx = 0;
    double best = -1.0;
    for (std::size_t v = 0; v < poly.num_faces(); ++v) {
      const double d = poly.face(f).inward_distance(poly.vertex(v));
      if (d > best) {
        best = d;
        a_idx = v;
      }
    }
    const Point2 a = poly.vertex(a_idx);

    // Faces meeting at the chosen vertex; their reflections fix it, so each
    // image segment runs from the vertex into the exterior mirror copy of K.
    for (std::size_t g :
         {(a_idx + poly.num_faces() - 1) % poly.num_faces(), a_idx}) {
      if (g == f) continue;
      const Point2 rb = poly.face(g).reflect(b);
      MonotonicityReport rep;
      rep.segment = {a, rb};
      rep.values.reserve(n_samples);
      for (std::size_t k = 0; k < n_samples; ++k) {
        const double s = double(k) / double(n_samples - 1);
        rep.values.push_back(sol.eval_u({a.x + s * (rb.x - a.x), a.y + s * (rb.y - a.y)}));
      }
      double min_inc = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k + 1 < rep.values.size(); ++k)
        min_inc = std::min(min_inc, rep.values[k + 1] - rep.values[k]);
      rep.min_increment = min_inc;
      reports.push_back(std::move(rep));
    }
  }
  return reports;
}

// Self-convergence table. The Robin constant column needs only the solve;
// the mass and exterior-match columns run the full pipeline and are skipped
// when grid_resolution is zero.
struct ConvergenceRow {
  std::size_t panels_per_side = 0;
  double robin_constant = 0.0;
  double mass_error = 0.0;
  double match_error = 0.0;
};

inline std::vector<ConvergenceRow> convergence_study(const ConvexPolygon& poly,
                                                     const std::vector<std::size_t>& panel_counts,
                                                     double grading = 3.0,
                                                     std::size_t grid_resolution = 0,
                                                     std::size_t samples_per_arc = 128,
                                                     double match_radius_factor = 2.0) {
  if (panel_counts.size() < 2)
    throw std::invalid_argument("a convergence study needs at least two panel counts");
  std::vector<ConvergenceRow> rows;
  for (std::size_t m : panel_counts) {
    ConvergenceRow row;
    row.panels_per_side = m;
    const EquilibriumSolution sol = solve_equilibrium(build_mesh(poly, m, grading));
    row.robin_constant = sol.robin_constant();
    if (grid_resolution > 0) {
      const ReflectedFieldSet fields(poly, sol);
      const LabelGrid grid = label_grid(fields, grid_resolution);
      const Skeleton skel = extract_ridges(fields, grid);
      const RieszMeasure mu = assemble_measure(fields, skel, samples_per_arc);
      row.mass_error = std::abs(mu.total_mass() - 1.0);
      const Point2 c = poly.centroid();
      double enclosing = 0.0;
      for (std::size_t v = 0; v < poly.num_faces(); ++v)
        enclosing = std::max(enclosing, distance(c, poly.vertex(v)));
      const MatchReport match =
          match_exterior(sol, mu, {match_radius_factor * std::max(enclosing, poly.diameter())},
                         64, 0);
      row.match_error = match.sup_error_by_radius.begin()->second;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace eskel
