#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "eskel/geometry.hpp"

namespace eskel {

// Random convex n-gon: n angles drawn uniformly on the unit circle and
// sorted. Points on a circle are automatically in convex position; shapes
// with an interior angle below `min_angle_deg` (or angle gaps too small to
// survive validation) are rejected and redrawn. Deterministic for a given
// generator state.
inline ConvexPolygon random_convex_polygon(std::size_t n_sides, std::mt19937_64& rng,
                                           double min_angle_deg = 15.0) {
  if (n_sides < 3) throw std::invalid_argument("a polygon needs at least 3 sides");
  const double two_pi = 2.0 * std::acos(-1.0);
  std::uniform_real_distribution<double> angle(0.0, two_pi);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> thetas(n_sides);
    for (double& t : thetas) t = angle(rng);
    std::sort(thetas.begin(), thetas.end());

    // Coincident angles make degenerate edges; redraw early.
    bool gap_ok = true;
    for (std::size_t k = 0; k < n_sides; ++k) {
      const double next = k + 1 < n_sides ? thetas[k + 1] : thetas[0] + two_pi;
      if (next - thetas[k] < 1e-3) gap_ok = false;
    }
    if (!gap_ok) continue;

    std::vector<Point2> verts;
    verts.reserve(n_sides);
    for (double t : thetas) verts.push_back({std::cos(t), std::sin(t)});
    try {
      return ConvexPolygon::validate(std::move(verts), min_angle_deg);
    } catch (const Error&) {
      continue;  // too sharp or degenerate; redraw
    }
  }
  throw std::runtime_error("random polygon rejection sampling failed to converge");
}

}  // namespace eskel
