#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "eskel/skeleton.hpp"

namespace eskel {

// ---------------------------------------------------------------------------
// The line measure carried by the ridge set. w = max_j u_j is subharmonic and
// harmonic off the ridges, so its distributional Laplacian is a positive
// measure supported on the ridges; across a tie curve of u_i and u_j the
// density per unit length is the normal-derivative jump divided by 2*pi.
// ---------------------------------------------------------------------------

struct RieszSample {
  Point2 point;       // on a ridge arc
  double weight;      // mass carried by this sample (trapezoid cell / tail)
  double density;     // mass per unit arclength at `point`
  FacePair arc_pair;  // which two reflected fields tie along this arc
};

struct RieszMeasure {
  std::vector<RieszSample> samples;

  double total_mass() const {
    double m = 0.0;
    for (const RieszSample& s : samples) m += s.weight;
    return m;
  }
};

// Density of the ridge measure at p on the {i,j} tie curve. `normal` must be
// a unit vector perpendicular to the ridge tangent; the absolute value makes
// its orientation irrelevant.
inline double ridge_density(const ReflectedFieldSet& fields, Point2 p, FacePair pair,
                            Vec2 normal) {
  const ConvexPolygon& poly = fields.polygon();
  const double guard = 1e-3 * poly.diameter();

  for (std::size_t v = 0; v < poly.num_faces(); ++v)
    if (distance(p, poly.vertex(v)) < guard)
      throw TooCloseToVertexError("ridge density requested within " + std::to_string(guard) +
                                  " of polygon vertex " + std::to_string(v));

  const Vec2 gi = fields.gradient(pair.i, p);
  const Vec2 gj = fields.gradient(pair.j, p);

  // Junction proximity is detected from the fields themselves: at a junction a
  // third field ties with the top pair, so the first-order distance to that
  // tie, (w - u_k)/|grad(u_top - u_k)|, collapses.
  const std::vector<double> vals = fields.values(p);
  const double top = std::max(vals[pair.i], vals[pair.j]);
  const Vec2 gtop = vals[pair.i] >= vals[pair.j] ? gi : gj;
  for (std::size_t k = 0; k < vals.size(); ++k) {
    if (k == pair.i || k == pair.j) continue;
    const double gap = top - vals[k];
    const Vec2 gdiff = gtop - fields.gradient(k, p);
    const double slope = norm(gdiff);
    if (gap < guard * std::max(slope, 1e-12))
      throw TooCloseToJunctionError("ridge density requested within ~" + std::to_string(guard) +
                                    " of a junction (field " + std::to_string(k) +
                                    " nearly ties)");
  }

  return std::abs(dot(gi - gj, normal)) / (2.0 * std::acos(-1.0));
}

namespace detail {

// Cumulative arclength table over a polyline.
inline std::vector<double> cumulative_lengths(const std::vector<Point2>& pts) {
  std::vector<double> cum(pts.size(), 0.0);
  for (std::size_t k = 1; k < pts.size(); ++k)
    cum[k] = cum[k - 1] + distance(pts[k - 1], pts[k]);
  return cum;
}

inline Point2 point_at_arclength(const std::vector<Point2>& pts, const std::vector<double>& cum,
                                 double s) {
  s = std::clamp(s, 0.0, cum.back());
  const auto it = std::upper_bound(cum.begin(), cum.end(), s);
  const std::size_t k = std::min(pts.size() - 1, std::size_t(it - cum.begin()));
  const double seg = cum[k] - cum[k - 1];
  const double t = seg > 0.0 ? (s - cum[k - 1]) / seg : 0.0;
  return {pts[k - 1].x + t * (pts[k].x - pts[k - 1].x),
          pts[k - 1].y + t * (pts[k].y - pts[k - 1].y)};
}

// Two-sided quadratic grading of [0,1]: sample spacing shrinks linearly to
// zero toward both ends (exponent 2 clustering).
inline double two_sided_grading(double t) {
  return t <= 0.5 ? 2.0 * t * t : 1.0 - 2.0 * (1.0 - t) * (1.0 - t);
}

}  // namespace detail

// Assemble the ridge measure by sampling each arc's density over arclength.
//
// Ends need care: the density blows up like r^{-beta} toward a polygon vertex
// (the corner behavior of the boundary density transfers through the
// reflection; beta = 1 - pi/(2*pi - alpha) for interior angle alpha) and is
// finite at junctions. Samples keep a margin from both, and the end segments
// contribute extrapolated masses: a fitted power-law integral at vertex ends,
// a linear extrapolation at junction ends. No atom is placed at junctions --
// the Laplacian of a max of smooth functions carries no point mass at a
// triple point; the mass-convergence checks would catch a violation.
inline RieszMeasure assemble_measure(const ReflectedFieldSet& fields, const Skeleton& skel,
                                     std::size_t samples_per_arc) {
  if (samples_per_arc < 16)
    throw std::invalid_argument("assemble_measure needs samples_per_arc >= 16");
  const ConvexPolygon& poly = fields.polygon();
  const double diam = poly.diameter();
  // Margin between the first/last sample and the arc end, clearing the
  // 1e-3*diam proximity guards in ridge_density. Vertex ends need only a
  // fixed multiple of the guard. Junction ends need more as the degree d
  // grows: the tie lines of all field pairs meeting there pass through the
  // junction, and the one closest in direction to an arm can make an angle
  // as small as pi/d with it, shrinking the guard's first-order distance
  // estimate for a sample at arclength s to about s*sin(pi/d).
  const auto end_margin = [&](EndpointKind kind, std::size_t ref) {
    double factor = 2e-3;
    if (kind == EndpointKind::Junction) {
      const double deg =
          static_cast<double>(std::max<std::size_t>(3, skel.junctions[ref].incident_pairs.size()));
      factor = std::max(factor, 2e-3 / std::sin(std::acos(-1.0) / deg));
    }
    return factor * diam;
  };

  RieszMeasure mu;
  for (const RidgeArc& arc : skel.arcs) {
    const std::vector<double> cum = detail::cumulative_lengths(arc.points);
    const double length = cum.back();
    if (length <= 0.0) continue;
    const double lo = std::min(end_margin(arc.start_kind, arc.start_ref), length / 3.0);
    const double hi = length - std::min(end_margin(arc.end_kind, arc.end_ref), length / 3.0);

    const std::size_t n = samples_per_arc;
    std::vector<double> s(n), rho(n);
    std::vector<Point2> pts(n);
    const double ds = 1e-4 * length;
    for (std::size_t m = 0; m < n; ++m) {
      s[m] = lo + (hi - lo) * detail::two_sided_grading(double(m) / double(n - 1));
      pts[m] = detail::point_at_arclength(arc.points, cum, s[m]);
      const Point2 fwd = detail::point_at_arclength(arc.points, cum, s[m] + ds);
      const Point2 bwd = detail::point_at_arclength(arc.points, cum, s[m] - ds);
      const Vec2 normal = rot90ccw(normalized(fwd - bwd));
      rho[m] = ridge_density(fields, pts[m], arc.pair, normal);
    }

    // Trapezoid weights on the nonuniform grid.
    for (std::size_t m = 0; m < n; ++m) {
      const double left = m == 0 ? s[0] : 0.5 * (s[m] + s[m - 1]);
      const double right = m + 1 == n ? s[n - 1] : 0.5 * (s[m] + s[m + 1]);
      mu.samples.push_back({pts[m], rho[m] * (right - left), rho[m], arc.pair});
    }

    // End-segment masses. r measures arclength from the arc end in question;
    // the nearest two samples fit the local density model.
    const auto add_tail = [&](EndpointKind kind, std::size_t ref, bool at_start) {
      const double gap = at_start ? lo : length - hi;
      if (gap <= 0.0) return;
      const double r0 = at_start ? s[0] : length - s[n - 1];
      const double r1 = at_start ? s[1] : length - s[n - 2];
      const double rho0 = at_start ? rho[0] : rho[n - 1];
      const double rho1 = at_start ? rho[1] : rho[n - 2];
      double mass = 0.0, mid_density = 0.0;
      if (kind == EndpointKind::Vertex) {
        const double alpha = poly.interior_angle(ref);
        const double pi = std::acos(-1.0);
        const double beta = 1.0 - pi / (2.0 * pi - alpha);
        const double c = std::sqrt((rho0 * std::pow(r0, beta)) * (rho1 * std::pow(r1, beta)));
        mass = c * std::pow(gap, 1.0 - beta) / (1.0 - beta);
        mid_density = c * std::pow(0.5 * gap, -beta);
      } else {
        const double slope = (rho1 - rho0) / (r1 - r0);
        const double rho_end = std::max(0.0, rho0 - slope * r0);
        mass = gap * 0.5 * (rho_end + rho0);
        mid_density = 0.5 * (rho_end + rho0);
      }
      if (mass <= 0.0) return;
      const double s_mid = at_start ? 0.5 * gap : length - 0.5 * gap;
      mu.samples.push_back(
          {detail::point_at_arclength(arc.points, cum, s_mid), mass, mid_density, arc.pair});
    };
    add_tail(arc.start_kind, arc.start_ref, true);
    add_tail(arc.end_kind, arc.end_ref, false);
  }
  return mu;
}

// Logarithmic potential of the sampled measure (point-mass quadrature).
inline double potential_of_measure(const RieszMeasure& mu, Point2 z) {
  double u = 0.0;
  for (const RieszSample& s : mu.samples) u += s.weight * std::log(distance(z, s.point));
  return u;
}

// Complex moments m_k = integral of zeta^k; m_0 is the total mass. Equal
// exterior potentials force equal moments, which makes these a compact
// fingerprint for comparing the ridge measure against the boundary measure.
struct MomentVector {
  std::vector<std::complex<double>> moments;  // index k = 0..k_max
};

namespace detail {
inline void check_moment_order(std::size_t k_max) {
  if (k_max > 12)
    throw std::invalid_argument("moments beyond k=12 are numerically meaningless here");
}
}  // namespace detail

inline MomentVector complex_moments(const RieszMeasure& mu, std::size_t k_max,
                                    Point2 center = {0.0, 0.0}) {
  detail::check_moment_order(k_max);
  MomentVector mv;
  mv.moments.assign(k_max + 1, {0.0, 0.0});
  for (const RieszSample& s : mu.samples) {
    const std::complex<double> zeta(s.point.x - center.x, s.point.y - center.y);
    std::complex<double> pow_k(1.0, 0.0);
    for (std::size_t k = 0; k <= k_max; ++k) {
      mv.moments[k] += s.weight * pow_k;
      pow_k *= zeta;
    }
  }
  return mv;
}

inline MomentVector complex_moments(const EquilibriumSolution& sol, std::size_t k_max,
                                    Point2 center = {0.0, 0.0}) {
  detail::check_moment_order(k_max);
  const BoundaryMesh& mesh = sol.mesh();
  MomentVector mv;
  mv.moments.assign(k_max + 1, {0.0, 0.0});
  for (std::size_t i = 0; i < mesh.panels.size(); ++i) {
    const Point2 mid = mesh.nodes[i];
    const double w = sol.density()[i] * mesh.arclengths[i];
    const std::complex<double> zeta(mid.x - center.x, mid.y - center.y);
    std::complex<double> pow_k(1.0, 0.0);
    for (std::size_t k = 0; k <= k_max; ++k) {
      mv.moments[k] += w * pow_k;
      pow_k *= zeta;
    }
  }
  return mv;
}

}  // namespace eskel
