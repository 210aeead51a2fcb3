#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "eskel/errors.hpp"

namespace eskel {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2&) const = default;
};
using Point2 = Vec2;

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Vec2 rot90ccw(Vec2 a) { return {-a.y, a.x}; }
inline Vec2 normalized(Vec2 a) { return a / norm(a); }

// Distance from p to the segment [a,b].
inline double segment_distance(Point2 p, Point2 a, Point2 b) {
  const Vec2 ab = b - a;
  const double t = std::clamp(dot(p - a, ab) / norm2(ab), 0.0, 1.0);
  return distance(p, a + t * ab);
}

inline int orientation_sign(Point2 a, Point2 b, Point2 c) {
  const double v = cross(b - a, c - a);
  return (v > 0.0) - (v < 0.0);
}

// Closed-segment intersection test (touching endpoints count as crossing).
inline bool segments_intersect(Point2 p1, Point2 p2, Point2 q1, Point2 q2) {
  const auto within_box = [](Point2 a, Point2 b, Point2 p) {
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
  };
  const int o1 = orientation_sign(p1, p2, q1);
  const int o2 = orientation_sign(p1, p2, q2);
  const int o3 = orientation_sign(q1, q2, p1);
  const int o4 = orientation_sign(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && within_box(p1, p2, q1)) return true;
  if (o2 == 0 && within_box(p1, p2, q2)) return true;
  if (o3 == 0 && within_box(q1, q2, p1)) return true;
  if (o4 == 0 && within_box(q1, q2, p2)) return true;
  return false;
}

// The line supporting one polygon side, with the mirror map across it.
// unit_inward_normal points into the polygon.
struct FaceLine {
  Point2 origin;
  Vec2 unit_tangent;
  Vec2 unit_inward_normal;

  // Signed distance, positive on the polygon side of the line.
  double inward_distance(Point2 p) const { return dot(p - origin, unit_inward_normal); }

  Point2 reflect(Point2 p) const {
    return p - (2.0 * inward_distance(p)) * unit_inward_normal;
  }
  // The constant derivative of the mirror map: v - 2(v.n)n.
  Vec2 reflect_vector(Vec2 v) const {
    return v - (2.0 * dot(v, unit_inward_normal)) * unit_inward_normal;
  }
};

enum class Region { Interior, Boundary, Exterior };

// Strictly convex polygon with counterclockwise vertex order.
// Face j spans vertex j -> vertex j+1 (indices mod N).
class ConvexPolygon {
 public:
  // Validates and builds. Accepts clockwise input by reversing it.
  // Throws NonConvexError, DegenerateAngleError, or DuplicateVertexError,
  // naming the offending vertex index.
  static ConvexPolygon validate(std::vector<Point2> vertices, double min_angle_deg = 5.0);

  std::size_t num_faces() const { return faces_.size(); }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<FaceLine>& faces() const { return faces_; }
  const Point2& vertex(std::size_t i) const { return vertices_[i]; }
  const FaceLine& face(std::size_t j) const { return faces_[j]; }
  Point2 centroid() const { return centroid_; }
  double diameter() const { return diameter_; }
  Point2 bbox_lo() const { return bbox_lo_; }
  Point2 bbox_hi() const { return bbox_hi_; }

  double side_length(std::size_t j) const {
    return distance(vertices_[j], vertices_[(j + 1) % vertices_.size()]);
  }
  // Interior angle at vertex i, in radians.
  double interior_angle(std::size_t i) const {
    const std::size_t n = vertices_.size();
    const Vec2 to_prev = vertices_[(i + n - 1) % n] - vertices_[i];
    const Vec2 to_next = vertices_[(i + 1) % n] - vertices_[i];
    return std::atan2(std::abs(cross(to_next, to_prev)), dot(to_next, to_prev));
  }

  // Classification with a boundary band of half-width 1e-12 * diameter.
  Region classify(Point2 p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const FaceLine& f : faces_) d = std::min(d, f.inward_distance(p));
    const double band = 1e-12 * diameter_;
    if (d > band) return Region::Interior;
    if (d < -band) return Region::Exterior;
    return Region::Boundary;
  }

  // Distance to the boundary polyline, valid on both sides.
  double boundary_distance(Point2 p) const {
    const std::size_t n = vertices_.size();
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      d = std::min(d, segment_distance(p, vertices_[j], vertices_[(j + 1) % n]));
    return d;
  }

  // Distance to the segment of side j.
  double side_distance(Point2 p, std::size_t j) const {
    return segment_distance(p, vertices_[j], vertices_[(j + 1) % vertices_.size()]);
  }

 private:
  ConvexPolygon() = default;

  std::vector<Point2> vertices_;
  std::vector<FaceLine> faces_;
  Point2 centroid_{};
  double diameter_ = 0.0;
  Point2 bbox_lo_{};
  Point2 bbox_hi_{};
};

inline ConvexPolygon ConvexPolygon::validate(std::vector<Point2> vertices,
                                             double min_angle_deg) {
  const std::size_t n = vertices.size();
  if (n < 3) throw NonConvexError("polygon needs at least 3 vertices, got " + std::to_string(n));
  for (const Point2& v : vertices)
    if (!std::isfinite(v.x) || !std::isfinite(v.y))
      throw NonConvexError("non-finite vertex coordinate");

  double diam = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) diam = std::max(diam, distance(vertices[i], vertices[j]));
  if (diam == 0.0) throw DuplicateVertexError("all vertices coincide (vertex 1)");

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (distance(vertices[i], vertices[j]) < 1e-12 * diam)
        throw DuplicateVertexError("vertex " + std::to_string(j) + " repeats vertex " +
                                   std::to_string(i));

  // Canonical order is counterclockwise; flip clockwise input.
  double area2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) area2 += cross(vertices[i], vertices[(i + 1) % n]);
  if (area2 < 0.0) std::reverse(vertices.begin(), vertices.end());

  ConvexPolygon poly;
  poly.vertices_ = std::move(vertices);

  const double min_angle = min_angle_deg * M_PI / 180.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = poly.interior_angle(i);
    if (a < min_angle || a > M_PI - 1e-9)
      throw DegenerateAngleError("interior angle at vertex " + std::to_string(i) +
                                 " is degenerate or below the minimum");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e_prev = poly.vertices_[i] - poly.vertices_[(i + n - 1) % n];
    const Vec2 e_next = poly.vertices_[(i + 1) % n] - poly.vertices_[i];
    if (cross(e_prev, e_next) <= 0.0)
      throw NonConvexError("vertex " + std::to_string(i) +
                           " violates strict convexity; non-convex polygons need not carry "
                           "an electrostatic skeleton, so they are rejected outright");
  }

  for (std::size_t j = 0; j < n; ++j) {
    const Vec2 t = normalized(poly.vertices_[(j + 1) % n] - poly.vertices_[j]);
    poly.faces_.push_back({poly.vertices_[j], t, rot90ccw(t)});
  }

  // Area centroid via the shoelace decomposition.
  double a6 = 0.0;
  Point2 c{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 &p = poly.vertices_[i], &q = poly.vertices_[(i + 1) % n];
    const double w = cross(p, q);
    a6 += w;
    c = c + w * (p + q);
  }
  poly.centroid_ = c / (3.0 * a6);
  poly.diameter_ = diam;

  Point2 lo = poly.vertices_[0], hi = poly.vertices_[0];
  for (const Point2& v : poly.vertices_) {
    lo.x = std::min(lo.x, v.x);
    lo.y = std::min(lo.y, v.y);
    hi.x = std::max(hi.x, v.x);
    hi.y = std::max(hi.y, v.y);
  }
  poly.bbox_lo_ = lo;
  poly.bbox_hi_ = hi;
  return poly;
}

inline ConvexPolygon validate_polygon(std::vector<Point2> vertices, double min_angle_deg = 5.0) {
  return ConvexPolygon::validate(std::move(vertices), min_angle_deg);
}

inline Point2 reflect_point(const FaceLine& face, Point2 p) { return face.reflect(p); }

inline Region contains(const ConvexPolygon& poly, Point2 p) { return poly.classify(p); }

}  // namespace eskel
