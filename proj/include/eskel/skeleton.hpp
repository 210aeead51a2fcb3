#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eskel/reflections.hpp"

namespace eskel {

// === Label grid ==============================================================

// Per-cell argmax labels of the reflected fields on a padded bounding box of
// the polygon. The padding guarantees a ring of exterior cells so complement
// connectivity can be seeded from outside even when the polygon fills its
// bounding box (e.g. the square).
struct LabelGrid {
  static constexpr std::int32_t kExterior = -1;
  static constexpr std::int32_t kBoundaryBand = -2;

  ConvexPolygon polygon;
  Point2 lo{};
  Point2 hi{};
  int nx = 0;
  int ny = 0;
  double dx = 0.0;
  double dy = 0.0;
  std::vector<std::int32_t> labels;  // row-major iy*nx+ix; >=0 face label
  std::vector<double> margins;       // argmax margin; 0 for non-interior cells

  std::size_t cell_index(int ix, int iy) const { return std::size_t(iy) * nx + ix; }
  std::int32_t label(int ix, int iy) const { return labels[cell_index(ix, iy)]; }
  double margin(int ix, int iy) const { return margins[cell_index(ix, iy)]; }
  Point2 center(int ix, int iy) const {
    return {lo.x + (ix + 0.5) * dx, lo.y + (iy + 0.5) * dy};
  }
  Point2 corner(int ix, int iy) const { return {lo.x + ix * dx, lo.y + iy * dy}; }
  double cell_diag() const { return std::hypot(dx, dy); }
};

inline LabelGrid label_grid(const ReflectedFieldSet& fields, int resolution) {
  if (resolution < 64)
    throw std::invalid_argument("label grid resolution must be at least 64");
  const ConvexPolygon& poly = fields.polygon();

  // Pad so the border ring (>= 2 cells) is strictly exterior.
  const double span_x = poly.bbox_hi().x - poly.bbox_lo().x;
  const double span_y = poly.bbox_hi().y - poly.bbox_lo().y;
  const double pad_x = 2.5 * span_x / (resolution - 5);
  const double pad_y = 2.5 * span_y / (resolution - 5);
  const Point2 lo{poly.bbox_lo().x - pad_x, poly.bbox_lo().y - pad_y};
  const Point2 hi{poly.bbox_hi().x + pad_x, poly.bbox_hi().y + pad_y};

  LabelGrid grid{poly,
                 lo,
                 hi,
                 resolution,
                 resolution,
                 (hi.x - lo.x) / resolution,
                 (hi.y - lo.y) / resolution,
                 std::vector<std::int32_t>(std::size_t(resolution) * resolution,
                                           LabelGrid::kExterior),
                 std::vector<double>(std::size_t(resolution) * resolution, 0.0)};

  for (int iy = 0; iy < resolution; ++iy)
    for (int ix = 0; ix < resolution; ++ix) {
      const Point2 c = grid.center(ix, iy);
      const Region region = poly.classify(c);
      const std::size_t idx = grid.cell_index(ix, iy);
      if (region == Region::Boundary) {
        grid.labels[idx] = LabelGrid::kBoundaryBand;
      } else if (region == Region::Interior) {
        const ArgmaxLabel lbl = fields.argmax_label(c);
        grid.labels[idx] = std::int32_t(lbl.index);
        grid.margins[idx] = lbl.margin;
      }
    }
  return grid;
}

// === Skeleton types ==========================================================

enum class EndpointKind { Vertex, Junction };

// One ridge arc: the locus where fields pair.i and pair.j tie on top of all
// others, as an ordered polyline. Endpoints are snapped exactly to a refined
// junction or a polygon vertex; ref is the index into the junction or vertex
// list accordingly. Arcs are oriented junction-first when one end is a vertex.
struct RidgeArc {
  FacePair pair = FacePair(0, 0);
  std::vector<Point2> points;
  EndpointKind start_kind = EndpointKind::Junction;
  EndpointKind end_kind = EndpointKind::Vertex;
  std::size_t start_ref = 0;
  std::size_t end_ref = 0;
};

struct Junction {
  Point2 location;
  std::vector<FacePair> incident_pairs;
};

struct Skeleton {
  std::vector<RidgeArc> arcs;
  std::vector<Junction> junctions;
};

// === Ridge extraction ========================================================

namespace detail {

// Root of u_i - u_j on the segment [a, b], assuming a sign change. Bisection
// until the field gap drops below tol (or the bracket is exhausted).
inline std::optional<Point2> bisect_tie(const ReflectedFieldSet& fields, std::size_t i,
                                        std::size_t j, Point2 a, Point2 b, double tol,
                                        double min_bracket) {
  auto f = [&](Point2 p) {
    return fields.value_unchecked(i, p) - fields.value_unchecked(j, p);
  };
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) return std::nullopt;  // label noise, no tie here
  for (int it = 0; it < 100; ++it) {
    const Point2 mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (std::abs(fm) < tol || distance(a, b) < min_bracket) return mid;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

// Membership in S[w]: the tying value must be on top of every other field.
inline bool on_ridge(const ReflectedFieldSet& fields, Point2 p, std::size_t i, std::size_t j,
                     double tol) {
  const std::vector<double> v = fields.values(p);
  const double tie = 0.5 * (v[i] + v[j]);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k == i || k == j) continue;
    if (v[k] > tie + tol) return false;
  }
  return true;
}

// Newton iteration for a point where three fields tie simultaneously:
// solve (u_a - u_b, u_a - u_c) = 0 with the analytic field gradients.
inline std::optional<Point2> refine_junction(const ReflectedFieldSet& fields, Point2 x0,
                                             std::size_t a, std::size_t b, std::size_t c,
                                             double position_tol, double max_step) {
  Point2 x = x0;
  try {
    for (int it = 0; it < 60; ++it) {
      if (fields.polygon().classify(x) != Region::Interior) return std::nullopt;
      const double g1 = fields.value_unchecked(a, x) - fields.value_unchecked(b, x);
      const double g2 = fields.value_unchecked(a, x) - fields.value_unchecked(c, x);
      const Vec2 ga = fields.gradient_unchecked(a, x);
      const Vec2 r1 = ga - fields.gradient_unchecked(b, x);
      const Vec2 r2 = ga - fields.gradient_unchecked(c, x);
      const double det = r1.x * r2.y - r1.y * r2.x;
      if (std::abs(det) < 1e-30) return std::nullopt;
      Vec2 step{-(g1 * r2.y - g2 * r1.y) / det, -(r1.x * g2 - r2.x * g1) / det};
      const double len = norm(step);
      if (len > max_step) step = step * (max_step / len);
      x = x + step;
      if (norm(step) < position_tol) return x;
    }
  } catch (const TooCloseToBoundaryError&) {
    return std::nullopt;
  }
  return std::nullopt;
}

// Nearest-neighbor chaining of unordered ridge points with a step cap.
// Starts anywhere on the arc and grows both ends; a gap beyond the cap
// starts a new chain (distinct arcs of the same pair are legitimate).
inline std::vector<std::vector<Point2>> chain_points(const std::vector<Point2>& pts,
                                                     double cap) {
  std::vector<std::vector<Point2>> chains;
  std::vector<bool> used(pts.size(), false);
  constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();
  for (std::size_t seed = 0; seed < pts.size(); ++seed) {
    if (used[seed]) continue;
    std::vector<Point2> chain{pts[seed]};
    used[seed] = true;
    for (int pass = 0; pass < 2; ++pass) {
      while (true) {
        const Point2 tail = chain.back();
        std::size_t best = npos;
        double best_d = cap;
        for (std::size_t k = 0; k < pts.size(); ++k) {
          if (used[k]) continue;
          const double d = distance(pts[k], tail);
          if (d < best_d) {
            best_d = d;
            best = k;
          }
        }
        if (best == npos) break;
        chain.push_back(pts[best]);
        used[best] = true;
      }
      std::reverse(chain.begin(), chain.end());
    }
    chains.push_back(std::move(chain));
  }
  return chains;
}

// Vertex shared by faces i and j if they are adjacent, else none.
inline std::optional<std::size_t> common_vertex(const ConvexPolygon& poly, FacePair p) {
  const std::size_t n = poly.num_faces();
  if ((p.i + 1) % n == p.j) return p.j;
  if ((p.j + 1) % n == p.i) return p.i;  // wrap pair {0, n-1}
  return std::nullopt;
}

}  // namespace detail

inline Skeleton extract_ridges(const ReflectedFieldSet& fields, const LabelGrid& grid,
                               double tol = 1e-10) {
  const ConvexPolygon& poly = fields.polygon();
  const double diam = poly.diameter();
  const double cell_diag = grid.cell_diag();
  const double min_bracket = 1e-15 * diam;

  // --- Crossing points on label-change edges, filtered to S[w] membership ---
  std::map<FacePair, std::vector<Point2>> crossings;
  auto scan_edge = [&](int ix1, int iy1, int ix2, int iy2) {
    const std::int32_t l1 = grid.label(ix1, iy1);
    const std::int32_t l2 = grid.label(ix2, iy2);
    if (l1 < 0 || l2 < 0 || l1 == l2) return;
    const std::size_t i = std::size_t(l1), j = std::size_t(l2);
    const std::optional<Point2> p = detail::bisect_tie(
        fields, i, j, grid.center(ix1, iy1), grid.center(ix2, iy2), tol, min_bracket);
    if (!p) return;
    if (!detail::on_ridge(fields, *p, i, j, tol)) return;
    crossings[FacePair(i, j)].push_back(*p);
  };
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      if (ix + 1 < grid.nx) scan_edge(ix, iy, ix + 1, iy);
      if (iy + 1 < grid.ny) scan_edge(ix, iy, ix, iy + 1);
    }

  // --- Junction candidates: grid corners where >= 3 labels meet -------------
  std::vector<Point2> junction_points;
  const double newton_tol = 1e-12 * std::max(1.0, diam);
  for (int iy = 1; iy < grid.ny; ++iy)
    for (int ix = 1; ix < grid.nx; ++ix) {
      const std::array<std::int32_t, 4> block{grid.label(ix - 1, iy - 1),
                                              grid.label(ix, iy - 1),
                                              grid.label(ix - 1, iy),
                                              grid.label(ix, iy)};
      std::vector<std::int32_t> distinct;
      for (std::int32_t l : block) {
        if (l < 0) {
          distinct.clear();
          break;
        }
        if (std::find(distinct.begin(), distinct.end(), l) == distinct.end())
          distinct.push_back(l);
      }
      if (distinct.size() < 3) continue;

      const Point2 corner = grid.corner(ix, iy);
      std::sort(distinct.begin(), distinct.end(), [&](std::int32_t a, std::int32_t b) {
        return fields.value_unchecked(std::size_t(a), corner) >
               fields.value_unchecked(std::size_t(b), corner);
      });
      const std::optional<Point2> refined = detail::refine_junction(
          fields, corner, std::size_t(distinct[0]), std::size_t(distinct[1]),
          std::size_t(distinct[2]), newton_tol, 2.0 * cell_diag);
      if (!refined) continue;
      if (distance(*refined, corner) > 3.0 * cell_diag) continue;
      if (poly.classify(*refined) != Region::Interior) continue;

      // At the refined point the top three fields must genuinely tie.
      std::vector<double> v = fields.values(*refined);
      std::sort(v.begin(), v.end(), std::greater<double>());
      if (v[0] - v[2] > 1e-8 * std::max(1.0, std::abs(v[0]))) continue;

      bool duplicate = false;
      for (const Point2& q : junction_points)
        if (distance(q, *refined) < 1e-7 * diam) {
          duplicate = true;
          break;
        }
      if (!duplicate) junction_points.push_back(*refined);
    }
  std::sort(junction_points.begin(), junction_points.end(), [](Point2 a, Point2 b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  });

  // --- Chain crossings into arcs, snap ends to junctions and vertices -------
  const double chain_cap = 2.0 * cell_diag;
  const double junction_snap = 3.0 * cell_diag;
  const double truncation = 1e-3 * diam;
  // The two labels of a pair meet at their common vertex in a wedge of half
  // the interior angle, so the last grid edge able to bracket a crossing sits
  // about cell/(2*sin(angle/2)) from the vertex; sharp corners need the snap
  // radius widened in the same proportion.
  const auto vertex_snap = [&](std::size_t v) {
    const double openness = std::min(1.0, 2.0 * std::sin(0.5 * poly.interior_angle(v)));
    return truncation + 3.0 * cell_diag / std::max(0.15, openness);
  };

  auto nearest_junction = [&](Point2 p) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    double best_d = junction_snap;
    for (std::size_t k = 0; k < junction_points.size(); ++k) {
      const double d = distance(junction_points[k], p);
      if (d < best_d) {
        best_d = d;
        best = k;
      }
    }
    return best;
  };

  Skeleton skel;
  skel.junctions.reserve(junction_points.size());
  for (const Point2& p : junction_points) skel.junctions.push_back({p, {}});

  for (const auto& [pair, pts] : crossings) {
    const std::optional<std::size_t> vtx = detail::common_vertex(poly, pair);
    for (std::vector<Point2>& chain : detail::chain_points(pts, chain_cap)) {
      const std::optional<std::size_t> j_front = nearest_junction(chain.front());
      const std::optional<std::size_t> j_back = nearest_junction(chain.back());

      // Debris entirely inside one junction's snap disk is the junction
      // itself (e.g. submerged-pair ties surfacing only at the tie point).
      if (j_front && j_back && *j_front == *j_back) {
        double spread = 0.0;
        for (const Point2& p : chain)
          spread = std::max(spread, distance(p, junction_points[*j_front]));
        if (spread < junction_snap) continue;
      }

      RidgeArc arc;
      arc.pair = pair;
      auto classify_end = [&](Point2 endpoint, std::optional<std::size_t> junction_idx)
          -> std::pair<EndpointKind, std::size_t> {
        if (junction_idx) return {EndpointKind::Junction, *junction_idx};
        if (vtx && distance(endpoint, poly.vertex(*vtx)) < vertex_snap(*vtx))
          return {EndpointKind::Vertex, *vtx};
        throw ChainingFailureError(
            "ridge arc for faces " + std::to_string(pair.i) + "," + std::to_string(pair.j) +
            " ends at (" + std::to_string(endpoint.x) + ", " + std::to_string(endpoint.y) +
            ") with no junction or vertex nearby; raise the grid resolution");
      };
      auto [front_kind, front_ref] = classify_end(chain.front(), j_front);
      auto [back_kind, back_ref] = classify_end(chain.back(), j_back);

      // Orient junction-first (junction -> vertex); tie-break by index.
      bool flip = false;
      if (front_kind == EndpointKind::Vertex && back_kind == EndpointKind::Junction)
        flip = true;
      else if (front_kind == back_kind && back_ref < front_ref)
        flip = true;
      if (flip) {
        std::reverse(chain.begin(), chain.end());
        std::swap(front_kind, back_kind);
        std::swap(front_ref, back_ref);
      }

      // The tie is ill-conditioned where both fields vanish: truncate near the
      // vertex and finish the arc with the exact vertex (the tie provably
      // reaches it, since both fields are zero there).
      auto finish_end = [&](std::vector<Point2>& c, EndpointKind kind, std::size_t ref,
                            bool at_back) {
        if (kind == EndpointKind::Junction) {
          const Point2 j = junction_points[ref];
          if (at_back)
            c.push_back(j);
          else
            c.insert(c.begin(), j);
          return;
        }
        const Point2 v = poly.vertex(ref);
        if (at_back) {
          while (!c.empty() && distance(c.back(), v) < truncation) c.pop_back();
          c.push_back(v);
        } else {
          while (!c.empty() && distance(c.front(), v) < truncation) c.erase(c.begin());
          c.insert(c.begin(), v);
        }
      };
      finish_end(chain, front_kind, front_ref, /*at_back=*/false);
      finish_end(chain, back_kind, back_ref, /*at_back=*/true);

      // Drop consecutive duplicates introduced by snapping.
      std::vector<Point2> cleaned;
      for (const Point2& p : chain)
        if (cleaned.empty() || distance(cleaned.back(), p) > 1e-14 * diam)
          cleaned.push_back(p);
      if (cleaned.size() < 2) continue;

      arc.points = std::move(cleaned);
      arc.start_kind = front_kind;
      arc.start_ref = front_ref;
      arc.end_kind = back_kind;
      arc.end_ref = back_ref;
      skel.arcs.push_back(std::move(arc));
    }
  }

  // Incident pairs per junction; drop junction candidates no arc ends at.
  for (const RidgeArc& arc : skel.arcs) {
    auto add_incident = [&](EndpointKind kind, std::size_t ref) {
      if (kind != EndpointKind::Junction) return;
      auto& pairs = skel.junctions[ref].incident_pairs;
      if (std::find(pairs.begin(), pairs.end(), arc.pair) == pairs.end())
        pairs.push_back(arc.pair);
    };
    add_incident(arc.start_kind, arc.start_ref);
    add_incident(arc.end_kind, arc.end_ref);
  }
  std::vector<std::size_t> remap(skel.junctions.size());
  std::vector<Junction> kept;
  for (std::size_t k = 0; k < skel.junctions.size(); ++k) {
    if (skel.junctions[k].incident_pairs.empty()) continue;
    remap[k] = kept.size();
    kept.push_back(std::move(skel.junctions[k]));
  }
  for (RidgeArc& arc : skel.arcs) {
    if (arc.start_kind == EndpointKind::Junction) arc.start_ref = remap[arc.start_ref];
    if (arc.end_kind == EndpointKind::Junction) arc.end_ref = remap[arc.end_ref];
  }
  skel.junctions = std::move(kept);

  std::sort(skel.arcs.begin(), skel.arcs.end(), [](const RidgeArc& a, const RidgeArc& b) {
    if (!(a.pair == b.pair)) return a.pair < b.pair;
    const Point2 pa = a.points.front(), pb = b.points.front();
    return pa.x != pb.x ? pa.x < pb.x : pa.y < pb.y;
  });
  return skel;
}

// === Connectivity report =====================================================

struct RegionInfo {
  std::int32_t label;
  long cell_count;
  bool touches_own_face;
};

struct ConnectivityReport {
  std::vector<RegionInfo> regions;  // connected components of equal-label cells
  bool every_region_touches_its_face = false;
  bool complement_connected = false;
  long unreachable_cells = 0;
  std::vector<Point2> unreachable_examples;  // up to 16 cell centers, for dumps
};

// Flood-fill structure of the label partition and of the complement of the
// skeleton. Complement adjacency is geometric: two cell centers communicate
// unless the segment between them crosses a ridge arc, so the boundary of K
// is passable (it is not part of S[w] away from the vertices) and label
// regions merge with the exterior around each vertex.
inline ConnectivityReport connectivity_report(const LabelGrid& grid, const Skeleton& skel) {
  ConnectivityReport report;
  const int nx = grid.nx, ny = grid.ny;

  // --- (a), (b): same-label regions and whether each meets its own face -----
  // 8-connected flood fill, then same-label components within 3 cells of each
  // other are merged: the argmax regions wedge into the vertices at half the
  // interior angle, and a wedge thinner than the grid pitch shows up as a
  // chain of near-but-not-adjacent cells, not as a genuinely separate region.
  std::vector<std::int32_t> region_id(grid.labels.size(), -1);
  std::int32_t next_region = 0;
  std::vector<std::size_t> stack;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t start = grid.cell_index(ix, iy);
      if (grid.labels[start] < 0 || region_id[start] >= 0) continue;
      const std::int32_t label = grid.labels[start];
      const std::int32_t id = next_region++;
      region_id[start] = id;
      stack.assign(1, start);
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        const int cx = int(cur % nx), cy = int(cur / nx);
        for (int sy = -1; sy <= 1; ++sy)
          for (int sx = -1; sx <= 1; ++sx) {
            const int qx = cx + sx, qy = cy + sy;
            if ((sx == 0 && sy == 0) || qx < 0 || qy < 0 || qx >= nx || qy >= ny) continue;
            const std::size_t q = grid.cell_index(qx, qy);
            if (grid.labels[q] == label && region_id[q] < 0) {
              region_id[q] = id;
              stack.push_back(q);
            }
          }
      }
    }

  std::vector<std::int32_t> parent(next_region);
  for (std::int32_t k = 0; k < next_region; ++k) parent[k] = k;
  const auto find_root = [&](std::int32_t k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t c = grid.cell_index(ix, iy);
      if (grid.labels[c] < 0) continue;
      for (int sy = 0; sy <= 3; ++sy)
        for (int sx = -3; sx <= 3; ++sx) {
          if (sy == 0 && sx <= 0) continue;
          const int qx = ix + sx, qy = iy + sy;
          if (qx < 0 || qy < 0 || qx >= nx || qy >= ny) continue;
          const std::size_t q = grid.cell_index(qx, qy);
          if (grid.labels[q] != grid.labels[c]) continue;
          const std::int32_t ra = find_root(region_id[c]);
          const std::int32_t rb = find_root(region_id[q]);
          if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }
    }

  std::map<std::int32_t, std::size_t> root_to_region;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t c = grid.cell_index(ix, iy);
      if (grid.labels[c] < 0) continue;
      const std::int32_t root = find_root(region_id[c]);
      auto [it, inserted] = root_to_region.try_emplace(root, report.regions.size());
      if (inserted) report.regions.push_back({grid.labels[c], 0, false});
      RegionInfo& info = report.regions[it->second];
      ++info.cell_count;
      if (grid.polygon.side_distance(grid.center(ix, iy), std::size_t(info.label)) <
          2.0 * grid.cell_diag())
        info.touches_own_face = true;
    }
  report.every_region_touches_its_face = true;
  for (const RegionInfo& r : report.regions)
    if (!r.touches_own_face) report.every_region_touches_its_face = false;

  // --- (c): complement of the skeleton -------------------------------------
  // Bucket arc segments by the grid cells their bounding boxes overlap.
  struct Segment {
    Point2 a, b;
  };
  std::vector<Segment> segments;
  for (const RidgeArc& arc : skel.arcs)
    for (std::size_t k = 0; k + 1 < arc.points.size(); ++k)
      segments.push_back({arc.points[k], arc.points[k + 1]});

  std::vector<std::vector<std::int32_t>> buckets(grid.labels.size());
  auto clamp_cell = [&](double v, double lo, double d, int n) {
    return std::clamp(int(std::floor((v - lo) / d)), 0, n - 1);
  };
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const Segment& seg = segments[s];
    const int x0 = clamp_cell(std::min(seg.a.x, seg.b.x), grid.lo.x, grid.dx, nx);
    const int x1 = clamp_cell(std::max(seg.a.x, seg.b.x), grid.lo.x, grid.dx, nx);
    const int y0 = clamp_cell(std::min(seg.a.y, seg.b.y), grid.lo.y, grid.dy, ny);
    const int y1 = clamp_cell(std::max(seg.a.y, seg.b.y), grid.lo.y, grid.dy, ny);
    for (int iy = y0; iy <= y1; ++iy)
      for (int ix = x0; ix <= x1; ++ix)
        buckets[grid.cell_index(ix, iy)].push_back(std::int32_t(s));
  }

  // A cell whose center falls exactly on an arc is not a sample of the
  // complement: every edge out of it touches the ridge at its own endpoint
  // and would be walled off. This happens systematically for symmetric
  // shapes (grid diagonals aligned with ridge lines, cell centers landing on
  // polygon vertices), so such cells are left out of the walk and the tally.
  const double on_ridge_tol = 1e-12 * std::max(1.0, grid.polygon.diameter());
  std::vector<char> center_on_ridge(grid.labels.size(), 0);
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix) {
      const std::size_t idx = grid.cell_index(ix, iy);
      const Point2 c = grid.center(ix, iy);
      for (const std::int32_t s : buckets[idx])
        if (segment_distance(c, segments[s].a, segments[s].b) <= on_ridge_tol) {
          center_on_ridge[idx] = 1;
          break;
        }
    }

  auto edge_open = [&](int ax, int ay, int bx, int by) {
    const Point2 pa = grid.center(ax, ay);
    const Point2 pb = grid.center(bx, by);
    // Candidate segments from both endpoint cells' buckets (segment bboxes
    // are inflated to whole cells, so any crossing segment registers in at
    // least one of them).
    for (const std::size_t cell : {grid.cell_index(ax, ay), grid.cell_index(bx, by)})
      for (const std::int32_t s : buckets[cell])
        if (segments_intersect(pa, pb, segments[s].a, segments[s].b)) return false;
    return true;
  };

  // BFS from a virtual outside node attached to the border ring.
  std::vector<char> reached(grid.labels.size(), 0);
  std::vector<std::size_t> queue;
  for (int iy = 0; iy < ny; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      if (ix == 0 || iy == 0 || ix == nx - 1 || iy == ny - 1) {
        const std::size_t idx = grid.cell_index(ix, iy);
        if (!reached[idx] && !center_on_ridge[idx]) {
          reached[idx] = 1;
          queue.push_back(idx);
        }
      }
  while (!queue.empty()) {
    const std::size_t cur = queue.back();
    queue.pop_back();
    const int cx = int(cur % nx), cy = int(cur / nx);
    for (int sy = -1; sy <= 1; ++sy)
      for (int sx = -1; sx <= 1; ++sx) {
        if (sx == 0 && sy == 0) continue;
        const int qx = cx + sx, qy = cy + sy;
        if (qx < 0 || qy < 0 || qx >= nx || qy >= ny) continue;
        const std::size_t q = grid.cell_index(qx, qy);
        if (reached[q] || center_on_ridge[q]) continue;
        if (!edge_open(cx, cy, qx, qy)) continue;
        reached[q] = 1;
        queue.push_back(q);
      }
  }
  long unreachable = 0;
  for (std::size_t idx = 0; idx < reached.size(); ++idx) {
    if (reached[idx] || center_on_ridge[idx]) continue;
    ++unreachable;
    if (report.unreachable_examples.size() < 16)
      report.unreachable_examples.push_back(grid.center(int(idx % nx), int(idx / nx)));
  }
  report.unreachable_cells = unreachable;
  report.complement_connected = (unreachable == 0);
  return report;
}

}  // namespace eskel
