#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <random>

#include "eskel/reflections.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace eskel;

namespace {

// Random interior points with a margin away from the boundary.
std::vector<Point2> interior_samples(const ConvexPolygon& poly, int count, double margin,
                                     unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(poly.bbox_lo().x, poly.bbox_hi().x);
  std::uniform_real_distribution<double> uy(poly.bbox_lo().y, poly.bbox_hi().y);
  std::vector<Point2> pts;
  while (pts.size() < std::size_t(count)) {
    const Point2 p{ux(rng), uy(rng)};
    if (poly.classify(p) == Region::Interior && poly.boundary_distance(p) > margin)
      pts.push_back(p);
  }
  return pts;
}

}  // namespace

TEST_CASE("reflected fields are negative inside", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::scalene_fields();
  for (const Point2& p : interior_samples(fields.polygon(), 60, 1e-3, 11))
    for (std::size_t j = 0; j < fields.count(); ++j) REQUIRE(fields.value(j, p) < 0.0);
}

TEST_CASE("each field vanishes toward its own face", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::equilateral_fields();
  const ConvexPolygon& poly = fields.polygon();
  for (std::size_t j = 0; j < poly.num_faces(); ++j) {
    const Point2 mid = 0.5 * (poly.vertex(j) + poly.vertex((j + 1) % poly.num_faces()));
    const Point2 p = mid + 1e-6 * poly.face(j).unit_inward_normal;
    REQUIRE(std::abs(fields.value(j, p)) < 1e-5);
  }
}

TEST_CASE("reflected fields are harmonic inside", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::scalene_fields();
  for (const Point2& p : interior_samples(fields.polygon(), 8, 0.05, 13))
    for (std::size_t j = 0; j < fields.count(); ++j) {
      const double lap = oracle::fd_laplacian(
          [&](Point2 q) { return fields.value_unchecked(j, q); }, p, 1e-3);
      REQUIRE(std::abs(lap) < 1e-3);
    }
}

TEST_CASE("field gradients match finite differences", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::scalene_fields();
  for (const Point2& p : interior_samples(fields.polygon(), 20, 0.03, 17))
    for (std::size_t j = 0; j < fields.count(); ++j) {
      const Vec2 g = fields.gradient(j, p);
      const Vec2 fd = oracle::fd_gradient(
          [&](Point2 q) { return fields.value_unchecked(j, q); }, p, 1e-6);
      REQUIRE(norm(g - fd) < 1e-6);
    }
}

TEST_CASE("w agrees with the equilibrium potential outside and on the boundary",
          "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::equilateral_fields();
  const EquilibriumSolution& sol = fields.solution();
  for (const Point2 z : {Point2{2.0, 0.5}, Point2{-1.0, 2.0}, Point2{0.5, -3.0}}) {
    REQUIRE(fields.w_value(z) == sol.eval_u(z));
    REQUIRE(fields.w_value(z) > 0.0);
  }
  // Boundary defect between collocation nodes is O(h^2), not machine zero.
  REQUIRE(std::abs(fields.w_value({0.5, 0.0})) < 1e-4);
}

TEST_CASE("w is negative inside and small near the boundary", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::square_fields();
  for (const Point2& p : interior_samples(fields.polygon(), 60, 1e-3, 19))
    REQUIRE(fields.w_value(p) < 0.0);

  // Continuity across the face: just inside, w is already tiny.
  const Point2 near_face{0.5, 1e-2};
  REQUIRE(std::abs(fields.w_value(near_face)) < 0.05);
}

TEST_CASE("argmax label picks the nearest face on symmetric shapes", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::equilateral_fields();
  const ConvexPolygon& poly = fields.polygon();
  for (std::size_t j = 0; j < poly.num_faces(); ++j) {
    const Point2 mid = 0.5 * (poly.vertex(j) + poly.vertex((j + 1) % poly.num_faces()));
    const Point2 p = mid + 0.05 * poly.face(j).unit_inward_normal;
    const ArgmaxLabel lbl = fields.argmax_label(p);
    REQUIRE(lbl.index == j);
    REQUIRE(lbl.margin > 0.0);
  }
}

TEST_CASE("all fields tie at the centroid of the equilateral triangle", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::equilateral_fields();
  const Point2 c = fields.polygon().centroid();
  const std::vector<double> v = fields.values(c);
  REQUIRE(v.size() == 3);
  REQUIRE(std::abs(v[0] - v[1]) < 1e-8);
  REQUIRE(std::abs(v[0] - v[2]) < 1e-8);
  REQUIRE(fields.argmax_label(c).margin < 1e-8);
}

TEST_CASE("pair difference vanishes on a mirror line", "[reflections]") {
  // x = 1/2 swaps faces 1 and 2 of the equilateral triangle.
  const ReflectedFieldSet& fields = fixtures::equilateral_fields();
  for (double y : {0.1, 0.3, 0.5, 0.7}) {
    const Point2 p{0.5, y};
    REQUIRE(std::abs(fields.pair_difference(FacePair(1, 2), p)) < 1e-8);
    REQUIRE(fields.pair_difference(FacePair(1, 2), p) ==
            -(fields.value(2, p) - fields.value(1, p)));
  }
}

TEST_CASE("square center is a four-way tie", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::square_fields();
  const std::vector<double> v = fields.values({0.5, 0.5});
  for (std::size_t j = 1; j < 4; ++j) REQUIRE(std::abs(v[j] - v[0]) < 1e-8);
}

TEST_CASE("field evaluation rejects points outside the open interior", "[reflections]") {
  const ReflectedFieldSet& fields = fixtures::equilateral_fields();
  REQUIRE_THROWS_AS(fields.value(0, {5.0, 5.0}), OutsideDomainError);
  REQUIRE_THROWS_AS(fields.gradient(0, {0.5, 0.0}), OutsideDomainError);
  REQUIRE_THROWS_AS(fields.argmax_label({-1.0, 0.0}), OutsideDomainError);
}
