#pragma once

// Shared fixtures. The heavier ones are built once per test process.

#include <cmath>
#include <vector>

#include "eskel/equilibrium.hpp"
#include "eskel/geometry.hpp"
#include "eskel/reflections.hpp"
#include "eskel/riesz.hpp"
#include "eskel/skeleton.hpp"

namespace fixtures {

inline std::vector<eskel::Point2> equilateral_vertices() {
  return {{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}};
}

inline std::vector<eskel::Point2> unit_square_vertices() {
  return {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};
}

inline std::vector<eskel::Point2> scalene_vertices() {
  return {{0.0, 0.0}, {1.0, 0.0}, {0.3, 0.8}};
}

inline std::vector<eskel::Point2> regular_ngon_vertices(int n, double radius = 1.0) {
  std::vector<eskel::Point2> v;
  v.reserve(n);
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * M_PI * k / n;
    v.push_back({radius * std::cos(th), radius * std::sin(th)});
  }
  return v;
}

inline const eskel::ConvexPolygon& equilateral() {
  static const eskel::ConvexPolygon poly = eskel::validate_polygon(equilateral_vertices());
  return poly;
}

inline const eskel::ConvexPolygon& unit_square() {
  static const eskel::ConvexPolygon poly = eskel::validate_polygon(unit_square_vertices());
  return poly;
}

inline const eskel::ConvexPolygon& scalene() {
  static const eskel::ConvexPolygon poly = eskel::validate_polygon(scalene_vertices());
  return poly;
}

// Moderate resolution: enough accuracy for unit-test tolerances, fast enough
// to run in every test process.
inline const eskel::EquilibriumSolution& equilateral_solution() {
  static const eskel::EquilibriumSolution sol =
      eskel::solve_equilibrium(eskel::build_mesh(equilateral(), 64, 3.0));
  return sol;
}

inline const eskel::ReflectedFieldSet& equilateral_fields() {
  static const eskel::ReflectedFieldSet fields(equilateral(), equilateral_solution());
  return fields;
}

inline const eskel::EquilibriumSolution& square_solution() {
  static const eskel::EquilibriumSolution sol =
      eskel::solve_equilibrium(eskel::build_mesh(unit_square(), 64, 3.0));
  return sol;
}

inline const eskel::ReflectedFieldSet& square_fields() {
  static const eskel::ReflectedFieldSet fields(unit_square(), square_solution());
  return fields;
}

inline const eskel::EquilibriumSolution& scalene_solution() {
  static const eskel::EquilibriumSolution sol =
      eskel::solve_equilibrium(eskel::build_mesh(scalene(), 64, 3.0));
  return sol;
}

inline const eskel::ReflectedFieldSet& scalene_fields() {
  static const eskel::ReflectedFieldSet fields(scalene(), scalene_solution());
  return fields;
}

inline const eskel::LabelGrid& equilateral_grid() {
  static const eskel::LabelGrid grid = eskel::label_grid(equilateral_fields(), 256);
  return grid;
}

inline const eskel::Skeleton& equilateral_skeleton() {
  static const eskel::Skeleton skel =
      eskel::extract_ridges(equilateral_fields(), equilateral_grid());
  return skel;
}

inline const eskel::LabelGrid& square_grid() {
  static const eskel::LabelGrid grid = eskel::label_grid(square_fields(), 256);
  return grid;
}

inline const eskel::Skeleton& square_skeleton() {
  static const eskel::Skeleton skel = eskel::extract_ridges(square_fields(), square_grid());
  return skel;
}

inline const eskel::RieszMeasure& equilateral_measure() {
  static const eskel::RieszMeasure mu =
      eskel::assemble_measure(equilateral_fields(), equilateral_skeleton(), 256);
  return mu;
}

inline const eskel::RieszMeasure& square_measure() {
  static const eskel::RieszMeasure mu =
      eskel::assemble_measure(square_fields(), square_skeleton(), 256);
  return mu;
}

}  // namespace fixtures
