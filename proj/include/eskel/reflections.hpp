#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eskel/equilibrium.hpp"
#include "eskel/geometry.hpp"

namespace eskel {

// Face-index pair {i,j}, stored with i < j.
struct FacePair {
  std::size_t i;
  std::size_t j;
  FacePair(std::size_t a, std::size_t b) : i(a < b ? a : b), j(a < b ? b : a) {}
  bool operator==(const FacePair&) const = default;
  friend bool operator<(FacePair a, FacePair b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  }
};

struct ArgmaxLabel {
  std::size_t index;  // face of the largest reflected field (ties: smallest index)
  double margin;      // gap to the second largest, >= 0
};

// The reflected harmonic continuations u_j = -u o l_j of the equilibrium
// potential across each face line, defined inside the polygon. Each u_j is a
// negative harmonic function on the interior, vanishing on its own face.
class ReflectedFieldSet {
 public:
  ReflectedFieldSet(ConvexPolygon poly, EquilibriumSolution sol)
      : polygon_(std::move(poly)), solution_(std::move(sol)) {}

  const ConvexPolygon& polygon() const { return polygon_; }
  const EquilibriumSolution& solution() const { return solution_; }
  std::size_t count() const { return polygon_.num_faces(); }

  // u_j(x) for interior x.
  double value(std::size_t j, Point2 x) const {
    require_interior(x);
    return value_unchecked(j, x);
  }

  // grad u_j = -(Dl_j)^T grad u(l_j x); Dl_j is the constant reflection matrix.
  // Inherits the boundary standoff of eval_grad_u at the reflected point.
  Vec2 gradient(std::size_t j, Point2 x) const {
    require_interior(x);
    return gradient_unchecked(j, x);
  }

  // w(x): the equilibrium potential outside and on the boundary, the max of
  // the reflected fields inside.
  double w_value(Point2 x) const {
    if (polygon_.classify(x) != Region::Interior) return solution_.eval_u(x);
    double best = value_unchecked(0, x);
    for (std::size_t j = 1; j < count(); ++j) best = std::max(best, value_unchecked(j, x));
    return best;
  }

  ArgmaxLabel argmax_label(Point2 x) const {
    require_interior(x);
    std::size_t best = 0;
    double v0 = value_unchecked(0, x);
    double v1 = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < count(); ++j) {
      const double v = value_unchecked(j, x);
      if (v > v0) {
        v1 = v0;
        v0 = v;
        best = j;
      } else if (v > v1) {
        v1 = v;
      }
    }
    return {best, v0 - v1};
  }

  double pair_difference(FacePair p, Point2 x) const {
    require_interior(x);
    return value_unchecked(p.i, x) - value_unchecked(p.j, x);
  }

  // Values of all fields at x, in face order.
  std::vector<double> values(Point2 x) const {
    require_interior(x);
    std::vector<double> v(count());
    for (std::size_t j = 0; j < count(); ++j) v[j] = value_unchecked(j, x);
    return v;
  }

  double value_unchecked(std::size_t j, Point2 x) const {
    return -solution_.eval_u(polygon_.face(j).reflect(x));
  }
  Vec2 gradient_unchecked(std::size_t j, Point2 x) const {
    const FaceLine& f = polygon_.face(j);
    return -f.reflect_vector(solution_.eval_grad_u(f.reflect(x)));
  }

 private:
  void require_interior(Point2 x) const {
    if (polygon_.classify(x) != Region::Interior)
      throw OutsideDomainError("reflected fields are defined on the open interior only");
  }

  ConvexPolygon polygon_;
  EquilibriumSolution solution_;
};

inline ReflectedFieldSet make_reflected_fields(const ConvexPolygon& poly,
                                               const EquilibriumSolution& sol) {
  return ReflectedFieldSet(poly, sol);
}

}  // namespace eskel
