#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "eskel/geometry.hpp"

namespace eskel {

// === Boundary mesh ===========================================================

struct Panel {
  Point2 a;
  Point2 b;
  std::size_t face_index;
};

// Flat-panel discretization of the polygon boundary. Panels tile each side
// exactly; endpoints are graded toward both vertices of the side.
struct BoundaryMesh {
  ConvexPolygon polygon;
  std::vector<Panel> panels;
  std::vector<Point2> nodes;       // panel midpoints (collocation points)
  std::vector<double> arclengths;  // panel lengths
};

// Symmetric grading map on [0,1]: w(0)=0, w(1)=1, clustering at both ends
// like s^q. q = 1 is the identity (uniform panels).
inline double grading_map(double s, double q) {
  const double a = std::pow(s, q);
  const double b = std::pow(1.0 - s, q);
  return a / (a + b);
}

inline BoundaryMesh build_mesh(const ConvexPolygon& poly, int panels_per_side,
                               double grading_exponent) {
  BoundaryMesh mesh{poly, {}, {}, {}};
  const std::size_t n = poly.num_faces();
  mesh.panels.reserve(n * panels_per_side);
  for (std::size_t j = 0; j < n; ++j) {
    const Point2 va = poly.vertex(j);
    const Point2 vb = poly.vertex((j + 1) % n);
    Point2 prev = va;
    for (int k = 1; k <= panels_per_side; ++k) {
      const double t = grading_map(double(k) / panels_per_side, grading_exponent);
      // Endpoints land exactly on the vertices so sides tile with no gaps.
      const Point2 next = (k == panels_per_side) ? vb : va + t * (vb - va);
      mesh.panels.push_back({prev, next, j});
      prev = next;
    }
  }
  mesh.nodes.reserve(mesh.panels.size());
  mesh.arclengths.reserve(mesh.panels.size());
  for (const Panel& p : mesh.panels) {
    mesh.nodes.push_back(0.5 * (p.a + p.b));
    mesh.arclengths.push_back(distance(p.a, p.b));
  }
  return mesh;
}

// === Closed-form panel kernel ================================================

// Integral of log|z - zeta| over the segment [a,b] with respect to arclength.
// In panel coordinates (xi along the tangent, eta across) the antiderivative of
// (1/2) log(s^2 + eta^2) is
//     G(s) = (s/2) log(s^2 + eta^2) - s + |eta| atan(s/|eta|),
// and the integral is G(L - xi) - G(-xi). The log singularity is integrable,
// so the value is finite even for z on the segment (eta = 0, 0 <= xi <= L).
inline double panel_log_integral(Point2 a, Point2 b, Point2 z) {
  const Vec2 ab = b - a;
  const double len = norm(ab);
  const Vec2 tangent = ab / len;
  const Vec2 d = z - a;
  const double xi = dot(d, tangent);
  const double eta = std::abs(cross(tangent, d));

  const auto antiderivative = [eta](double s) {
    const double r2 = s * s + eta * eta;
    if (r2 == 0.0) return 0.0;  // limit of s*log|s| at 0
    double g = 0.5 * s * std::log(r2) - s;
    if (eta > 0.0) g += eta * std::atan(s / eta);
    return g;
  };
  return antiderivative(len - xi) - antiderivative(-xi);
}

// Gradient in z of panel_log_integral. dI/dxi = log(|z-a|/|z-b|);
// dI/deta is the signed angle subtended by the panel at z. Not defined on the
// segment itself; callers keep a standoff.
inline Vec2 panel_log_integral_gradient(Point2 a, Point2 b, Point2 z) {
  const Vec2 ab = b - a;
  const double len = norm(ab);
  const Vec2 tangent = ab / len;
  const Vec2 normal = rot90ccw(tangent);
  const Vec2 d = z - a;
  const double xi = dot(d, tangent);
  const double eta = dot(d, normal);

  const double ra2 = xi * xi + eta * eta;
  const double rb2 = (xi - len) * (xi - len) + eta * eta;
  const double dxi = 0.5 * (std::log(ra2) - std::log(rb2));
  const double deta = (eta != 0.0) ? std::atan((len - xi) / eta) + std::atan(xi / eta) : 0.0;
  return dxi * tangent + deta * normal;
}

// === Equilibrium solve =======================================================

// Equilibrium measure nu (piecewise-constant density per panel) and Robin
// constant gamma. The potential convention is u = 0 on the boundary:
//     u(z) = sum_i nu_i * I_i(z) - gamma,
// which behaves like log|z| - gamma at infinity.
class EquilibriumSolution {
 public:
  EquilibriumSolution(BoundaryMesh mesh, std::vector<double> density, double robin_constant)
      : mesh_(std::move(mesh)), density_(std::move(density)), robin_constant_(robin_constant) {}

  const BoundaryMesh& mesh() const { return mesh_; }
  const ConvexPolygon& polygon() const { return mesh_.polygon; }
  const std::vector<double>& density() const { return density_; }
  double robin_constant() const { return robin_constant_; }

  // Raw single-layer potential U^nu(z) = integral of log|z-.| d(nu).
  double single_layer(Point2 z) const {
    double s = 0.0;
    for (std::size_t i = 0; i < mesh_.panels.size(); ++i)
      s += density_[i] * panel_log_integral(mesh_.panels[i].a, mesh_.panels[i].b, z);
    return s;
  }

  // Equilibrium potential, zero on the boundary and on K.
  double eval_u(Point2 z) const { return single_layer(z) - robin_constant_; }

  // Gradient of u. The per-panel integrals are closed form, so evaluation
  // stays stable arbitrarily close to the boundary (accuracy there degrades
  // only with the piecewise-constant density, i.e. by O(local panel length));
  // the standoff guards the genuinely singular case of points on a panel.
  Vec2 eval_grad_u(Point2 z) const {
    if (mesh_.polygon.boundary_distance(z) <= grad_standoff())
      throw TooCloseToBoundaryError("gradient evaluation inside the boundary standoff");
    Vec2 g{0.0, 0.0};
    for (std::size_t i = 0; i < mesh_.panels.size(); ++i)
      g = g + density_[i] * panel_log_integral_gradient(mesh_.panels[i].a, mesh_.panels[i].b, z);
    return g;
  }

  double grad_standoff() const { return 1e-9 * mesh_.polygon.diameter(); }

  double total_mass() const {
    double m = 0.0;
    for (std::size_t i = 0; i < density_.size(); ++i) m += density_[i] * mesh_.arclengths[i];
    return m;
  }

  // Max collocation defect |U^nu(node_k) - gamma| over all nodes.
  double collocation_residual() const {
    double r = 0.0;
    for (const Point2& node : mesh_.nodes)
      r = std::max(r, std::abs(single_layer(node) - robin_constant_));
    return r;
  }

 private:
  BoundaryMesh mesh_;
  std::vector<double> density_;
  double robin_constant_;
};

// First-kind (Symm) collocation system, augmented with the unit-mass row and
// the unknown Robin constant:
//     sum_i nu_i I_i(node_k) - gamma = 0   for every node k,
//     sum_i nu_i len_i = 1.
// Augmenting keeps the system regular even at logarithmic capacity 1, where
// the plain first-kind equation degenerates.
inline EquilibriumSolution solve_equilibrium(const BoundaryMesh& mesh) {
  const std::size_t m = mesh.panels.size();
  Eigen::MatrixXd a(m + 1, m + 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m + 1);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i)
      a(k, i) = panel_log_integral(mesh.panels[i].a, mesh.panels[i].b, mesh.nodes[k]);
    a(k, m) = -1.0;
  }
  for (std::size_t i = 0; i < m; ++i) a(m, i) = mesh.arclengths[i];
  a(m, m) = 0.0;
  rhs(m) = 1.0;

  const Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
  {
    const Eigen::VectorXd diag = lu.matrixLU().diagonal().cwiseAbs();
    if (diag.minCoeff() < 1e-14 * diag.maxCoeff())
      throw SingularSystemError("equilibrium system is numerically singular");
  }
  Eigen::VectorXd x = lu.solve(rhs);

  // Two rounds of iterative refinement with a long-double residual. The
  // first-kind system is mildly ill-conditioned; refinement restores the
  // mesh symmetries in the solution to near machine precision.
  for (int round = 0; round < 2; ++round) {
    Eigen::VectorXd resid(m + 1);
    for (std::size_t k = 0; k <= m; ++k) {
      long double s = 0.0L;
      for (std::size_t i = 0; i <= m; ++i) s += (long double)a(k, i) * (long double)x(i);
      resid(k) = double((long double)rhs(k) - s);
    }
    x += lu.solve(resid);
  }

  std::vector<double> density(x.data(), x.data() + m);
  const double gamma = x(m);

  double min_density = 0.0;
  for (double v : density) min_density = std::min(min_density, v);
  if (min_density < -1e-6)
    throw NegativeDensityError("equilibrium density reached " + std::to_string(min_density) +
                               "; mesh is under-resolved");
  return EquilibriumSolution(mesh, std::move(density), gamma);
}

}  // namespace eskel
