#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "isoptic/curve.hpp"
#include "isoptic/shapes.hpp"

namespace isoptic {

// Associated-tangent equation f'(x) = M for a convex graph: the tangent at
// x_tilde and the tangent at the root meet at angle alpha, with
//   M = (f'(x_tilde) - K) / (1 + K f'(x_tilde)),  K = tan(alpha).
struct NewtonProblem {
  FunctionGraph graph;
  double x_tilde = 0.0;
  Angle alpha;
  double target_slope = 0.0;  // M
  // M is infinite: the associated tangent would be vertical, which no graph
  // point can provide.
  bool vertical = false;

  // When 1 + K f'(x_tilde) vanishes (or alpha is a right angle) M is taken
  // from slope angles, tan(atan f'(x_tilde) - alpha), instead of the quotient.
  static NewtonProblem make(FunctionGraph graph, double x_tilde, Angle alpha);
  // Problem for a given target slope, as needed when the first tangent
  // pivots about a corner instead of touching the curve.
  static NewtonProblem with_target_slope(FunctionGraph graph, double slope);
};

// Safeguarded Newton on f'(x) - M over [lo, hi]: keeps a sign-change bracket
// and bisects whenever a Newton step would leave it. Returns x* in [lo, hi]
// with |f'(x*) - M| <= tol, or the best bracket end once the bracket has
// collapsed to rounding level. Throws NoRootInDomain when M lies outside
// [f'(lo), f'(hi)] and MaxIterationsExceeded.
double associated_tangent(const NewtonProblem& problem, double x0, double tol, int max_iter = 100);

inline constexpr double kDefaultTraceTolerance = 1e-8;
inline constexpr std::size_t kDefaultTangentSamples = 512;
inline constexpr std::size_t kDefaultRayDirections = 720;
inline constexpr double kDefaultSearchRadius = 1e4;
inline constexpr int kDefaultBisectionIterations = 200;

// Parameter domain of tangent_pair_trace for a sine arch or function graph.
// xi in [lo, hi] places the left cone edge tangent to the curve at
// (xi, f(xi)); xi in [start, lo) pivots it about the left corner, the
// outward normal turning by (lo - xi) radians from the curve's end normal.
struct TangentParamDomain {
  double start;
  double lo;
  double hi;
};

TangentParamDomain tangent_param_domain(const ConvexShape& shape);
std::vector<double> default_xi_grid(const ConvexShape& shape, std::size_t n = kDefaultTangentSamples);

// For every xi: tangent line t1 (left cone edge), the associated second line
// at angle alpha (curve tangent via associated_tangent, or through the right
// corner when no curve tangent fits), and their intersection. Infeasible
// parameters become gap markers; parallel line pairs are listed in
// `skipped`. Shape must be a SineArch or a FunctionGraph.
CurveTrace tangent_pair_trace(const ConvexShape& shape, Angle alpha, const std::vector<double>& xi_grid,
                              double tol = kDefaultTraceTolerance);

struct RayBisectionOptions {
  double tolerance = kDefaultTraceTolerance;
  double max_radius = kDefaultSearchRadius;
  int max_iterations = kDefaultBisectionIterations;
};

// Point on the ray ref + r*dir (r > 0) where the aperture equals alpha, or
// nullopt when the aperture still exceeds alpha at max_radius (or the ray
// never leaves the shape, or the aperture jumps below alpha where the ray
// leaves through a vertex). Throws NonBracketedRoot when the aperture is found
// to increase along the ray outside the shape.
std::optional<Point2> ray_bisection_point(const ConvexShape& shape, Angle alpha, Point2 ref, Vec2 dir,
                                          const RayBisectionOptions& opts = {});

// Equally spaced directions from `ref`, param = direction angle in [0, 2pi).
// Throws ReferenceNotInterior unless ref is strictly inside.
CurveTrace ray_bisection_trace(const ConvexShape& shape, Angle alpha, Point2 ref,
                               std::size_t n_directions = kDefaultRayDirections,
                               const RayBisectionOptions& opts = {});

// Region of a point below the sine arch. Contacts exactly at a corner count
// as corners. Throws PointInsideShape and AboveVisibilityHalfPlane (y >= 0).
SineRegion classify_sine_region(Point2 p);

// Inscribed n-gon with vertices at equally spaced boundary parameters. For
// the sine arch the vertices run along the bottom curve from A to B and the
// top edge closes the polygon. A polygon input is returned unchanged.
Polygon polygon_inscribe(const ConvexShape& shape, std::size_t n);

}  // namespace isoptic
