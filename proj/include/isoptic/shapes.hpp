#pragma once

#include <algorithm>

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "isoptic/geometry.hpp"

namespace isoptic {

// Closed wedge: apex + cone spanned by the two edge directions at +-theta/2
// from the bisector.
struct Wedge {
  Point2 apex;
  Angle theta;
  Vec2 bisector{1.0, 0.0};

  // theta must lie in (0, pi); bisector is normalized.
  static Wedge make(Point2 apex, double theta, Vec2 bisector);

  Vec2 ccw_edge() const { return rotated(bisector, 0.5 * theta.value()); }
  Vec2 cw_edge() const { return rotated(bisector, -0.5 * theta.value()); }
};

// The fixed region y >= x^2.
struct ParabolaRegion {};

// Axis-aligned ellipse centred at the origin, x = a cos t, y = b sin t.
struct Ellipse {
  double a = 1.0;
  double b = 1.0;

  static Ellipse make(double a, double b);
};

// The fixed region 0 <= x <= pi, -sin x <= y <= 0.
struct SineArch {
  static constexpr Point2 corner_a{0.0, 0.0};
  static constexpr Point2 corner_b{kPi, 0.0};
};

// Strictly convex polygon, vertices in counter-clockwise order.
struct Polygon {
  std::vector<Point2> vertices;

  static Polygon make(std::vector<Point2> vertices);
  std::size_t size() const { return vertices.size(); }
  const Point2& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }
};

// Epigraph of a strictly convex C^2 function restricted to [lo, hi]:
// { (x, y) : lo <= x <= hi, y >= f(x) }.
struct FunctionGraph {
  using Fn = std::function<double(double)>;

  std::string name;
  Fn f;
  Fn df;
  Fn d2f;
  double lo = 0.0;
  double hi = 1.0;

  // Checks f'' > 0 at 1000 cell midpoints of [lo, hi].
  static FunctionGraph make(std::string name, Fn f, Fn df, Fn d2f, double lo, double hi);

  // Named catalog entries: "exp", "cosh", "x2", "x4", "neg_sin".
  static FunctionGraph catalog(const std::string& name, double lo, double hi);
  static std::vector<std::string> catalog_names();

  Point2 point(double x) const { return {x, f(x)}; }
};

using ConvexShape = std::variant<Wedge, ParabolaRegion, Ellipse, SineArch, Polygon, FunctionGraph>;

enum class TangencyKind { SmoothPoint, Corner, AtInfinity };

const char* to_string(TangencyKind kind);

// Where a supporting line through the query point touches the shape.
// For AtInfinity the line is parallel to a recession direction and `point`
// is the base of the unbounded edge it runs alongside.
struct TangencyLocus {
  TangencyKind kind = TangencyKind::SmoothPoint;
  Point2 point;
  // Unit direction from the query point towards the contact (or along the
  // recession direction for AtInfinity).
  Vec2 direction;
  LineSlope slope = LineSlope::of(0.0);
};

// The two supporting lines through an exterior point. `right` is the
// clockwise-most edge of the visibility cone as seen from the point, `left`
// the counter-clockwise-most; k1 / k2 are their slopes.
struct TangentSolution {
  Point2 from;
  TangencyLocus left;
  TangencyLocus right;

  LineSlope k1() const { return right.slope; }
  LineSlope k2() const { return left.slope; }
  Line left_line() const { return {from, left.direction}; }
  Line right_line() const { return {from, right.direction}; }
  // Opening angle of the cone, in (0, pi]. Antiparallel edges (a point on
  // a supporting line) give pi.
  double opening() const {
    const double a = signed_angle(right.direction, left.direction);
    return a <= -kPi / 2 ? std::min(a + kTwoPi, kPi) : a;
  }
};

std::string shape_id(const ConvexShape& shape);
bool is_bounded(const ConvexShape& shape);

// Closed-set membership; `strict` excludes the boundary.
bool contains(const ConvexShape& shape, Point2 p, bool strict = false);

// A fixed point in the interior of the shape.
Point2 interior_point(const ConvexShape& shape);

// sup over q in shape of <q, direction>; +inf where the shape is unbounded.
double support(const ConvexShape& shape, Vec2 direction);

// Throws PointInsideShape when p is in the (closed) shape.
TangentSolution tangents_from(const ConvexShape& shape, Point2 p);

// Boundary parameterization. Bounded shapes use [0, period):
//   ellipse  t in [0, 2pi)  (a cos t, b sin t)
//   sine     t in [0, pi] bottom curve (t, -sin t), t in (pi, 2pi) top edge
//   polygon  t in [0, n)   vertex floor(t) + fractional edge position
// Unbounded shapes accept any finite t:
//   parabola (t, t^2); wedge t >= 0 along the ccw edge, t < 0 along the cw
//   edge; graph t in [lo, hi] on the curve, outside on the vertical edges.
Point2 boundary_point(const ConvexShape& shape, double t);

// Period of the bounded parameterization; throws UnboundedShape otherwise.
double boundary_period(const ConvexShape& shape);

}  // namespace isoptic
