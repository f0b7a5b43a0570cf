#pragma once

#include <array>
#include <optional>
#include <vector>

#include "isoptic/curve.hpp"
#include "isoptic/shapes.hpp"

namespace isoptic {

enum class WedgeCase { Empty, OppositeWedge, OppositeAngleRegion };

const char* to_string(WedgeCase c);

// Symbolic equal-aperture locus of a wedge. The opposite region V shares the
// wedge's apex and bisector line; `bisector` points into V.
//   Empty                alpha < theta
//   OppositeWedge        alpha == theta: every point of V (a 2D region)
//   OppositeAngleRegion  alpha > theta: the two boundary rays of the angle V
//                        of opening 2 alpha - theta
struct WedgeCurveResult {
  WedgeCase kind = WedgeCase::Empty;
  std::optional<double> region_angle;
  Point2 apex;
  Vec2 bisector{-1.0, 0.0};

  // Directions of the boundary rays of V; empty for the Empty case.
  std::vector<Vec2> boundary_rays() const;
  // Membership of p in the locus, with absolute distance tolerance `tol`.
  bool on_curve(Point2 p, double tol = 1e-9) const;
};

inline constexpr double kWedgeCaseTolerance = 1e-12;

WedgeCurveResult wedge_curve(const Wedge& wedge, Angle alpha);
// Canonical wedge: apex at the origin, bisector along +x.
WedgeCurveResult wedge_curve(Angle theta, Angle alpha);

// Equal-aperture curve of the region y >= x^2 as a graph y(x):
//   y = (-K^2 - 2 -+ 2 sqrt(4 K^2 x^2 + K^2 + 1)) / (4 K^2),  K = tan(alpha),
// taking "-" for acute and "+" for obtuse alpha; the directrix y = -1/4 for a
// right angle. Throws DegenerateAngle for alpha == 0.
double parabola_curve_y(Angle alpha, double x);

struct CircularArc {
  Point2 center;
  double radius = 1.0;
  double start_angle = 0.0;
  double end_angle = kTwoPi;  // counter-clockwise sweep from start_angle

  double sweep() const { return end_angle - start_angle; }
  // s in [0, 1] runs from start to end.
  Point2 point_at(double s) const;
};

// Circle of radius sqrt(a^2 + b^2): the ellipse is seen under a right angle
// from each of its points.
CircularArc director_circle(const Ellipse& ellipse);

// Side of the directed segment A -> B; Below is the clockwise side, which for
// A left of B is literally below the segment.
enum class ArcSide { Below, Above };

// Points on the requested side of line AB that see segment AB under alpha:
// an arc of radius |AB| / (2 sin alpha) through A and B. The arc is the
// major arc for acute alpha, the minor arc for obtuse alpha and a half
// circle for a right angle.
CircularArc inscribed_arc(Point2 a, Point2 b, Angle alpha, ArcSide side);

// Closed forms sampled as traces, residuals checked against the aperture.
CurveTrace parabola_curve_trace(Angle alpha, const std::vector<double>& xs);
CurveTrace director_circle_trace(const Ellipse& ellipse, std::size_t n);

}  // namespace isoptic
