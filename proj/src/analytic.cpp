#include "isoptic/analytic.hpp"

#include <algorithm>

#include "isoptic/aperture.hpp"

namespace isoptic {
namespace {

double distance_to_ray(Point2 p, Point2 origin, Vec2 unit_dir) {
  const double t = std::max(0.0, dot(p - origin, unit_dir));
  return distance(p, origin + t * unit_dir);
}

}  // namespace

const char* to_string(WedgeCase c) {
  switch (c) {
    case WedgeCase::Empty: return "empty";
    case WedgeCase::OppositeWedge: return "opposite_wedge";
    case WedgeCase::OppositeAngleRegion: return "opposite_angle_region";
  }
  return "";
}

std::vector<Vec2> WedgeCurveResult::boundary_rays() const {
  if (kind == WedgeCase::Empty || !region_angle) return {};
  const double half = 0.5 * *region_angle;
  return {rotated(bisector, -half), rotated(bisector, half)};
}

bool WedgeCurveResult::on_curve(Point2 p, double tol) const {
  if (kind == WedgeCase::Empty) return false;
  // The apex belongs to the wedge itself.
  if (distance(p, apex) <= tol) return false;
  const auto rays = boundary_rays();
  const double d = std::min(distance_to_ray(p, apex, rays[0]), distance_to_ray(p, apex, rays[1]));
  if (kind == WedgeCase::OppositeAngleRegion) return d <= tol;
  const double off_axis = std::abs(signed_angle(bisector, p - apex));
  return off_axis <= 0.5 * *region_angle || d <= tol;
}

WedgeCurveResult wedge_curve(const Wedge& wedge, Angle alpha) {
  const double theta = wedge.theta.value();
  WedgeCurveResult r;
  r.apex = wedge.apex;
  r.bisector = -wedge.bisector;
  const double diff = alpha.value() - theta;
  if (std::abs(diff) <= kWedgeCaseTolerance) {
    r.kind = WedgeCase::OppositeWedge;
    r.region_angle = theta;
  } else if (diff < 0.0) {
    r.kind = WedgeCase::Empty;
  } else {
    r.kind = WedgeCase::OppositeAngleRegion;
    r.region_angle = 2.0 * alpha.value() - theta;
  }
  return r;
}

WedgeCurveResult wedge_curve(Angle theta, Angle alpha) {
  return wedge_curve(Wedge::make({0.0, 0.0}, theta.value(), {1.0, 0.0}), alpha);
}

double parabola_curve_y(Angle alpha, double x) {
  if (alpha.value() == 0.0) throw Error(ErrorCode::DegenerateAngle, "parabola curve undefined for alpha = 0");
  if (alpha.is_right()) return -0.25;
  const double k2 = alpha.tangent() * alpha.tangent();
  const double root = 2.0 * std::sqrt(4.0 * k2 * x * x + k2 + 1.0);
  const double sign = alpha.value() > kPi / 2 ? 1.0 : -1.0;
  return (-k2 - 2.0 + sign * root) / (4.0 * k2);
}

Point2 CircularArc::point_at(double s) const {
  const double t = start_angle + s * sweep();
  return center + radius * unit_vector(t);
}

CircularArc director_circle(const Ellipse& ellipse) {
  return {{0.0, 0.0}, std::hypot(ellipse.a, ellipse.b), 0.0, kTwoPi};
}

CircularArc inscribed_arc(Point2 a, Point2 b, Angle alpha, ArcSide side) {
  if (!a.finite() || !b.finite() || a == b) {
    throw Error(ErrorCode::DegenerateSegment, "inscribed arc needs two distinct finite points");
  }
  if (alpha.value() == 0.0) throw Error(ErrorCode::DegenerateAngle, "inscribed arc undefined for alpha = 0");

  const Vec2 d = b - a;
  const double len = norm(d);
  const Vec2 normal = side == ArcSide::Below ? Vec2{d.y / len, -d.x / len} : Vec2{-d.y / len, d.x / len};
  const Point2 mid = 0.5 * (a + b);
  const double sin_a = std::sin(alpha.value());
  // The centre sits on the arc's side for acute alpha, across the chord for obtuse.
  const double offset = alpha.is_right() ? 0.0 : 0.5 * len * std::cos(alpha.value()) / sin_a;
  const Point2 center = mid + offset * normal;
  const double radius = 0.5 * len / sin_a;

  const double ta = direction_angle(a - center);
  const double tb = direction_angle(b - center);
  const double sweep_ab = wrap_two_pi(tb - ta);
  const Point2 mid_ab = center + radius * unit_vector(ta + 0.5 * sweep_ab);
  if (dot(mid_ab - mid, normal) > 0.0) return {center, radius, ta, ta + sweep_ab};
  return {center, radius, tb, tb + (kTwoPi - sweep_ab)};
}

CurveTrace parabola_curve_trace(Angle alpha, const std::vector<double>& xs) {
  const ConvexShape shape = ParabolaRegion{};
  CurveTrace trace;
  trace.shape = shape_id(shape);
  trace.alpha = alpha;
  trace.method = TraceMethod::Analytic;
  for (double x : xs) {
    CurveSample s;
    s.param = x;
    s.point = Point2{x, parabola_curve_y(alpha, x)};
    const auto ap = aperture(shape, *s.point);
    s.aperture_residual = std::abs(ap.angle - alpha.value());
    if (ap.tangents) {
      s.left_kind = ap.tangents->left.kind;
      s.right_kind = ap.tangents->right.kind;
    }
    trace.samples.push_back(s);
  }
  return trace;
}

CurveTrace director_circle_trace(const Ellipse& ellipse, std::size_t n) {
  const ConvexShape shape = ellipse;
  const CircularArc circle = director_circle(ellipse);
  CurveTrace trace;
  trace.shape = shape_id(shape);
  trace.alpha = Angle::radians(kPi / 2);
  trace.method = TraceMethod::Analytic;
  for (std::size_t k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(n);
    CurveSample sample;
    sample.param = circle.start_angle + s * circle.sweep();
    sample.point = circle.point_at(s);
    sample.aperture_residual = std::abs(aperture_angle(shape, *sample.point) - kPi / 2);
    trace.samples.push_back(sample);
  }
  return trace;
}

}  // namespace isoptic
