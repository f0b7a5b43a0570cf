#include "isoptic/aperture.hpp"

#include <algorithm>
#include <vector>

namespace isoptic {
namespace {

std::vector<Point2> sample_boundary(const ConvexShape& shape, std::size_t n, double radius) {
  std::vector<Point2> pts;
  pts.reserve(n + 8);
  if (is_bounded(shape)) {
    const double period = boundary_period(shape);
    for (std::size_t k = 0; k < n; ++k) {
      pts.push_back(boundary_point(shape, period * static_cast<double>(k) / static_cast<double>(n)));
    }
    if (const auto* poly = std::get_if<Polygon>(&shape)) {
      pts.insert(pts.end(), poly->vertices.begin(), poly->vertices.end());
    } else if (std::holds_alternative<SineArch>(shape)) {
      pts.push_back(SineArch::corner_a);
      pts.push_back(SineArch::corner_b);
    }
    return pts;
  }

  auto linspace = [&](std::size_t count, double lo, double hi, auto&& emit) {
    for (std::size_t k = 0; k < count; ++k) {
      const double t = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
      emit(t);
    }
  };

  if (std::holds_alternative<ParabolaRegion>(shape)) {
    // |(x, x^2)| <= R  <=>  x^2 <= (sqrt(1 + 4R^2) - 1) / 2
    const double xr = std::sqrt(0.5 * (std::sqrt(1.0 + 4.0 * radius * radius) - 1.0));
    linspace(n, -xr, xr, [&](double x) { pts.push_back({x, x * x}); });
  } else if (const auto* w = std::get_if<Wedge>(&shape)) {
    const double reach = radius;
    linspace(n / 2, 0.0, reach, [&](double s) { pts.push_back(w->apex + s * w->ccw_edge()); });
    linspace(n - n / 2, 0.0, reach, [&](double s) { pts.push_back(w->apex + s * w->cw_edge()); });
  } else if (const auto* g = std::get_if<FunctionGraph>(&shape)) {
    const std::size_t n_curve = n / 2;
    const std::size_t n_side = (n - n_curve) / 2;
    linspace(n_curve, g->lo, g->hi, [&](double x) { pts.push_back(g->point(x)); });
    for (double x : {g->lo, g->hi}) {
      const double y0 = g->f(x);
      const double top = radius > std::abs(x) ? std::sqrt(radius * radius - x * x) : y0;
      linspace(n_side, y0, std::max(y0, top), [&](double y) { pts.push_back({x, y}); });
    }
  }
  return pts;
}

}  // namespace

ApertureResult aperture(const ConvexShape& shape, Point2 p) {
  if (!p.finite()) throw Error(ErrorCode::InvalidArgument, "query point must be finite");
  if (contains(shape, p)) return {};
  ApertureResult r;
  r.tangents = tangents_from(shape, p);
  r.angle = r.tangents->opening();
  r.inside = false;
  return r;
}

double aperture_angle(const ConvexShape& shape, Point2 p) { return aperture(shape, p).angle; }

double aperture_oracle(const ConvexShape& shape, Point2 p, std::size_t n_samples, double truncation_radius) {
  if (n_samples < 100) throw Error(ErrorCode::InvalidArgument, "oracle needs at least 100 samples");
  if (!(truncation_radius > 0.0)) throw Error(ErrorCode::InvalidArgument, "truncation radius must be positive");
  if (contains(shape, p)) throw Error(ErrorCode::PointInsideShape, "oracle is defined for exterior points only");

  const auto pts = sample_boundary(shape, n_samples, truncation_radius);
  std::vector<double> angles;
  angles.reserve(pts.size());
  for (const auto& q : pts) {
    const Vec2 d = q - p;
    if (d == Vec2{}) continue;
    angles.push_back(direction_angle(d));
  }
  std::sort(angles.begin(), angles.end());
  // Smallest enclosing arc = full turn minus the largest empty gap.
  double max_gap = angles.front() + kTwoPi - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  return kTwoPi - max_gap;
}

double subtended_angle(Point2 a, Point2 b, Point2 p) { return angle_between(a - p, b - p); }

}  // namespace isoptic
