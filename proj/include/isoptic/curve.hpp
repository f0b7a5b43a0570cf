#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "isoptic/shapes.hpp"

namespace isoptic {

// Sine-arch regions below the arch, by which kind of contact each cone edge
// has: I both smooth, II both corners, III corner A + smooth, IV smooth +
// corner B.
enum class SineRegion { I, II, III, IV };

const char* to_string(SineRegion region);

enum class TraceMethod { NewtonTangent, RayBisection, Analytic };

const char* to_string(TraceMethod method);

// One traced point of an equal-aperture curve. A sample without a point is a
// gap marker: the curve does not exist (or escapes to infinity) at `param`.
struct CurveSample {
  double param = 0.0;
  std::optional<Point2> point;
  double aperture_residual = std::numeric_limits<double>::quiet_NaN();
  TangencyKind left_kind = TangencyKind::SmoothPoint;
  TangencyKind right_kind = TangencyKind::SmoothPoint;
  std::optional<SineRegion> region;

  bool is_gap() const { return !point.has_value(); }

  static CurveSample gap(double param) {
    CurveSample s;
    s.param = param;
    return s;
  }
};

struct CurveTrace {
  std::string shape;
  Angle alpha;
  TraceMethod method = TraceMethod::RayBisection;
  double tolerance = 1e-8;
  std::vector<CurveSample> samples;  // strictly increasing param
  std::vector<double> skipped;       // params dropped because the two lines were parallel

  double max_residual() const;
  bool within_tolerance() const { return max_residual() <= tolerance; }
  std::size_t point_count() const;
  std::vector<Point2> points() const;
  // Maximal runs of consecutive non-gap samples.
  std::vector<std::vector<Point2>> segments() const;
};

}  // namespace isoptic
