#pragma once

#include <cstddef>
#include <optional>

#include "isoptic/shapes.hpp"

namespace isoptic {

// Aperture (visibility) angle of a shape from a point: the opening of the
// smallest cone with apex at the point that contains the shape. Points of
// the shape get pi by convention.
struct ApertureResult {
  double angle = kPi;
  std::optional<TangentSolution> tangents;  // empty when inside
  bool inside = true;
};

ApertureResult aperture(const ConvexShape& shape, Point2 p);

// Shorthand for aperture(shape, p).angle.
double aperture_angle(const ConvexShape& shape, Point2 p);

inline constexpr double kDefaultTruncationRadius = 1e3;

// Brute-force reference value: samples n boundary points (unbounded shapes
// are cut off at distance `truncation_radius` from the origin, wedge edges at
// that length from the apex) and returns
// the length of the smallest circular arc containing all directions from p.
// Polygon vertices and sine-arch corners are always among the samples.
// The O(1/truncation_radius) bias on unbounded shapes is not corrected.
double aperture_oracle(const ConvexShape& shape, Point2 p, std::size_t n_samples,
                       double truncation_radius = kDefaultTruncationRadius);

// Angle under which the segment [a, b] is seen from p.
double subtended_angle(Point2 a, Point2 b, Point2 p);

}  // namespace isoptic
