#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "isoptic/error.hpp"

namespace isoptic {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Plain 2-vector; used both for points and for free directions.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

using Vec2 = Point2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Vec2 unit_vector(double angle) { return {std::cos(angle), std::sin(angle)}; }
inline double direction_angle(Vec2 v) { return std::atan2(v.y, v.x); }

inline Vec2 normalized(Vec2 v) {
  const double n = norm(v);
  return {v.x / n, v.y / n};
}

inline Vec2 rotated(Vec2 v, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

// Counter-clockwise angle from `from` to `to`, in (-pi, pi].
inline double signed_angle(Vec2 from, Vec2 to) {
  return std::atan2(cross(from, to), dot(from, to));
}

// Unsigned angle between two directions, in [0, pi].
inline double angle_between(Vec2 a, Vec2 b) {
  return std::atan2(std::abs(cross(a, b)), dot(a, b));
}

// Wraps into [0, 2pi).
inline double wrap_two_pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r >= kTwoPi ? 0.0 : r;
}

// An aperture or slope angle in [0, pi) with its tangent cached.
class Angle {
 public:
  static constexpr double kRightTolerance = 1e-12;

  // Throws InvalidArgument outside [0, pi) or for non-finite input.
  static Angle radians(double value);

  Angle() = default;

  double value() const { return radians_; }
  double tangent() const { return tangent_; }
  // True when the angle is pi/2 within kRightTolerance.
  bool is_right() const { return is_right_; }

  operator double() const { return radians_; }

 private:
  explicit Angle(double r)
      : radians_(r), tangent_(std::tan(r)), is_right_(std::abs(r - kPi / 2) <= kRightTolerance) {}

  double radians_ = 0.0;
  double tangent_ = 0.0;
  bool is_right_ = false;
};

inline Angle Angle::radians(double value) {
  if (!std::isfinite(value) || value < 0.0 || value >= kPi) {
    throw Error(ErrorCode::InvalidArgument,
                "angle must lie in [0, pi), got " + std::to_string(value));
  }
  return Angle(value);
}

// Slope of a line; vertical lines carry an explicit marker instead of +-inf.
class LineSlope {
 public:
  static LineSlope of(double k) { return LineSlope(k, false); }
  static LineSlope vertical() { return LineSlope(0.0, true); }
  // Slope of the line with direction `d`.
  static LineSlope along(Vec2 d);

  bool is_vertical() const { return vertical_; }
  // Only meaningful when !is_vertical().
  double value() const { return value_; }

 private:
  LineSlope(double v, bool vertical) : value_(v), vertical_(vertical) {}
  double value_;
  bool vertical_;
};

inline LineSlope LineSlope::along(Vec2 d) {
  if (std::abs(d.x) <= 1e-15 * norm(d)) return vertical();
  return of(d.y / d.x);
}

// Line through `point` with direction `dir`; used for tangent lines.
struct Line {
  Point2 point;
  Vec2 dir;

  // Signed distance of q from the line; positive on the left of `dir`.
  double signed_distance(Point2 q) const { return cross(dir, q - point) / norm(dir); }
};

// Intersection of two lines, nullopt when they are parallel (|sin| < eps).
std::optional<Point2> intersect(const Line& a, const Line& b, double parallel_eps = 1e-14);

}  // namespace isoptic
