#include "isoptic/curve.hpp"

#include <algorithm>

namespace isoptic {

const char* to_string(SineRegion region) {
  switch (region) {
    case SineRegion::I: return "I";
    case SineRegion::II: return "II";
    case SineRegion::III: return "III";
    case SineRegion::IV: return "IV";
  }
  return "";
}

const char* to_string(TraceMethod method) {
  switch (method) {
    case TraceMethod::NewtonTangent: return "newton_tangent";
    case TraceMethod::RayBisection: return "ray_bisection";
    case TraceMethod::Analytic: return "analytic";
  }
  return "";
}

double CurveTrace::max_residual() const {
  double worst = 0.0;
  for (const auto& s : samples) {
    if (s.is_gap()) continue;
    // NaN residuals count as failures.
    if (!(s.aperture_residual <= worst)) worst = std::isnan(s.aperture_residual) ? kPi : s.aperture_residual;
  }
  return worst;
}

std::size_t CurveTrace::point_count() const {
  return static_cast<std::size_t>(std::count_if(samples.begin(), samples.end(), [](const auto& s) { return !s.is_gap(); }));
}

std::vector<Point2> CurveTrace::points() const {
  std::vector<Point2> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    if (s.point) out.push_back(*s.point);
  }
  return out;
}

std::vector<std::vector<Point2>> CurveTrace::segments() const {
  std::vector<std::vector<Point2>> out;
  bool open = false;
  for (const auto& s : samples) {
    if (s.is_gap()) {
      open = false;
      continue;
    }
    if (!open) {
      out.emplace_back();
      open = true;
    }
    out.back().push_back(*s.point);
  }
  return out;
}

}  // namespace isoptic
