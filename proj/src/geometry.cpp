#include "isoptic/geometry.hpp"

namespace isoptic {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidShape: return "InvalidShape";
    case ErrorCode::PointInsideShape: return "PointInsideShape";
    case ErrorCode::ParameterOutOfRange: return "ParameterOutOfRange";
    case ErrorCode::DegenerateAngle: return "DegenerateAngle";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::NoRootInDomain: return "NoRootInDomain";
    case ErrorCode::MaxIterationsExceeded: return "MaxIterationsExceeded";
    case ErrorCode::ReferenceNotInterior: return "ReferenceNotInterior";
    case ErrorCode::NonBracketedRoot: return "NonBracketedRoot";
    case ErrorCode::UnboundedShape: return "UnboundedShape";
    case ErrorCode::AboveVisibilityHalfPlane: return "AboveVisibilityHalfPlane";
  }
  return "Unknown";
}

std::optional<Point2> intersect(const Line& a, const Line& b, double parallel_eps) {
  const double denom = cross(a.dir, b.dir);
  if (std::abs(denom) <= parallel_eps * norm(a.dir) * norm(b.dir)) return std::nullopt;
  const double t = cross(b.point - a.point, b.dir) / denom;
  return a.point + t * a.dir;
}

}  // namespace isoptic
