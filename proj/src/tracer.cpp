#include "isoptic/tracer.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "isoptic/aperture.hpp"
#include "isoptic/roots.hpp"

namespace isoptic {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// A sine arch or function-graph epigraph seen as "convex graph + corners".
// Outward normals of the curve run over (pi, 2pi); a corner's normal cone
// extends to the cap edge (top segment) or the vertical edge.
struct GraphSetup {
  FunctionGraph graph;
  bool capped = false;

  double normal_angle(double x) const { return std::atan2(-1.0, graph.df(x)) + kTwoPi; }
  double left_corner_min() const { return capped ? kPi / 2 : kPi; }
  double right_corner_max() const { return capped ? kTwoPi + kPi / 2 : kTwoPi; }
  Point2 left_corner() const { return capped ? SineArch::corner_a : graph.point(graph.lo); }
  Point2 right_corner() const { return capped ? SineArch::corner_b : graph.point(graph.hi); }
};

GraphSetup graph_setup(const ConvexShape& shape) {
  if (std::holds_alternative<SineArch>(shape)) return {FunctionGraph::catalog("neg_sin", 0.0, kPi), true};
  if (const auto* g = std::get_if<FunctionGraph>(&shape)) return {*g, false};
  throw Error(ErrorCode::InvalidArgument, "tangent-pair tracing needs a sine arch or a function graph, got " +
                                              shape_id(shape));
}

Vec2 line_direction_for_normal(double nu) { return {-std::sin(nu), std::cos(nu)}; }

std::optional<SineRegion> region_from_kinds(TangencyKind left, TangencyKind right) {
  const bool lc = left == TangencyKind::Corner;
  const bool rc = right == TangencyKind::Corner;
  if (lc && rc) return SineRegion::II;
  if (lc) return SineRegion::III;
  if (rc) return SineRegion::IV;
  return SineRegion::I;
}

}  // namespace

NewtonProblem NewtonProblem::make(FunctionGraph graph, double x_tilde, Angle alpha) {
  if (!(x_tilde >= graph.lo && x_tilde <= graph.hi)) {
    throw Error(ErrorCode::ParameterOutOfRange, "x_tilde outside the graph interval");
  }
  NewtonProblem p{std::move(graph), x_tilde, alpha, 0.0, false};
  const double slope = p.graph.df(x_tilde);
  const double k = alpha.tangent();
  const double denom = 1.0 + k * slope;
  if (alpha.is_right() || std::abs(denom) <= 1e-12 * std::max(1.0, std::abs(k * slope))) {
    const double phi = std::atan(slope) - alpha.value();
    if (std::abs(std::cos(phi)) <= 1e-15) {
      p.vertical = true;
      p.target_slope = std::numeric_limits<double>::infinity();
    } else {
      p.target_slope = std::tan(phi);
    }
  } else {
    p.target_slope = (slope - k) / denom;
  }
  return p;
}

NewtonProblem NewtonProblem::with_target_slope(FunctionGraph graph, double slope) {
  NewtonProblem p{std::move(graph), 0.0, Angle{}, slope, !std::isfinite(slope)};
  p.x_tilde = p.graph.lo;
  return p;
}

double associated_tangent(const NewtonProblem& problem, double x0, double tol, int max_iter) {
  const auto& g = problem.graph;
  const double m = problem.target_slope;
  if (problem.vertical || !std::isfinite(m)) {
    throw Error(ErrorCode::NoRootInDomain, "associated tangent is vertical");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");
  double lo = g.lo;
  double hi = g.hi;
  if (g.df(lo) - m > 0.0 || g.df(hi) - m < 0.0) {
    throw Error(ErrorCode::NoRootInDomain, "target slope " + std::to_string(m) + " outside [f'(lo), f'(hi)]");
  }
  double x = std::isfinite(x0) ? std::clamp(x0, lo, hi) : 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double r = g.df(x) - m;
    if (std::abs(r) <= tol) return x;
    // f' is increasing, so the sign of r tells which side of the root x is on.
    if (r < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (hi - lo <= 2.0 * kEps * std::max({std::abs(lo), std::abs(hi), 1e-300})) {
      return std::abs(g.df(lo) - m) <= std::abs(g.df(hi) - m) ? lo : hi;
    }
    const double curvature = g.d2f(x);
    double next = x - r / curvature;
    if (!(curvature > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw Error(ErrorCode::MaxIterationsExceeded, "associated tangent did not converge");
}

TangentParamDomain tangent_param_domain(const ConvexShape& shape) {
  const GraphSetup gs = graph_setup(shape);
  const double lo = gs.graph.lo;
  return {lo - (gs.normal_angle(lo) - gs.left_corner_min()), lo, gs.graph.hi};
}

std::vector<double> default_xi_grid(const ConvexShape& shape, std::size_t n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 samples");
  const auto dom = tangent_param_domain(shape);
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = dom.start + (dom.hi - dom.start) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return grid;
}

CurveTrace tangent_pair_trace(const ConvexShape& shape, Angle alpha, const std::vector<double>& xi_grid,
                              double tol) {
  const GraphSetup gs = graph_setup(shape);
  const FunctionGraph& g = gs.graph;
  const TangentParamDomain dom = tangent_param_domain(shape);
  const double nu_lo = gs.normal_angle(g.lo);
  const double nu_hi = gs.normal_angle(g.hi);
  const bool is_sine = std::holds_alternative<SineArch>(shape);

  CurveTrace trace;
  trace.shape = shape_id(shape);
  trace.alpha = alpha;
  trace.method = TraceMethod::NewtonTangent;
  trace.tolerance = tol;

  double previous = -std::numeric_limits<double>::infinity();
  for (double xi : xi_grid) {
    if (!(xi > previous)) throw Error(ErrorCode::InvalidArgument, "xi grid must be strictly increasing");
    previous = xi;
    if (xi < dom.start - 1e-12 || xi > dom.hi + 1e-12) {
      throw Error(ErrorCode::ParameterOutOfRange, "xi = " + std::to_string(xi) + " outside the tracing domain");
    }

    // Step 1: the left cone edge, tangent at (xi, f(xi)) or pivoting at the corner.
    Point2 p1;
    Vec2 dir1;
    double nu_left;
    TangencyKind left_kind;
    if (xi > g.lo) {
      const double x = std::min(xi, g.hi);
      p1 = g.point(x);
      dir1 = {1.0, g.df(x)};
      nu_left = gs.normal_angle(x);
      left_kind = TangencyKind::SmoothPoint;
    } else {
      p1 = gs.left_corner();
      nu_left = nu_lo - (g.lo - xi);
      dir1 = line_direction_for_normal(nu_left);
      left_kind = TangencyKind::Corner;
    }

    // Step 2: the associated right edge; outward normals differ by pi - alpha.
    const double nu_right = nu_left + kPi - alpha.value();
    Point2 p2;
    Vec2 dir2;
    TangencyKind right_kind;
    if (nu_right < nu_lo) {
      // Both edges would pivot about the left corner.
      trace.samples.push_back(CurveSample::gap(xi));
      continue;
    }
    bool smooth_right = nu_right < nu_hi;
    if (smooth_right) {
      const NewtonProblem problem = left_kind == TangencyKind::SmoothPoint
                                        ? NewtonProblem::make(g, p1.x, alpha)
                                        : NewtonProblem::with_target_slope(g, -1.0 / std::tan(nu_right));
      try {
        const double m = problem.target_slope;
        const double x2 = associated_tangent(problem, 0.5 * (std::max(p1.x, g.lo) + g.hi),
                                             4.0 * kEps * (1.0 + std::abs(m)));
        p2 = g.point(x2);
        dir2 = {1.0, g.df(x2)};
        right_kind = TangencyKind::SmoothPoint;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoRootInDomain) throw;
        smooth_right = false;  // rounding at the end of the curve
      }
    }
    if (!smooth_right) {
      if (nu_right > gs.right_corner_max()) {
        trace.samples.push_back(CurveSample::gap(xi));
        continue;
      }
      p2 = gs.right_corner();
      dir2 = line_direction_for_normal(nu_right);
      right_kind = TangencyKind::Corner;
    }

    // Step 3: the intersection of the two lines lies on the curve.
    const auto hit = intersect({p1, dir1}, {p2, dir2});
    if (!hit) {
      trace.skipped.push_back(xi);
      continue;
    }
    // The contacts must lie ahead of T along the cone edges, else the lines
    // meet on the far side and T sees the supplementary angle. Edge
    // directions from T are the outward normals turned by -pi/2 (left) and
    // +pi/2 (right).
    const Vec2 edge_left{std::sin(nu_left), -std::cos(nu_left)};
    const Vec2 edge_right{-std::sin(nu_right), std::cos(nu_right)};
    const double slack = 1e-12 * (1.0 + norm(*hit));
    // A contact at T itself means T sits on the boundary (a corner reached
    // by both lines), which is never a curve point.
    if (dot(p1 - *hit, edge_left) <= slack || dot(p2 - *hit, edge_right) <= slack || contains(shape, *hit)) {
      trace.samples.push_back(CurveSample::gap(xi));
      continue;
    }
    CurveSample s;
    s.param = xi;
    s.point = *hit;
    s.aperture_residual = std::abs(aperture_angle(shape, *hit) - alpha.value());
    s.left_kind = left_kind;
    s.right_kind = right_kind;
    if (is_sine) s.region = region_from_kinds(left_kind, right_kind);
    trace.samples.push_back(s);
  }
  return trace;
}

std::optional<Point2> ray_bisection_point(const ConvexShape& shape, Angle alpha, Point2 ref, Vec2 dir,
                                          const RayBisectionOptions& opts) {
  const Vec2 u = normalized(dir);
  auto at = [&](double r) { return ref + r * u; };
  const double r_max = opts.max_radius;
  if (contains(shape, at(r_max))) return std::nullopt;

  // Exit radius: the first point of the ray outside the shape.
  double in = 0.0;
  double out = r_max;
  for (int i = 0; i < opts.max_iterations && out - in > 2.0 * kEps * out; ++i) {
    const double mid = 0.5 * (in + out);
    if (mid <= in || mid >= out) break;
    (contains(shape, at(mid)) ? in : out) = mid;
  }

  auto excess = [&](double r) { return aperture_angle(shape, at(r)) - alpha.value(); };
  if (excess(r_max) > 0.0) return std::nullopt;
  if (const double e0 = excess(out); e0 <= 0.0) {
    // At a vertex or apex the aperture can drop below alpha in one jump; no
    // point of this ray sees the shape under alpha then.
    if (e0 < -opts.tolerance) return std::nullopt;
    return at(out);
  }

  // Probe along the ray: the aperture must not increase outside the shape.
  constexpr int kProbes = 16;
  const double ratio = r_max / out;
  double lo = out;
  double hi = r_max;
  double prev = excess(out);
  bool bracketed = false;
  for (int i = 1; i <= kProbes; ++i) {
    const double r = out * std::pow(ratio, static_cast<double>(i) / kProbes);
    const double e = excess(r);
    if (e > prev + 1e-12) {
      throw Error(ErrorCode::NonBracketedRoot, "aperture increases along the ray outside the shape near r = " +
                                                   std::to_string(r));
    }
    prev = e;
    if (!bracketed) {
      if (e <= 0.0) {
        hi = r;
        bracketed = true;
      } else {
        lo = r;
      }
    }
  }
  if (!bracketed) throw Error(ErrorCode::NonBracketedRoot, "no sign change of aperture - alpha along the ray");

  double e_lo = excess(lo);
  double e_hi = excess(hi);
  for (int i = 0; i < opts.max_iterations; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double e = excess(mid);
    if (e > 0.0) {
      lo = mid;
      e_lo = e;
    } else {
      hi = mid;
      e_hi = e;
    }
  }
  // The bracket closed on a jump of the aperture rather than a root.
  if (std::min(std::abs(e_lo), std::abs(e_hi)) > opts.tolerance) return std::nullopt;
  return at(std::abs(e_lo) < std::abs(e_hi) ? lo : hi);
}

CurveTrace ray_bisection_trace(const ConvexShape& shape, Angle alpha, Point2 ref, std::size_t n_directions,
                               const RayBisectionOptions& opts) {
  if (!contains(shape, ref, true)) {
    throw Error(ErrorCode::ReferenceNotInterior, "reference point must lie strictly inside the shape");
  }
  if (n_directions == 0) throw Error(ErrorCode::InvalidArgument, "need at least one direction");
  CurveTrace trace;
  trace.shape = shape_id(shape);
  trace.alpha = alpha;
  trace.method = TraceMethod::RayBisection;
  trace.tolerance = opts.tolerance;
  const bool is_sine = std::holds_alternative<SineArch>(shape);
  trace.samples.reserve(n_directions);
  for (std::size_t k = 0; k < n_directions; ++k) {
    const double theta = kTwoPi * static_cast<double>(k) / static_cast<double>(n_directions);
    const auto hit = ray_bisection_point(shape, alpha, ref, unit_vector(theta), opts);
    if (!hit) {
      trace.samples.push_back(CurveSample::gap(theta));
      continue;
    }
    CurveSample s;
    s.param = theta;
    s.point = *hit;
    const auto ap = aperture(shape, *hit);
    s.aperture_residual = std::abs(ap.angle - alpha.value());
    if (ap.tangents) {
      s.left_kind = ap.tangents->left.kind;
      s.right_kind = ap.tangents->right.kind;
      if (is_sine && hit->y < 0.0) s.region = region_from_kinds(s.left_kind, s.right_kind);
    }
    trace.samples.push_back(s);
  }
  return trace;
}

SineRegion classify_sine_region(Point2 p) {
  const ConvexShape arch = SineArch{};
  if (contains(arch, p)) throw Error(ErrorCode::PointInsideShape, "point lies in the sine arch");
  if (!(p.y < 0.0)) throw Error(ErrorCode::AboveVisibilityHalfPlane, "only points with y < 0 are classified");
  const TangentSolution sol = tangents_from(arch, p);
  auto corner_like = [](const TangencyLocus& l) {
    if (l.kind == TangencyKind::Corner) return true;
    return distance(l.point, SineArch::corner_a) <= 1e-12 || distance(l.point, SineArch::corner_b) <= 1e-12;
  };
  const auto kind = [&](const TangencyLocus& l) {
    return corner_like(l) ? TangencyKind::Corner : TangencyKind::SmoothPoint;
  };
  return *region_from_kinds(kind(sol.left), kind(sol.right));
}

Polygon polygon_inscribe(const ConvexShape& shape, std::size_t n) {
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "inscribed polygon needs n >= 3");
  if (!is_bounded(shape)) throw Error(ErrorCode::UnboundedShape, shape_id(shape) + " is unbounded");
  if (const auto* poly = std::get_if<Polygon>(&shape)) return *poly;
  std::vector<Point2> vertices;
  vertices.reserve(n);
  if (std::holds_alternative<SineArch>(shape)) {
    for (std::size_t k = 0; k < n; ++k) {
      vertices.push_back(boundary_point(shape, kPi * static_cast<double>(k) / static_cast<double>(n - 1)));
    }
  } else {
    const double period = boundary_period(shape);
    for (std::size_t k = 0; k < n; ++k) {
      vertices.push_back(boundary_point(shape, period * static_cast<double>(k) / static_cast<double>(n)));
    }
  }
  return Polygon::make(std::move(vertices));
}

}  // namespace isoptic
