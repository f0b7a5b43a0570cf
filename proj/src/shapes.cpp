#include "isoptic/shapes.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "isoptic/roots.hpp"

namespace isoptic {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTieTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// A candidate contact for a supporting line through the query point.
struct Candidate {
  TangencyKind kind;
  Point2 point;
  Vec2 direction;  // from the query point, not necessarily unit
  std::array<Vec2, 2> incident{};  // tangent directions of the edges meeting at a corner
};

TangencyLocus to_locus(const Candidate& c) {
  const Vec2 d = normalized(c.direction);
  return {c.kind, c.point, d, LineSlope::along(d)};
}

bool kind_preferred(TangencyKind a, TangencyKind b) {
  return static_cast<int>(a) < static_cast<int>(b);
}

// Picks the clockwise-most and counter-clockwise-most candidates relative to
// the direction towards an interior point. Ties go to SmoothPoint, and a
// corner whose line runs along one of its incident edges is reported as
// SmoothPoint as well.
TangentSolution select_extremes(Point2 from, Vec2 towards_interior, const std::vector<Candidate>& cands) {
  auto pick = [&](int sign) {
    const Candidate* best = nullptr;
    double best_angle = -kInf;
    for (const auto& c : cands) {
      const double a = sign * signed_angle(towards_interior, c.direction);
      if (best == nullptr || a > best_angle + kTieTolerance) {
        best = &c;
        best_angle = a;
      } else if (a >= best_angle - kTieTolerance) {
        if (kind_preferred(c.kind, best->kind) ||
            (c.kind == best->kind && norm(c.direction) < norm(best->direction))) {
          best = &c;
          best_angle = std::max(best_angle, a);
        }
      }
    }
    TangencyLocus locus = to_locus(*best);
    if (locus.kind == TangencyKind::Corner) {
      for (const Vec2& e : best->incident) {
        if (norm(e) == 0.0) continue;
        if (std::abs(cross(locus.direction, normalized(e))) <= kTieTolerance) {
          locus.kind = TangencyKind::SmoothPoint;
        }
      }
    }
    return locus;
  };
  TangentSolution sol;
  sol.from = from;
  sol.left = pick(+1);
  sol.right = pick(-1);
  return sol;
}

// Geometry shared by the sine arch and function-graph epigraphs.
struct GraphGeom {
  FunctionGraph::Fn f;
  FunctionGraph::Fn df;
  double lo;
  double hi;
  bool capped;  // true: top edge joins the corners (sine); false: vertical rays
};

GraphGeom sine_geom() {
  return {[](double x) { return -std::sin(x); }, [](double x) { return -std::cos(x); }, 0.0, kPi, true};
}

GraphGeom graph_geom(const FunctionGraph& g) { return {g.f, g.df, g.lo, g.hi, false}; }

// Abscissas of curve points whose tangent line passes through p.
std::vector<double> graph_tangent_abscissas(const GraphGeom& g, Point2 p) {
  auto tau = [&](double x) { return g.f(x) + g.df(x) * (p.x - x) - p.y; };
  const double c = std::clamp(p.x, g.lo, g.hi);
  const double tc = tau(c);
  std::vector<double> roots;
  if (tc < 0.0) return roots;
  if (c > g.lo && tau(g.lo) <= 0.0) roots.push_back(detail::bisect_root(tau, g.lo, c));
  if (c < g.hi && tau(g.hi) <= 0.0) roots.push_back(detail::bisect_root(tau, c, g.hi));
  if (roots.empty() && tc == 0.0) roots.push_back(c);
  return roots;
}

std::vector<Candidate> graph_candidates(const GraphGeom& g, Point2 p) {
  std::vector<Candidate> cands;
  const double c = std::clamp(p.x, g.lo, g.hi);
  for (double x : graph_tangent_abscissas(g, p)) {
    const Point2 q{x, g.f(x)};
    const Vec2 along{1.0, g.df(x)};
    cands.push_back({TangencyKind::SmoothPoint, q, x < c ? -along : along, {}});
  }
  const Vec2 cap = g.capped ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  const Point2 left = g.capped ? SineArch::corner_a : Point2{g.lo, g.f(g.lo)};
  const Point2 right = g.capped ? SineArch::corner_b : Point2{g.hi, g.f(g.hi)};
  cands.push_back({TangencyKind::Corner, left, left - p, {Vec2{1.0, g.df(g.lo)}, cap}});
  cands.push_back({TangencyKind::Corner, right, right - p, {Vec2{1.0, g.df(g.hi)}, cap}});
  if (!g.capped) {
    const Point2 base = std::abs(p.x - g.lo) <= std::abs(p.x - g.hi) ? left : right;
    cands.push_back({TangencyKind::AtInfinity, base, Vec2{0.0, 1.0}, {}});
  }
  return cands;
}

// max over x in [lo, hi] of x*u.x + f(x)*u.y for u.y < 0 (concave objective).
double graph_support_below(const GraphGeom& g, Vec2 u) {
  const double target = -u.x / u.y;  // stationary point: f'(x) = target
  double x;
  if (target <= g.df(g.lo)) {
    x = g.lo;
  } else if (target >= g.df(g.hi)) {
    x = g.hi;
  } else {
    x = detail::bisect_root([&](double s) { return g.df(s) - target; }, g.lo, g.hi);
  }
  return x * u.x + g.f(x) * u.y;
}

void require_unit(Vec2 u) {
  if (!u.finite() || std::abs(norm(u) - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "support direction must be a unit vector");
  }
}

}  // namespace

const char* to_string(TangencyKind kind) {
  switch (kind) {
    case TangencyKind::SmoothPoint: return "smooth";
    case TangencyKind::Corner: return "corner";
    case TangencyKind::AtInfinity: return "infinity";
  }
  return "unknown";
}

Wedge Wedge::make(Point2 apex, double theta, Vec2 bisector) {
  if (!apex.finite() || !bisector.finite() || norm(bisector) == 0.0) {
    throw Error(ErrorCode::InvalidShape, "wedge apex and bisector must be finite, bisector non-zero");
  }
  if (!(theta > 0.0 && theta < kPi)) {
    throw Error(ErrorCode::InvalidShape, "wedge angle must lie in (0, pi)");
  }
  return {apex, Angle::radians(theta), normalized(bisector)};
}

Ellipse Ellipse::make(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(b > 0.0) || a < b) {
    throw Error(ErrorCode::InvalidShape, "ellipse needs a >= b > 0");
  }
  return {a, b};
}

Polygon Polygon::make(std::vector<Point2> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw Error(ErrorCode::InvalidShape, "polygon needs at least 3 vertices");
  for (const auto& v : vertices) {
    if (!v.finite()) throw Error(ErrorCode::InvalidShape, "polygon vertex not finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p0 = vertices[i];
    const Point2& p1 = vertices[(i + 1) % n];
    const Point2& p2 = vertices[(i + 2) % n];
    if (!(cross(p1 - p0, p2 - p1) > 0.0)) {
      throw Error(ErrorCode::InvalidShape, "polygon must be strictly convex and counter-clockwise");
    }
  }
  // Consecutive left turns can still wind more than once.
  double turning = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    turning += signed_angle(vertices[(i + 1) % n] - vertices[i], vertices[(i + 2) % n] - vertices[(i + 1) % n]);
  }
  if (std::abs(turning - kTwoPi) > 1e-6) {
    throw Error(ErrorCode::InvalidShape, "polygon winds more than once");
  }
  return Polygon{std::move(vertices)};
}

FunctionGraph FunctionGraph::make(std::string name, Fn f, Fn df, Fn d2f, double lo, double hi) {
  if (!f || !df || !d2f) throw Error(ErrorCode::InvalidShape, "function graph needs f, f', f''");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    throw Error(ErrorCode::InvalidShape, "function graph needs a finite interval lo < hi");
  }
  constexpr int kCells = 1000;
  for (int i = 0; i < kCells; ++i) {
    const double x = lo + (hi - lo) * (i + 0.5) / kCells;
    if (!(d2f(x) > 0.0)) {
      throw Error(ErrorCode::InvalidShape, name + " is not strictly convex near x = " + std::to_string(x));
    }
  }
  return FunctionGraph{std::move(name), std::move(f), std::move(df), std::move(d2f), lo, hi};
}

FunctionGraph FunctionGraph::catalog(const std::string& name, double lo, double hi) {
  if (name == "exp") {
    auto e = [](double x) { return std::exp(x); };
    return make(name, e, e, e, lo, hi);
  }
  if (name == "cosh") {
    return make(name, [](double x) { return std::cosh(x); }, [](double x) { return std::sinh(x); },
                [](double x) { return std::cosh(x); }, lo, hi);
  }
  if (name == "x2") {
    return make(name, [](double x) { return x * x; }, [](double x) { return 2.0 * x; },
                [](double) { return 2.0; }, lo, hi);
  }
  if (name == "x4") {
    return make(name, [](double x) { return x * x * x * x; }, [](double x) { return 4.0 * x * x * x; },
                [](double x) { return 12.0 * x * x; }, lo, hi);
  }
  if (name == "neg_sin") {
    return make(name, [](double x) { return -std::sin(x); }, [](double x) { return -std::cos(x); },
                [](double x) { return std::sin(x); }, lo, hi);
  }
  throw Error(ErrorCode::InvalidShape, "unknown catalog function '" + name + "'");
}

std::vector<std::string> FunctionGraph::catalog_names() { return {"exp", "cosh", "x2", "x4", "neg_sin"}; }

std::string shape_id(const ConvexShape& shape) {
  return std::visit(Overloaded{
                        [](const Wedge&) -> std::string { return "wedge"; },
                        [](const ParabolaRegion&) -> std::string { return "parabola"; },
                        [](const Ellipse&) -> std::string { return "ellipse"; },
                        [](const SineArch&) -> std::string { return "sine"; },
                        [](const Polygon&) -> std::string { return "polygon"; },
                        [](const FunctionGraph& g) -> std::string { return "function:" + g.name; },
                    },
                    shape);
}

bool is_bounded(const ConvexShape& shape) {
  return std::holds_alternative<Ellipse>(shape) || std::holds_alternative<SineArch>(shape) ||
         std::holds_alternative<Polygon>(shape);
}

bool contains(const ConvexShape& shape, Point2 p, bool strict) {
  auto le = [strict](double a, double b) { return strict ? a < b : a <= b; };
  // Computed boundary points of the ellipse, polygon edges and wedge edges
  // miss the exact boundary by a few ulps; `band` absorbs that rounding, so
  // they count as members of the closed set but never as interior points.
  constexpr double kBand = 8.0 * std::numeric_limits<double>::epsilon();
  auto within = [strict](double value, double band) { return strict ? value > band : value >= -band; };
  return std::visit(
      Overloaded{
          [&](const Wedge& w) {
            const Vec2 d = p - w.apex;
            if (strict && d == Vec2{}) return false;
            const double band = kBand * (norm(d) + norm(w.apex));
            return within(cross(w.cw_edge(), d), band) && within(cross(d, w.ccw_edge()), band);
          },
          [&](const ParabolaRegion&) { return le(p.x * p.x, p.y); },
          [&](const Ellipse& e) {
            const double u = p.x / e.a;
            const double v = p.y / e.b;
            return within(1.0 - (u * u + v * v), kBand);
          },
          [&](const SineArch&) {
            return le(0.0, p.x) && le(p.x, kPi) && le(-std::sin(p.x), p.y) && le(p.y, 0.0);
          },
          [&](const Polygon& poly) {
            for (std::size_t i = 0; i < poly.size(); ++i) {
              const Point2& v = poly.vertex(i);
              const Vec2 e = poly.vertex(i + 1) - v;
              const double band = kBand * norm(e) * (norm(p) + norm(v));
              if (!within(cross(e, p - v), band)) return false;
            }
            return true;
          },
          [&](const FunctionGraph& g) { return le(g.lo, p.x) && le(p.x, g.hi) && le(g.f(p.x), p.y); },
      },
      shape);
}

Point2 interior_point(const ConvexShape& shape) {
  return std::visit(Overloaded{
                        [](const Wedge& w) { return w.apex + w.bisector; },
                        [](const ParabolaRegion&) { return Point2{0.0, 1.0}; },
                        [](const Ellipse&) { return Point2{0.0, 0.0}; },
                        [](const SineArch&) { return Point2{kPi / 2, -0.5}; },
                        [](const Polygon& poly) {
                          Point2 c;
                          for (const auto& v : poly.vertices) c = c + v;
                          return (1.0 / static_cast<double>(poly.size())) * c;
                        },
                        [](const FunctionGraph& g) {
                          const double m = 0.5 * (g.lo + g.hi);
                          return Point2{m, g.f(m) + 1.0};
                        },
                    },
                    shape);
}

double support(const ConvexShape& shape, Vec2 u) {
  require_unit(u);
  return std::visit(
      Overloaded{
          [&](const Wedge& w) {
            if (dot(w.ccw_edge(), u) > 0.0 || dot(w.cw_edge(), u) > 0.0) return kInf;
            return dot(w.apex, u);
          },
          [&](const ParabolaRegion&) { return u.y < 0.0 ? -u.x * u.x / (4.0 * u.y) : kInf; },
          [&](const Ellipse& e) { return std::hypot(e.a * u.x, e.b * u.y); },
          [&](const SineArch&) {
            if (u.y >= 0.0) return std::max(0.0, kPi * u.x);
            return graph_support_below(sine_geom(), u);
          },
          [&](const Polygon& poly) {
            double best = -kInf;
            for (const auto& v : poly.vertices) best = std::max(best, dot(v, u));
            return best;
          },
          [&](const FunctionGraph& g) {
            if (u.y > 0.0) return kInf;
            if (u.y == 0.0) return std::max(g.lo * u.x, g.hi * u.x);
            return graph_support_below(graph_geom(g), u);
          },
      },
      shape);
}

TangentSolution tangents_from(const ConvexShape& shape, Point2 p) {
  if (!p.finite()) throw Error(ErrorCode::InvalidArgument, "query point must be finite");
  if (contains(shape, p)) throw Error(ErrorCode::PointInsideShape, "no tangent pair from a point of the shape");

  return std::visit(
      Overloaded{
          [&](const ParabolaRegion&) {
            // Tangency abscissas x1 +- sqrt(x1^2 - y1); slopes are twice those.
            const double s = std::sqrt(p.x * p.x - p.y);
            const double xr = p.x + s;
            const double xl = p.x - s;
            TangentSolution sol;
            sol.from = p;
            const Point2 qr{xr, xr * xr};
            const Point2 ql{xl, xl * xl};
            sol.right = {TangencyKind::SmoothPoint, qr, normalized(Vec2{1.0, 2.0 * xr}), LineSlope::of(2.0 * xr)};
            sol.left = {TangencyKind::SmoothPoint, ql, normalized(Vec2{-1.0, -2.0 * xl}), LineSlope::of(2.0 * xl)};
            return sol;
          },
          [&](const Ellipse& e) {
            // Map to the unit circle, where the tangency angles are beta +- acos(1/rho).
            const Point2 q{p.x / e.a, p.y / e.b};
            const double beta = std::atan2(q.y, q.x);
            const double delta = std::acos(std::min(1.0, 1.0 / norm(q)));
            const Point2 t1{e.a * std::cos(beta + delta), e.b * std::sin(beta + delta)};
            const Point2 t2{e.a * std::cos(beta - delta), e.b * std::sin(beta - delta)};
            // Directions from the curve tangents, which stay well defined
            // when p approaches the boundary.
            const Vec2 d1{-e.a * std::sin(beta + delta), e.b * std::cos(beta + delta)};
            const Vec2 d2{e.a * std::sin(beta - delta), -e.b * std::cos(beta - delta)};
            std::vector<Candidate> cands{{TangencyKind::SmoothPoint, t1, d1, {}},
                                         {TangencyKind::SmoothPoint, t2, d2, {}}};
            return select_extremes(p, -p, cands);
          },
          [&](const Wedge& w) {
            std::vector<Candidate> cands{
                {TangencyKind::Corner, w.apex, w.apex - p, {w.ccw_edge(), w.cw_edge()}},
                {TangencyKind::AtInfinity, w.apex, w.ccw_edge(), {}},
                {TangencyKind::AtInfinity, w.apex, w.cw_edge(), {}},
            };
            return select_extremes(p, interior_point(shape) - p, cands);
          },
          [&](const SineArch&) {
            return select_extremes(p, interior_point(shape) - p, graph_candidates(sine_geom(), p));
          },
          [&](const FunctionGraph& g) {
            return select_extremes(p, interior_point(shape) - p, graph_candidates(graph_geom(g), p));
          },
          [&](const Polygon& poly) {
            std::vector<Candidate> cands;
            cands.reserve(poly.size());
            const std::size_t n = poly.size();
            for (std::size_t i = 0; i < n; ++i) {
              const Point2& v = poly.vertex(i);
              cands.push_back({TangencyKind::Corner, v, v - p,
                               {v - poly.vertex(i + n - 1), poly.vertex(i + 1) - v}});
            }
            return select_extremes(p, interior_point(shape) - p, cands);
          },
      },
      shape);
}

Point2 boundary_point(const ConvexShape& shape, double t) {
  if (!std::isfinite(t)) throw Error(ErrorCode::ParameterOutOfRange, "boundary parameter must be finite");
  auto check_period = [t](double period) {
    if (t < 0.0 || t >= period) {
      throw Error(ErrorCode::ParameterOutOfRange,
                  "boundary parameter " + std::to_string(t) + " outside [0, " + std::to_string(period) + ")");
    }
  };
  return std::visit(Overloaded{
                        [&](const Wedge& w) { return t >= 0.0 ? w.apex + t * w.ccw_edge() : w.apex - t * w.cw_edge(); },
                        [&](const ParabolaRegion&) { return Point2{t, t * t}; },
                        [&](const Ellipse& e) {
                          check_period(kTwoPi);
                          return Point2{e.a * std::cos(t), e.b * std::sin(t)};
                        },
                        [&](const SineArch&) {
                          check_period(kTwoPi);
                          if (t <= kPi) return Point2{t, -std::sin(t)};
                          return Point2{kTwoPi - t, 0.0};
                        },
                        [&](const Polygon& poly) {
                          check_period(static_cast<double>(poly.size()));
                          const auto i = static_cast<std::size_t>(std::floor(t));
                          const double frac = t - static_cast<double>(i);
                          const Point2& v0 = poly.vertex(i);
                          return v0 + frac * (poly.vertex(i + 1) - v0);
                        },
                        [&](const FunctionGraph& g) {
                          if (t < g.lo) return Point2{g.lo, g.f(g.lo) + (g.lo - t)};
                          if (t > g.hi) return Point2{g.hi, g.f(g.hi) + (t - g.hi)};
                          return g.point(t);
                        },
                    },
                    shape);
}

double boundary_period(const ConvexShape& shape) {
  if (const auto* poly = std::get_if<Polygon>(&shape)) return static_cast<double>(poly->size());
  if (is_bounded(shape)) return kTwoPi;
  throw Error(ErrorCode::UnboundedShape, shape_id(shape) + " has no closed boundary parameterization");
}

}  // namespace isoptic
