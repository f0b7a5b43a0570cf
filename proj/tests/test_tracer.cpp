#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "isoptic/analytic.hpp"
#include "isoptic/aperture.hpp"
#include "isoptic/error.hpp"
#include "isoptic/tracer.hpp"

using namespace isoptic;

namespace {

Angle A(double r) { return Angle::radians(r); }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an isoptic::Error";
  return ErrorCode::InvalidArgument;
}

struct Circle {
  Point2 center;
  double radius;
};

// Algebraic least-squares circle: x^2 + y^2 + D x + E y + F = 0.
Circle fit_circle(const std::vector<Point2>& pts) {
  Eigen::MatrixXd m(pts.size(), 3);
  Eigen::VectorXd rhs(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m(i, 0) = pts[i].x;
    m(i, 1) = pts[i].y;
    m(i, 2) = 1.0;
    rhs(i) = -(pts[i].x * pts[i].x + pts[i].y * pts[i].y);
  }
  const Eigen::Vector3d s = m.colPivHouseholderQr().solve(rhs);
  const Point2 c{-s(0) / 2, -s(1) / 2};
  return {c, std::sqrt(c.x * c.x + c.y * c.y - s(2))};
}

double worst_fit_deviation(const std::vector<Point2>& pts) {
  const Circle c = fit_circle(pts);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs(distance(p, c.center) - c.radius));
  return worst / c.radius;
}

const FunctionGraph kParabolaGraph = FunctionGraph::catalog("x2", -10.0, 10.0);

}  // namespace

// --- associated tangent --------------------------------------------------

TEST(AssociatedTangent, LinearDerivativeOneStep) {
  const auto p = NewtonProblem::make(kParabolaGraph, 1.0, A(kPi / 4));
  EXPECT_NEAR(p.target_slope, 1.0 / 3.0, 1e-15);
  // One Newton step lands on the root; the second iteration only confirms it.
  for (double x0 : {-9.0, 0.0, 4.0, 10.0}) {
    EXPECT_NEAR(associated_tangent(p, x0, 1e-12, 2), 1.0 / 6.0, 1e-15);
  }
}

TEST(AssociatedTangent, QuarticMatchesBisection) {
  const auto g = FunctionGraph::catalog("x4", 0.1, 2.0);
  const auto p = NewtonProblem::with_target_slope(g, 0.5);
  const double x = associated_tangent(p, 1.5, 1e-13);
  // Independent: bisection on 4x^3 - 0.5.
  double lo = 0.1;
  double hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (4 * mid * mid * mid - 0.5 < 0 ? lo : hi) = mid;
  }
  EXPECT_NEAR(x, 0.5, 1e-12);
  EXPECT_NEAR(x, lo, 1e-12);
}

TEST(AssociatedTangent, SlopeOutsideRangeHasNoRoot) {
  const auto g = FunctionGraph::catalog("neg_sin", 0.0, kPi);
  const auto p = NewtonProblem::make(g, kPi / 4, A(kPi / 3));
  EXPECT_TRUE(p.target_slope < g.df(0.0) || p.target_slope > g.df(kPi));
  EXPECT_EQ(code_of([&] { associated_tangent(p, 1.0, 1e-12); }), ErrorCode::NoRootInDomain);
}

TEST(AssociatedTangent, SingularSlopeFormulaUsesAngles) {
  // 1 + K f'(x) = 0 at f'(x) = -1/K: the associated tangent is vertical.
  const double k = std::tan(1.0);
  const double x = -0.5 / k;
  const auto p = NewtonProblem::make(kParabolaGraph, x, A(1.0));
  EXPECT_TRUE(p.vertical);
  EXPECT_EQ(code_of([&] { associated_tangent(p, 0.0, 1e-12); }), ErrorCode::NoRootInDomain);
  // At a right angle the quotient is unusable as well.
  const auto r = NewtonProblem::make(kParabolaGraph, 1.0, A(kPi / 2));
  EXPECT_NEAR(r.target_slope, -0.5, 1e-12);
  EXPECT_NEAR(associated_tangent(r, 0.0, 1e-13), -0.25, 1e-13);
}

TEST(AssociatedTangent, NeverLeavesDomain) {
  std::mt19937_64 rng(4);
  for (const auto& g : {FunctionGraph::catalog("exp", -3, 3), FunctionGraph::catalog("cosh", -2, 2),
                        FunctionGraph::catalog("x4", 0.05, 3)}) {
    std::uniform_real_distribution<double> ux(g.lo, g.hi);
    std::uniform_real_distribution<double> um(g.df(g.lo), g.df(g.hi));
    for (int i = 0; i < 2000; ++i) {
      const auto p = NewtonProblem::with_target_slope(g, um(rng));
      const double x = associated_tangent(p, ux(rng), 1e-10 * (1 + std::abs(p.target_slope)));
      EXPECT_GE(x, g.lo);
      EXPECT_LE(x, g.hi);
      EXPECT_LE(std::abs(g.df(x) - p.target_slope), 1e-10 * (1 + std::abs(p.target_slope)));
    }
  }
}

TEST(AssociatedTangent, RejectsBadArguments) {
  EXPECT_EQ(code_of([] { NewtonProblem::make(kParabolaGraph, 11.0, A(1.0)); }), ErrorCode::ParameterOutOfRange);
  const auto p = NewtonProblem::make(kParabolaGraph, 1.0, A(1.0));
  EXPECT_EQ(code_of([&] { associated_tangent(p, 0.0, 0.0); }), ErrorCode::InvalidArgument);
}

// --- tangent-pair tracing ------------------------------------------------

TEST(TangentPair, ParabolaGraphPointOnClosedForm) {
  const auto t = tangent_pair_trace(kParabolaGraph, A(kPi / 4), {-1.0});
  ASSERT_EQ(t.samples.size(), 1u);
  ASSERT_FALSE(t.samples[0].is_gap());
  const Point2 p = *t.samples[0].point;
  EXPECT_NEAR(p.y, parabola_curve_y(A(kPi / 4), p.x), 1e-9);
  EXPECT_EQ(t.samples[0].left_kind, TangencyKind::SmoothPoint);
  EXPECT_EQ(t.samples[0].right_kind, TangencyKind::SmoothPoint);
}

TEST(TangentPair, VertexTangentCannotBoundAcuteCone) {
  // The horizontal tangent at the vertex only bounds cones wider than pi/2.
  const auto t = tangent_pair_trace(kParabolaGraph, A(kPi / 4), {0.0});
  EXPECT_TRUE(t.samples[0].is_gap());
  const auto wide = tangent_pair_trace(kParabolaGraph, A(2.0), {0.0});
  ASSERT_FALSE(wide.samples[0].is_gap());
  EXPECT_NEAR(wide.samples[0].point->y, parabola_curve_y(A(2.0), wide.samples[0].point->x), 1e-9);
}

TEST(TangentPair, SineRightAngleResiduals) {
  std::vector<double> grid;
  for (int i = 1; i <= 100; ++i) grid.push_back(kPi / 2 * i / 100);
  const auto t = tangent_pair_trace(SineArch{}, A(kPi / 2), grid);
  EXPECT_LE(t.max_residual(), 1e-8);
  // The arch turns its tangent by pi/2 in total, so at a right angle the
  // right line can no longer touch the arc: it pivots at B.
  int region_four = 0;
  for (const auto& s : t.samples) {
    if (s.is_gap()) continue;
    EXPECT_EQ(s.left_kind, TangencyKind::SmoothPoint);
    EXPECT_EQ(s.right_kind, TangencyKind::Corner);
    if (s.region == SineRegion::IV) ++region_four;
  }
  EXPECT_GT(region_four, 90);
  // Just above a right angle both lines touch the arc near the middle.
  const auto wider = tangent_pair_trace(SineArch{}, A(1.8), default_xi_grid(SineArch{}, 512));
  int region_one = 0;
  for (const auto& s : wider.samples) {
    if (!s.is_gap() && s.region == SineRegion::I) ++region_one;
  }
  EXPECT_GT(region_one, 10);
}

TEST(TangentPair, SineRegionTwoIsInscribedArc) {
  const auto arc = inscribed_arc(SineArch::corner_a, SineArch::corner_b, A(kPi / 3), ArcSide::Below);
  const auto t = tangent_pair_trace(SineArch{}, A(kPi / 3), default_xi_grid(SineArch{}, 512));
  int n = 0;
  for (const auto& s : t.samples) {
    if (s.is_gap() || s.region != SineRegion::II) continue;
    ++n;
    EXPECT_EQ(s.left_kind, TangencyKind::Corner);
    EXPECT_EQ(s.right_kind, TangencyKind::Corner);
    EXPECT_NEAR(distance(*s.point, arc.center), arc.radius, 1e-8);
  }
  EXPECT_GT(n, 20);
}

TEST(TangentPair, CornerConfigurationTieIsCorner) {
  const auto t = tangent_pair_trace(SineArch{}, A(kPi / 3), {0.0});
  ASSERT_FALSE(t.samples[0].is_gap());
  EXPECT_EQ(t.samples[0].left_kind, TangencyKind::Corner);
  EXPECT_EQ(classify_sine_region(*t.samples[0].point), SineRegion::II);
}

TEST(TangentPair, GridValidation) {
  EXPECT_EQ(code_of([] { tangent_pair_trace(SineArch{}, A(1.0), {1.0, 0.5}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { tangent_pair_trace(SineArch{}, A(1.0), {4.0}); }), ErrorCode::ParameterOutOfRange);
  EXPECT_EQ(code_of([] { tangent_pair_trace(Ellipse::make(2, 1), A(1.0), {0.0}); }), ErrorCode::InvalidArgument);
}

TEST(TangentPair, RegionsFollowTheSweepOrder) {
  for (double a : {0.2, kPi / 3, 1.2, kPi / 2, 1.93, 2.6}) {
    const auto t = tangent_pair_trace(SineArch{}, A(a), default_xi_grid(SineArch{}, 512));
    int stage = 0;
    std::optional<SineRegion> middle;
    for (const auto& s : t.samples) {
      if (s.is_gap() || s.point->y >= 0.0) continue;
      const SineRegion r = *s.region;
      const int st = r == SineRegion::III ? 0 : r == SineRegion::IV ? 2 : 1;
      EXPECT_GE(st, stage) << "alpha " << a;
      stage = st;
      if (st == 1) {
        if (middle) EXPECT_EQ(*middle, r) << "alpha " << a;
        middle = r;
      }
    }
    EXPECT_EQ(stage, 2);
  }
}

TEST(TangentPair, SineFamilyResiduals) {
  // Obtuse angles drive the last lines through corner B from both sides.
  for (int k = 1; k <= 10; ++k) {
    const auto t = tangent_pair_trace(SineArch{}, A(kPi / (1 + 0.1 * k)), default_xi_grid(SineArch{}, 512));
    EXPECT_LE(t.max_residual(), 1e-8) << k;
    EXPECT_GT(t.point_count(), 100u) << k;
  }
}

TEST(TangentPair, FunctionGraphsStayWithinTolerance) {
  for (const auto& g : {FunctionGraph::catalog("exp", -1, 1.5), FunctionGraph::catalog("cosh", -1, 1),
                        FunctionGraph::catalog("x4", -1, 1)}) {
    for (double a : {0.5, 1.2, 2.0, 2.8}) {
      const auto t = tangent_pair_trace(g, A(a), default_xi_grid(g, 256));
      EXPECT_LE(t.max_residual(), 1e-8) << g.name << " " << a;
      // Narrow angles leave most left lines without a partner before the
      // vertical right edge, so only a short stretch of the grid survives.
      EXPECT_GT(t.point_count(), a < 1.0 ? 20u : 50u) << g.name << " " << a;
    }
  }
}

// --- ray bisection -------------------------------------------------------

TEST(RayBisection, DirectorCircle) {
  const auto t = ray_bisection_trace(Ellipse::make(2, 1), A(kPi / 2), {0, 0}, 360);
  ASSERT_EQ(t.point_count(), 360u);
  for (const auto& p : t.points()) EXPECT_NEAR(norm(p), std::sqrt(5.0), 1e-9);
}

TEST(RayBisection, CircleRadius) {
  for (double a : {0.3, 1.0, 2.0, 3.0}) {
    const auto t = ray_bisection_trace(Ellipse::make(1, 1), A(a), {0, 0}, 90);
    for (const auto& p : t.points()) EXPECT_NEAR(norm(p), 1.0 / std::sin(a / 2), 1e-9);
  }
}

TEST(RayBisection, ParabolaLowerHalfAndGaps) {
  const auto t = ray_bisection_trace(ParabolaRegion{}, A(kPi / 3), {0, 1}, 360);
  int lower = 0;
  for (const auto& s : t.samples) {
    if (s.param > 0.0 && s.param < kPi) {
      EXPECT_TRUE(s.is_gap()) << s.param;
      continue;
    }
    // Rays flatter than the asymptotes y = +-x/sqrt(3) never meet the curve.
    const double below = std::min(s.param - kPi, kTwoPi - s.param);
    if (s.is_gap()) {
      EXPECT_LT(below, kPi / 6 + 0.02) << s.param;
      continue;
    }
    ++lower;
    EXPECT_NEAR(s.point->y, parabola_curve_y(A(kPi / 3), s.point->x), 1e-8);
  }
  EXPECT_GE(lower, 115);
}

TEST(RayBisection, ReferenceMustBeInterior) {
  EXPECT_EQ(code_of([] { ray_bisection_trace(Ellipse::make(2, 1), A(1.0), {5, 0}, 10); }),
            ErrorCode::ReferenceNotInterior);
  EXPECT_EQ(code_of([] { ray_bisection_trace(Ellipse::make(2, 1), A(1.0), {2, 0}, 10); }),
            ErrorCode::ReferenceNotInterior);
}

TEST(RayBisection, ResidualGuarantee) {
  const std::vector<std::pair<ConvexShape, Point2>> cases = {
      {Ellipse::make(2, 1), {0, 0}},
      {Ellipse::make(1, 0.3), {0.1, 0}},
      {SineArch{}, {kPi / 2, -0.5}},
      {Polygon::make({{1, 0}, {0.5, 1}, {-0.8, 0.9}, {-1, -0.2}, {0.2, -1}}), {0, 0}},
      {ParabolaRegion{}, {0, 1}},
      {Wedge::make({0, 0}, 1.0, {0, 1}), {0, 1}},
      {FunctionGraph::catalog("cosh", -1, 1), {0, 2}},
  };
  for (const auto& [shape, ref] : cases) {
    for (double a : {0.2, 0.9, kPi / 2, 2.2, 3.0}) {
      const auto t = ray_bisection_trace(shape, A(a), ref, 180);
      EXPECT_EQ(t.samples.size(), 180u);
      for (const auto& s : t.samples) {
        if (s.is_gap()) continue;
        EXPECT_LE(s.aperture_residual, 1e-8) << shape_id(shape) << " alpha " << a << " param " << s.param;
      }
      if (is_bounded(shape) && !std::holds_alternative<Polygon>(shape)) {
        EXPECT_EQ(t.point_count(), 180u) << shape_id(shape);
      }
    }
  }
}

TEST(RayBisection, SineMirrorSymmetry) {
  for (double a : {0.5, 1.5, 2.5}) {
    const auto t = ray_bisection_trace(SineArch{}, A(a), {kPi / 2, -0.5}, 720);
    for (int k = 0; k < 720; ++k) {
      const auto& s = t.samples[k];
      const auto& m = t.samples[(720 + 360 - k) % 720];
      ASSERT_FALSE(s.is_gap());
      EXPECT_NEAR(s.point->x, kPi - m.point->x, 1e-8);
      EXPECT_NEAR(s.point->y, m.point->y, 1e-8);
    }
  }
}

TEST(RayBisection, EllipseFourFoldSymmetry) {
  for (double a : {0.4, 1.5, 2.7}) {
    const auto t = ray_bisection_trace(Ellipse::make(2, 0.8), A(a), {0, 0}, 720);
    for (int k = 0; k < 720; ++k) {
      const Point2 p = *t.samples[k].point;
      const Point2 q = *t.samples[(720 - k) % 720].point;
      const Point2 r = *t.samples[(720 + 360 - k) % 720].point;
      EXPECT_NEAR(p.x, q.x, 1e-8);
      EXPECT_NEAR(p.y, -q.y, 1e-8);
      EXPECT_NEAR(p.x, -r.x, 1e-8);
      EXPECT_NEAR(p.y, r.y, 1e-8);
    }
  }
}

TEST(RayBisection, ThinEllipseApproachesCircularArcs) {
  const auto t = ray_bisection_trace(Ellipse::make(1, 0.05), A(0.05), {0, 0}, 720);
  std::vector<Point2> upper;
  std::vector<Point2> lower;
  for (const auto& p : t.points()) (p.y >= 0 ? upper : lower).push_back(p);
  EXPECT_LE(worst_fit_deviation(upper), 0.01);
  EXPECT_LE(worst_fit_deviation(lower), 0.01);
}

// Far away the aperture is width / distance, so for small alpha the curve
// tends to r = w(theta) / alpha. For the arch (1 high, pi wide) this is not
// a pair of circles: the half-curve fit stays near 6% however small alpha is.
TEST(RayBisection, SmallAngleSineFollowsWidth) {
  const Point2 ref{kPi / 2, -0.5};
  const ConvexShape sine = SineArch{};
  std::vector<double> fits;
  for (double a : {0.05, 0.005}) {
    const auto t = ray_bisection_trace(sine, A(a), ref, 720);
    for (const auto& s : t.samples) {
      ASSERT_FALSE(s.is_gap());
      const Vec2 n = unit_vector(s.param + kPi / 2);
      const double w = support(sine, n) + support(sine, -n);
      EXPECT_NEAR(distance(*s.point, ref) * a / w, 1.0, a < 0.01 ? 1e-2 : 5e-2) << a << " " << s.param;
    }
    std::vector<Point2> upper;
    for (const auto& p : t.points()) {
      if (p.y >= 0) upper.push_back(p);
    }
    fits.push_back(worst_fit_deviation(upper));
  }
  EXPECT_NEAR(fits[0], fits[1], 5e-3);
  EXPECT_GT(fits[1], 0.03);
}

// --- methods agree ---------------------------------------------------------

TEST(MethodAgreement, ParabolaThreeWays) {
  const ConvexShape par = ParabolaRegion{};
  for (double a : {kPi / 4, kPi / 3, kPi / 2.5, kPi / 1.5}) {
    const auto tp = tangent_pair_trace(kParabolaGraph, A(a), default_xi_grid(kParabolaGraph, 200));
    int matched = 0;
    for (const auto& s : tp.samples) {
      if (s.is_gap() || s.left_kind != TangencyKind::SmoothPoint || s.right_kind != TangencyKind::SmoothPoint) continue;
      const Point2 p = *s.point;
      EXPECT_NEAR(p.y, parabola_curve_y(A(a), p.x), 1e-7);
      const auto hit = ray_bisection_point(par, A(a), {0, 1}, p - Point2{0, 1});
      ASSERT_TRUE(hit);
      EXPECT_NEAR(distance(*hit, p), 0.0, 1e-7);
      ++matched;
    }
    EXPECT_GT(matched, 50) << a;
  }
}

// --- sine regions and inscribed polygons -----------------------------------

TEST(SineRegion, Examples) {
  EXPECT_EQ(classify_sine_region({kPi / 2, -50}), SineRegion::II);
  EXPECT_EQ(classify_sine_region({kPi / 2, -1.2}), SineRegion::I);
  EXPECT_EQ(classify_sine_region({0.1, -3}), SineRegion::III);
  EXPECT_EQ(classify_sine_region({kPi - 0.1, -3}), SineRegion::IV);
  EXPECT_EQ(code_of([] { classify_sine_region({1, -0.1}); }), ErrorCode::PointInsideShape);
  EXPECT_EQ(code_of([] { classify_sine_region({1, 0.5}); }), ErrorCode::AboveVisibilityHalfPlane);
}

TEST(SineRegion, FarBelowAngleIsChordAngle) {
  EXPECT_NEAR(aperture_angle(SineArch{}, {kPi / 2, -50}), 2 * std::atan((kPi / 2) / 50), 1e-12);
}

TEST(PolygonInscribe, Examples) {
  const auto sq = polygon_inscribe(Ellipse::make(1, 1), 4);
  ASSERT_EQ(sq.size(), 4u);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(sq.vertices[k].x, std::cos(kPi / 2 * k), 1e-15);
    EXPECT_NEAR(sq.vertices[k].y, std::sin(kPi / 2 * k), 1e-15);
  }
  const auto p64 = polygon_inscribe(Ellipse::make(2, 1), 64);
  for (const auto& v : p64.vertices) EXPECT_NEAR(v.x * v.x / 4 + v.y * v.y, 1.0, 1e-15);

  const auto s32 = polygon_inscribe(SineArch{}, 32);
  ASSERT_EQ(s32.size(), 32u);
  EXPECT_EQ(s32.vertices.front(), SineArch::corner_a);
  EXPECT_NEAR(s32.vertices.back().x, kPi, 1e-15);
  for (std::size_t i = 0; i < s32.size(); ++i) {
    EXPECT_GT(cross(s32.vertex(i + 1) - s32.vertex(i), s32.vertex(i + 2) - s32.vertex(i + 1)), 0.0);
  }
  EXPECT_EQ(polygon_inscribe(Ellipse::make(2, 1), 3).size(), 3u);
}

TEST(PolygonInscribe, Errors) {
  EXPECT_EQ(code_of([] { polygon_inscribe(ParabolaRegion{}, 8); }), ErrorCode::UnboundedShape);
  EXPECT_EQ(code_of([] { polygon_inscribe(Ellipse::make(1, 1), 2); }), ErrorCode::InvalidArgument);
}
