#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "isoptic/aperture.hpp"
#include "isoptic/error.hpp"
#include "test_support.hpp"

using namespace isoptic;
using testsupport::random_exterior;

TEST(Aperture, ParabolaDirectrixIsRightAngle) {
  EXPECT_NEAR(aperture_angle(ParabolaRegion{}, {0, -0.25}), kPi / 2, 1e-15);
  EXPECT_NEAR(aperture_angle(ParabolaRegion{}, {3.7, -0.25}), kPi / 2, 1e-14);
}

TEST(Aperture, ParabolaFromBelowVertex) {
  // Slopes +-2 bound the cone {y >= 2|x| - 1}, which opens by 2 atan(1/2).
  const double expected = 2.0 * std::atan(0.5);
  EXPECT_NEAR(expected, std::atan(4.0 / 3.0), 1e-15);
  EXPECT_NEAR(aperture_angle(ParabolaRegion{}, {0, -1}), expected, 1e-15);
  EXPECT_NEAR(aperture_oracle(ParabolaRegion{}, {0, -1}, 100000), expected, 1e-2);
  EXPECT_NEAR(testsupport::aperture_via_support(ParabolaRegion{}, {0, -1}), expected, 1e-4);
}

TEST(Aperture, EllipseDirectorCircle) {
  const ConvexShape e = Ellipse::make(2, 1);
  for (int k = 0; k < 100; ++k) {
    const double t = kTwoPi * k / 100;
    EXPECT_NEAR(aperture_angle(e, {std::sqrt(5.0) * std::cos(t), std::sqrt(5.0) * std::sin(t)}), kPi / 2, 1e-12);
  }
}

TEST(Aperture, InsideConvention) {
  const auto r = aperture(SineArch{}, {1, -0.2});
  EXPECT_TRUE(r.inside);
  EXPECT_EQ(r.angle, kPi);
  EXPECT_FALSE(r.tangents);
  const auto b = aperture(Ellipse::make(2, 1), {2, 0});
  EXPECT_TRUE(b.inside);
  const auto o = aperture(Ellipse::make(2, 1), {3, 0});
  EXPECT_FALSE(o.inside);
  EXPECT_GT(o.angle, 0.0);
  EXPECT_LT(o.angle, kPi);
}

TEST(Oracle, Examples) {
  EXPECT_NEAR(aperture_oracle(Ellipse::make(1, 1), {2, 0}, 100000), kPi / 3, 1e-3);
  EXPECT_NEAR(aperture_oracle(ParabolaRegion{}, {0, -0.25}, 100000, 1e3), kPi / 2, 1e-2);
  // For a polygon the spread of vertex directions is the aperture.
  const ConvexShape tri = Polygon::make({{0, 0}, {1, 0}, {0, 1}});
  const Point2 x{-1, -1};
  const double spread = angle_between(Vec2{1, 0} - x, Vec2{0, 1} - x);
  EXPECT_NEAR(aperture_oracle(tri, x, 1000), spread, 1e-15);
  EXPECT_NEAR(aperture_angle(tri, x), spread, 1e-15);
}

TEST(Oracle, Errors) {
  try {
    aperture_oracle(Ellipse::make(1, 1), {0, 0}, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PointInsideShape);
  }
  EXPECT_THROW(aperture_oracle(Ellipse::make(1, 1), {3, 0}, 99), Error);
}

TEST(Oracle, Deterministic) {
  const ConvexShape s = SineArch{};
  EXPECT_EQ(aperture_oracle(s, {1, -2}, 12345), aperture_oracle(s, {1, -2}, 12345));
}

TEST(Oracle, AgreesWithApertureOnRandomPoints) {
  std::mt19937_64 rng(2024);
  for (const auto& z : testsupport::zoo()) {
    const bool bounded = is_bounded(z.shape);
    for (int i = 0; i < 1000; ++i) {
      const Point2 x = random_exterior(z, rng);
      const double a = aperture_angle(z.shape, x);
      const double o = aperture_oracle(z.shape, x, 100000, 1e3);
      EXPECT_NEAR(a, o, bounded ? 1e-3 : 1e-2) << z.label << " at " << x.x << "," << x.y;
    }
  }
}

TEST(Oracle, SupportRouteAgrees) {
  std::mt19937_64 rng(99);
  for (const auto& z : testsupport::zoo()) {
    for (int i = 0; i < 40; ++i) {
      const Point2 x = random_exterior(z, rng);
      EXPECT_NEAR(aperture_angle(z.shape, x), testsupport::aperture_via_support(z.shape, x), 1e-4) << z.label;
    }
  }
}

TEST(Aperture, RangeAndApproachToBoundary) {
  std::mt19937_64 rng(17);
  for (const auto& z : testsupport::zoo()) {
    const Point2 c = interior_point(z.shape);
    for (int i = 0; i < 50; ++i) {
      const Point2 x = random_exterior(z, rng);
      const double a = aperture_angle(z.shape, x);
      EXPECT_GT(a, 0.0);
      EXPECT_LT(a, kPi);
      // Walk towards the interior point: the aperture rises to pi.
      double lo = 0.0;
      double hi = 1.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (contains(z.shape, x + mid * (c - x)) ? hi : lo) = mid;
      }
      double prev = 0.0;
      for (int k = 0; k <= 40; ++k) {
        const double s = lo * (1.0 - std::pow(0.5, k));
        const double ak = aperture_angle(z.shape, x + s * (c - x));
        EXPECT_GE(ak, prev - 1e-9) << z.label;
        prev = ak;
      }
      EXPECT_GT(prev, kPi - 1e-3) << z.label;
    }
  }
}

TEST(Aperture, DecreasesAlongRaysFromInterior) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> ang(0.0, kTwoPi);
  for (const auto& z : testsupport::zoo()) {
    const Point2 c = interior_point(z.shape);
    for (int i = 0; i < 1000; ++i) {
      const Vec2 u = unit_vector(ang(rng));
      double prev = kPi;
      bool outside = false;
      for (int k = 1; k <= 100; ++k) {
        const Point2 x = c + u * (0.1 * k);
        if (!contains(z.shape, x)) outside = true;
        const double a = aperture_angle(z.shape, x);
        if (outside) EXPECT_LE(a, prev + 1e-12) << z.label;
        prev = a;
      }
    }
  }
}

TEST(Aperture, WedgeLimitFarBehindApex) {
  for (double theta : {kPi / 6, kPi / 3, 2.0}) {
    const ConvexShape w = Wedge::make({1, 2}, theta, {0, 1});
    EXPECT_NEAR(aperture_angle(w, Point2{1, 2} + Vec2{0.3, -1e6}), theta, 1e-5);
  }
}

TEST(SubtendedAngle, TwoPoints) {
  EXPECT_NEAR(subtended_angle({0, 0}, {2, 0}, {1, -1}), kPi / 2, 1e-15);
}
