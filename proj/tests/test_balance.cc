#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "spinebal/balance.h"
#include "spinebal/errors.h"
#include "spinebal/solver.h"

namespace spinebal {
namespace {

// Line through two points: (-dy, dx) normal, scaled to unit length.
SupportLine TwoPointLine(Point2 hind, Point2 fore) {
  const double dx = fore.x - hind.x, dy = fore.y - hind.y;
  const double n = std::hypot(dx, dy);
  SupportLine l{-dy / n, dx / n, 0.0};
  l.c = -(l.a * hind.x + l.b * hind.y);
  return l;
}

// Signed distance via the 2D cross product of (fore - hind) and (p - hind).
double CrossDistance(Point2 hind, Point2 fore, Point2 p) {
  const double dx = fore.x - hind.x, dy = fore.y - hind.y;
  return (dx * (p.y - hind.y) - dy * (p.x - hind.x)) / std::hypot(dx, dy);
}

TEST(SupportLine, RestPoseCoefficients) {
  const auto g = RobotGeometry::Make(0.09, 0.14, 0.035, 0.03);
  const SupportLine l = ComputeSupportLine(g, StrideState{}, 0.0);
  EXPECT_DOUBLE_EQ(l.a, 0.035 + 0.03);
  EXPECT_DOUBLE_EQ(l.b, 0.14 + 0.09);
  EXPECT_DOUBLE_EQ(l.c, (0.14 + 0.09) * 0.03);
}

TEST(SupportLine, PassesThroughFootholds) {
  const auto g = RobotGeometry::Default();
  for (Diagonal d : {Diagonal::kLeftForeRightHind, Diagonal::kRightForeLeftHind}) {
    for (double r : {-1.5, -0.4, 0.0, 0.25, 1.2}) {
      StrideState s{0.031, -0.042, 0.0, d};
      const SupportLine l = ComputeSupportLine(g, s, r);
      const Footholds f = ComputeFootholds(g, s, r);
      EXPECT_LT(std::abs(l.Residual(f.fore)), 1e-12);
      EXPECT_LT(std::abs(l.Residual(f.hind)), 1e-12);
    }
  }
}

TEST(SupportLine, MatchesTwoPointOracle) {
  const auto g = RobotGeometry::Default();
  StrideState s{0.03, -0.03, 0.0, Diagonal::kLeftForeRightHind};
  const SupportLine l = ComputeSupportLine(g, s, 0.2);
  const Footholds f = ComputeFootholds(g, s, 0.2);
  const SupportLine o = TwoPointLine(f.hind, f.fore);
  const double scale = std::hypot(l.a, l.b);
  EXPECT_GT(scale, 0.0);
  EXPECT_NEAR(l.a / scale, o.a, 1e-12);
  EXPECT_NEAR(l.b / scale, o.b, 1e-12);
  EXPECT_NEAR(l.c / scale, o.c, 1e-12);
}

TEST(SupportLine, DegenerateCoefficients) {
  EXPECT_THROW(SignedDistance(SupportLine{0.0, 0.0, 1.0}, {0, 0}),
               DegenerateSupportError);
  EXPECT_THROW(LongitudinalOffset(SupportLine{0.0, 0.0, 1.0}, {0, 0}),
               DegenerateSupportError);
}

TEST(SignedDistance, OnLineIsZeroAndMirrorNegates) {
  const auto g = RobotGeometry::Default();
  StrideState s{0.02, 0.01, 0.0, Diagonal::kLeftForeRightHind};
  const SupportLine l = ComputeSupportLine(g, s, 0.3);
  const Footholds f = ComputeFootholds(g, s, 0.3);
  const Point2 mid{(f.fore.x + f.hind.x) / 2, (f.fore.y + f.hind.y) / 2};
  EXPECT_NEAR(SignedDistance(l, mid), 0.0, 1e-15);

  const Point2 p{-0.1, 0.04};
  const double d = SignedDistance(l, p);
  const double n = std::hypot(l.a, l.b);
  const Point2 mirrored{p.x - 2 * d * l.a / n, p.y - 2 * d * l.b / n};
  EXPECT_NEAR(SignedDistance(l, mirrored), -d, 1e-15);
}

TEST(SignedDistance, RestPoseOriginMatchesCrossProduct) {
  const auto g = RobotGeometry::Default();
  const SupportLine l = ComputeSupportLine(g, StrideState{}, 0.0);
  const Footholds f = ComputeFootholds(g, StrideState{}, 0.0);
  const double d = SignedDistance(l, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(d, l.c / std::hypot(l.a, l.b));
  EXPECT_NEAR(d, CrossDistance(f.hind, f.fore, {0.0, 0.0}), 1e-15);
}

TEST(SignedDistance, PositiveMeansRobotRight) {
  const auto g = RobotGeometry::Default();
  StrideState s{0.0, 0.0, 0.0, Diagonal::kLeftForeRightHind};
  const SupportLine l = ComputeSupportLine(g, s, 0.0);
  // The LF+RH line crosses x = -0.12 at y = 0; +y is the robot's right.
  EXPECT_GT(SignedDistance(l, {-0.12, 0.05}), 0.0);
  EXPECT_LT(SignedDistance(l, {-0.12, -0.05}), 0.0);
}

TEST(SignedDistance, ScaleInvariant) {
  const SupportLine l{0.3, 1.7, -0.2};
  const SupportLine k{0.3 * 7.5, 1.7 * 7.5, -0.2 * 7.5};
  EXPECT_NEAR(SignedDistance(l, {0.4, -0.1}), SignedDistance(k, {0.4, -0.1}),
              1e-15);
}

TEST(LongitudinalOffset, IsXComponentOfPerpendicular) {
  const SupportLine l{0.04, 0.24, 0.0048};
  const Point2 p{-0.15, 0.0};
  // foot of perpendicular from p
  const double n2 = l.a * l.a + l.b * l.b;
  const double t = l.Residual(p) / n2;
  const Point2 foot{p.x - t * l.a, p.y - t * l.b};
  EXPECT_NEAR(LongitudinalOffset(l, p), p.x - foot.x, 1e-15);
}

TEST(ComPosition, FixedAndCoupled) {
  const auto g = RobotGeometry::Default();
  ComPosition c{-0.1, 0.01, ComMode::kFixed, 0.5};
  EXPECT_EQ(c.At(g, 0.7), (Point2{-0.1, 0.01}));
  c.mode = ComMode::kFlexionCoupled;
  const Point2 arc = SpineArcCentroid(g, 0.7);
  const Point2 p = c.At(g, 0.7);
  EXPECT_DOUBLE_EQ(p.x, 0.5 * -0.1 + 0.5 * arc.x);
  EXPECT_DOUBLE_EQ(p.y, 0.5 * 0.01 + 0.5 * arc.y);
  c.spine_mass_fraction = 1.5;
  EXPECT_THROW(c.Validate(), ConfigError);
  ComPosition bad{NAN, 0.0};
  EXPECT_THROW(bad.Validate(), ConfigError);
}

ComPosition DefaultCom() { return ComPosition{-0.15, 0.0}; }

SpineControllerParams Controller(ControllerKind kind, double alpha,
                                 double phase = 0.0, double target = 0.0) {
  SpineControllerParams p;
  p.kind = kind;
  p.amplitude = alpha;
  p.initial_phase = phase;
  p.balance_target = target;
  return p;
}

TEST(DisTrace, NonSpineIsAsymmetricAndChangesSign) {
  const auto g = RobotGeometry::Default();
  const GaitParams gait;
  const auto tr = DisTrace(g, gait, Controller(ControllerKind::kNonSpine, 0.0),
                           DefaultCom(), 64);
  ASSERT_EQ(tr.size(), 64u);
  for (int h = 0; h < 2; ++h) {
    int changes = 0;
    for (int i = h * 32; i + 1 < (h + 1) * 32; ++i) {
      if (tr[i].dis * tr[i + 1].dis < 0) ++changes;
    }
    EXPECT_GE(changes, 1) << "half " << h;
  }
  EXPECT_GT(std::abs(tr[16].dis), 1e-4);
}

TEST(DisTrace, BalanceSpineZeroAtQuarter) {
  const auto g = RobotGeometry::Default();
  const GaitParams gait;
  BalanceProblem p;
  p.geom = g;
  p.stride_at_tb = StrideOfDiagonal(gait, Diagonal::kLeftForeRightHind, 0.25);
  p.com = DefaultCom();
  const SolverResult r = SolveBalanceFlexion(p);
  const double phase = r.root < 0 ? std::numbers::pi : 0.0;
  const auto tr = DisTrace(
      g, gait, Controller(ControllerKind::kBalanceSpine, 0.15, phase, r.r_prime),
      DefaultCom(), 100);
  EXPECT_LT(std::abs(tr[25].dis), 1e-9);
  EXPECT_LT(std::abs(tr[75].dis), 1e-9);
}

TEST(DisTrace, ZeroAmplitudeSpineEqualsNonSpine) {
  const auto g = RobotGeometry::Default();
  const GaitParams gait;
  const auto a = DisTrace(g, gait, Controller(ControllerKind::kNonSpine, 0.0),
                          DefaultCom(), 128);
  const auto b = DisTrace(g, gait, Controller(ControllerKind::kSpine, 0.0, 0.4),
                          DefaultCom(), 128);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].dis, b[i].dis);
}

TEST(DisTrace, UsesActiveDiagonal) {
  const auto tr = DisTrace(RobotGeometry::Default(), GaitParams{},
                           Controller(ControllerKind::kNonSpine, 0.0),
                           DefaultCom(), 8);
  for (int i = 0; i < 8; ++i) {
    EXPECT_EQ(tr[i].diagonal, i < 4 ? Diagonal::kLeftForeRightHind
                                    : Diagonal::kRightForeLeftHind);
  }
  EXPECT_THROW(DisTrace(RobotGeometry::Default(), GaitParams{},
                        Controller(ControllerKind::kNonSpine, 0.0), DefaultCom(),
                        7),
               DomainError);
}

TEST(DisTrace, MirrorAntisymmetry) {
  const auto tr = DisTrace(RobotGeometry::Default(), GaitParams{},
                           Controller(ControllerKind::kSpine, 0.3, 0.5),
                           DefaultCom(), 256);
  for (int i = 0; i < 128; ++i) {
    EXPECT_NEAR(tr[i + 128].dis, -tr[i].dis, 1e-12) << i;
  }
}

}  // namespace
}  // namespace spinebal
