#pragma once

// Planar foothold kinematics of a trotting quadruped whose lumbar spine bends
// laterally as a circular arc.
//
// Frame: origin at the shoulder midpoint, +x forward, +y towards the robot's
// right side. The fore stance foot of the left-fore/right-hind diagonal sits
// at y = -l_FH, the hind foot at y = +l_HH (before flexion). All lengths are
// metres, all angles radians.

#include <numbers>

namespace spinebal {

inline constexpr double kMaxFlexion = std::numbers::pi / 2.0;

// Below this |central angle| the arc terms are evaluated by Taylor series.
inline constexpr double kSeriesSwitchAngle = 1e-4;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

// Constant link lengths of the robot. Construct through Make() to validate.
class RobotGeometry {
 public:
  // Throws DomainError unless every length is finite and strictly positive.
  static RobotGeometry Make(double spine_length, double body_length,
                            double hind_hip_halfwidth,
                            double fore_hip_halfwidth);

  // Placeholder rat-robot-scale values; nothing in the test suite depends on
  // them beyond "the default configuration".
  static RobotGeometry Default();

  double spine_length() const { return spine_length_; }
  double body_length() const { return body_length_; }
  double hind_hip_halfwidth() const { return hind_hip_halfwidth_; }
  double fore_hip_halfwidth() const { return fore_hip_halfwidth_; }

  friend bool operator==(const RobotGeometry&, const RobotGeometry&) = default;

 private:
  RobotGeometry(double ls, double lb, double lhh, double lfh)
      : spine_length_(ls),
        body_length_(lb),
        hind_hip_halfwidth_(lhh),
        fore_hip_halfwidth_(lfh) {}

  double spine_length_;
  double body_length_;
  double hind_hip_halfwidth_;
  double fore_hip_halfwidth_;
};

// Which diagonal pair is on the ground.
enum class Diagonal {
  kLeftForeRightHind,  // LF + RH, first half of the stride
  kRightForeLeftHind,  // RF + LH, second half of the stride
};

// Stride offsets of the two stance feet relative to their hips.
struct StrideState {
  double fore = 0.0;  // l_f
  double hind = 0.0;  // l_h
  double t = 0.0;
  Diagonal diagonal = Diagonal::kLeftForeRightHind;
};

// Flexion angle and the matching arc central angle. The central angle is
// always derived, never set independently.
class FlexionState {
 public:
  // Throws DomainError on non-finite input, RangeError outside +-pi/2.
  explicit FlexionState(double flexion);

  double flexion() const { return flexion_; }
  double central_angle() const { return 2.0 * flexion_; }

 private:
  double flexion_;
};

struct Footholds {
  Point2 fore;
  Point2 hind;
};

// Extra x/y displacement of the hind stance foot caused by the arc.
struct HindDisplacement {
  double x = 0.0;  // l_hx
  double y = 0.0;  // l_hy
};

// sin(a)/a and (1 - cos(a))/a, continuous through a = 0.
double Sinc(double angle);
double Cosc(double angle);

// Hind displacement for the LF+RH diagonal; the RF+LH diagonal is the same
// construction with both hip half-widths negated.
HindDisplacement ComputeHindDisplacement(const RobotGeometry& geom,
                                         double hind_stride, double flexion,
                                         Diagonal diagonal =
                                             Diagonal::kLeftForeRightHind);

Footholds ComputeFootholds(const RobotGeometry& geom, const StrideState& stride,
                           double flexion);

// Hip half-widths with the sign of the given diagonal: (+l_HH, +l_FH) for
// LF+RH, negated for RF+LH.
double SignedHindHalfwidth(const RobotGeometry& geom, Diagonal diagonal);
double SignedForeHalfwidth(const RobotGeometry& geom, Diagonal diagonal);

// Centroid of the spine arc, used by the flexion-coupled CoM model.
Point2 SpineArcCentroid(const RobotGeometry& geom, double flexion);

}  // namespace spinebal
