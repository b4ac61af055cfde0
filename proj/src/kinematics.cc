#include "spinebal/kinematics.h"

#include <cmath>
#include <string>

#include "spinebal/errors.h"

namespace spinebal {
namespace {

void RequirePositiveLength(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw DomainError(std::string(name) + " must be finite and > 0, got " +
                      std::to_string(value));
  }
}

void RequireFlexionInRange(double flexion) {
  if (!std::isfinite(flexion)) {
    throw DomainError("flexion angle is not finite");
  }
  if (std::abs(flexion) > kMaxFlexion) {
    throw RangeError("flexion angle " + std::to_string(flexion) +
                     " rad outside [-pi/2, pi/2]");
  }
}

}  // namespace

RobotGeometry RobotGeometry::Make(double spine_length, double body_length,
                                  double hind_hip_halfwidth,
                                  double fore_hip_halfwidth) {
  RequirePositiveLength(spine_length, "spine_length");
  RequirePositiveLength(body_length, "body_length");
  RequirePositiveLength(hind_hip_halfwidth, "hind_hip_halfwidth");
  RequirePositiveLength(fore_hip_halfwidth, "fore_hip_halfwidth");
  return RobotGeometry(spine_length, body_length, hind_hip_halfwidth,
                       fore_hip_halfwidth);
}

RobotGeometry RobotGeometry::Default() {
  return Make(0.16, 0.08, 0.02, 0.02);
}

FlexionState::FlexionState(double flexion) : flexion_(flexion) {
  RequireFlexionInRange(flexion);
}

double Sinc(double angle) {
  if (std::abs(angle) < kSeriesSwitchAngle) {
    const double a2 = angle * angle;
    return 1.0 - a2 / 6.0 + a2 * a2 / 120.0;
  }
  return std::sin(angle) / angle;
}

double Cosc(double angle) {
  if (std::abs(angle) < kSeriesSwitchAngle) {
    return angle / 2.0 - angle * angle * angle / 24.0;
  }
  const double h = std::sin(angle / 2.0);
  return 2.0 * h * h / angle;
}

double SignedHindHalfwidth(const RobotGeometry& geom, Diagonal diagonal) {
  return diagonal == Diagonal::kLeftForeRightHind ? geom.hind_hip_halfwidth()
                                                  : -geom.hind_hip_halfwidth();
}

double SignedForeHalfwidth(const RobotGeometry& geom, Diagonal diagonal) {
  return diagonal == Diagonal::kLeftForeRightHind ? geom.fore_hip_halfwidth()
                                                  : -geom.fore_hip_halfwidth();
}

HindDisplacement ComputeHindDisplacement(const RobotGeometry& geom,
                                         double hind_stride, double flexion,
                                         Diagonal diagonal) {
  if (!std::isfinite(hind_stride)) {
    throw DomainError("hind stride is not finite");
  }
  const FlexionState state(flexion);
  const double theta = state.central_angle();
  const double ls = geom.spine_length();
  const double lhh = SignedHindHalfwidth(geom, diagonal);
  const double c = std::cos(theta);
  const double s = std::sin(theta);

  HindDisplacement out;
  out.x = hind_stride * c + lhh * s + (ls - ls * Sinc(theta));
  out.y = ls * Cosc(theta) + lhh * c - hind_stride * s;
  return out;
}

Footholds ComputeFootholds(const RobotGeometry& geom, const StrideState& stride,
                           double flexion) {
  if (!std::isfinite(stride.fore)) {
    throw DomainError("fore stride is not finite");
  }
  const HindDisplacement d =
      ComputeHindDisplacement(geom, stride.hind, flexion, stride.diagonal);
  Footholds out;
  out.fore = {stride.fore, -SignedForeHalfwidth(geom, stride.diagonal)};
  out.hind = {d.x - geom.body_length() - geom.spine_length(), d.y};
  return out;
}

Point2 SpineArcCentroid(const RobotGeometry& geom, double flexion) {
  const FlexionState state(flexion);
  const double theta = state.central_angle();
  const double ls = geom.spine_length();
  // Arc leaves the rear of the body segment at (-l_B, 0) heading in -x.
  // Mean over arc length of (-l_B - (l_S/theta) sin(u), (l_S/theta)(1 - cos u)).
  double mean_sin_term;  // (1 - cos theta) / theta^2
  double mean_cos_term;  // (1 - sin(theta)/theta) / theta
  if (std::abs(theta) < kSeriesSwitchAngle) {
    const double t2 = theta * theta;
    mean_sin_term = 0.5 - t2 / 24.0 + t2 * t2 / 720.0;
    mean_cos_term = theta / 6.0 - theta * t2 / 120.0;
  } else {
    const double h = std::sin(theta / 2.0);
    mean_sin_term = 2.0 * h * h / (theta * theta);
    if (std::abs(theta) < 1e-2) {
      const double t2 = theta * theta;
      mean_cos_term =
          theta * (1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0 - t2 * t2 * t2 / 362880.0);
    } else {
      mean_cos_term = (1.0 - std::sin(theta) / theta) / theta;
    }
  }
  return {-geom.body_length() - ls * mean_sin_term, ls * mean_cos_term};
}

}  // namespace spinebal
