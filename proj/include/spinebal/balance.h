#pragma once

// Balance status of a trotting robot: the support line through the two
// stance feet and the signed distance from the CoM to it.
//
// Sign convention: the line is directed from the hind foothold to the fore
// foothold. A positive distance means the CoM lies to the +y side of that
// directed line, which in this frame is the robot's right side. For the
// RF+LH diagonal the same convention holds, so a symmetric gait produces
// dis(t + T/2) = -dis(t).

#include <cstddef>
#include <vector>

#include "spinebal/gait.h"
#include "spinebal/kinematics.h"
#include "spinebal/spine_controller.h"

namespace spinebal {

// a*x + b*y + c = 0, (a, b) is the left normal of the hind->fore direction.
struct SupportLine {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double Residual(const Point2& p) const { return a * p.x + b * p.y + c; }
};

enum class ComMode { kFixed, kFlexionCoupled };

// CoM model. In kFlexionCoupled mode a fraction of the mass sits at the
// centroid of the spine arc, so the CoM moves with the flexion angle.
struct ComPosition {
  double cx = 0.0;
  double cy = 0.0;
  ComMode mode = ComMode::kFixed;
  double spine_mass_fraction = 0.0;  // used in kFlexionCoupled mode only

  Point2 At(const RobotGeometry& geom, double flexion) const;
  // Throws ConfigError on non-finite coordinates or a fraction outside [0, 1].
  void Validate() const;
};

// Line through both stance footholds of stride.diagonal, with coefficients
//   a = l_hy + l_FH, b = l_f + l_B + l_S - l_hx,
//   c = (l_B + l_S - l_hx) * l_FH - l_f * l_hy
// (hip half-widths carry the diagonal's sign). Throws DegenerateSupportError
// if the footholds coincide.
SupportLine ComputeSupportLine(const RobotGeometry& geom,
                               const StrideState& stride, double flexion);

// Throws DegenerateSupportError for a = b = 0.
double SignedDistance(const SupportLine& line, const Point2& com);

// Signed distance of the CoM for one configuration, evaluated through the
// full kinematics pipeline.
double BalanceDistance(const RobotGeometry& geom, const StrideState& stride,
                       double flexion, const ComPosition& com);

// x-component of (CoM - foot of its perpendicular on the support line).
double LongitudinalOffset(const SupportLine& line, const Point2& com);

struct BalanceSample {
  double t = 0.0;
  double stride_fore = 0.0;
  double stride_hind = 0.0;
  double flexion = 0.0;
  double warped_phase = 0.0;
  double k = 1.0;
  Diagonal diagonal = Diagonal::kLeftForeRightHind;
  Footholds footholds;
  SupportLine line;
  double dis = 0.0;
  double longitudinal = 0.0;
};

// Full kinematic/balance evaluation of one instant.
BalanceSample EvaluateBalance(const RobotGeometry& geom, const GaitParams& gait,
                              const ComPosition& com, double t, double flexion);

// dis(t) over one stride period at samples_per_period uniform instants
// t = i*T/n, i = 0..n-1. The controller is stepped on a grid fine enough to
// satisfy its t_s <= T/100 floor; its period is taken from the gait.
// Throws DomainError for samples_per_period < 8.
std::vector<BalanceSample> DisTrace(const RobotGeometry& geom,
                                    const GaitParams& gait,
                                    SpineControllerParams controller,
                                    const ComPosition& com,
                                    std::size_t samples_per_period);

}  // namespace spinebal
