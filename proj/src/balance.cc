#include "spinebal/balance.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinebal/errors.h"

namespace spinebal {
namespace {

constexpr double kDegenerateNorm = 1e-15;
constexpr std::size_t kMinTraceSamples = 8;
constexpr std::size_t kMinControllerSteps = 100;

double Norm(const SupportLine& line) { return std::hypot(line.a, line.b); }

}  // namespace

Point2 ComPosition::At(const RobotGeometry& geom, double flexion) const {
  if (mode == ComMode::kFixed) return {cx, cy};
  const Point2 arc = SpineArcCentroid(geom, flexion);
  const double m = spine_mass_fraction;
  return {(1.0 - m) * cx + m * arc.x, (1.0 - m) * cy + m * arc.y};
}

void ComPosition::Validate() const {
  if (!std::isfinite(cx) || !std::isfinite(cy)) {
    throw ConfigError("CoM coordinates must be finite");
  }
  if (!(spine_mass_fraction >= 0.0 && spine_mass_fraction <= 1.0)) {
    throw ConfigError("spine mass fraction must lie in [0, 1]");
  }
}

SupportLine ComputeSupportLine(const RobotGeometry& geom,
                               const StrideState& stride, double flexion) {
  const HindDisplacement d =
      ComputeHindDisplacement(geom, stride.hind, flexion, stride.diagonal);
  if (!std::isfinite(stride.fore)) {
    throw DomainError("fore stride is not finite");
  }
  const double lfh = SignedForeHalfwidth(geom, stride.diagonal);
  const double reach = geom.body_length() + geom.spine_length();
  SupportLine line;
  line.a = d.y + lfh;
  line.b = stride.fore + reach - d.x;
  line.c = (reach - d.x) * lfh - stride.fore * d.y;
  if (Norm(line) < kDegenerateNorm) {
    throw DegenerateSupportError("stance footholds coincide; no support line");
  }
  return line;
}

double SignedDistance(const SupportLine& line, const Point2& com) {
  const double n = Norm(line);
  if (!(n >= kDegenerateNorm)) {
    throw DegenerateSupportError("support line has a = b = 0");
  }
  return line.Residual(com) / n;
}

double LongitudinalOffset(const SupportLine& line, const Point2& com) {
  const double n = Norm(line);
  if (!(n >= kDegenerateNorm)) {
    throw DegenerateSupportError("support line has a = b = 0");
  }
  return line.Residual(com) * line.a / (n * n);
}

double BalanceDistance(const RobotGeometry& geom, const StrideState& stride,
                       double flexion, const ComPosition& com) {
  return SignedDistance(ComputeSupportLine(geom, stride, flexion),
                        com.At(geom, flexion));
}

BalanceSample EvaluateBalance(const RobotGeometry& geom, const GaitParams& gait,
                              const ComPosition& com, double t,
                              double flexion) {
  const StrideState stride = StrideAt(gait, t);
  BalanceSample s;
  s.t = t;
  s.stride_fore = stride.fore;
  s.stride_hind = stride.hind;
  s.flexion = flexion;
  s.diagonal = stride.diagonal;
  s.footholds = ComputeFootholds(geom, stride, flexion);
  s.line = ComputeSupportLine(geom, stride, flexion);
  const Point2 c = com.At(geom, flexion);
  s.dis = SignedDistance(s.line, c);
  s.longitudinal = LongitudinalOffset(s.line, c);
  return s;
}

std::vector<BalanceSample> DisTrace(const RobotGeometry& geom,
                                    const GaitParams& gait,
                                    SpineControllerParams controller,
                                    const ComPosition& com,
                                    std::size_t samples_per_period) {
  if (samples_per_period < kMinTraceSamples) {
    throw DomainError("dis trace needs at least 8 samples per period");
  }
  gait.Validate();
  const std::size_t substeps =
      (kMinControllerSteps + samples_per_period - 1) / samples_per_period;
  const double sample_dt = gait.period / static_cast<double>(samples_per_period);
  controller.period = gait.period;
  controller.time_step = sample_dt / static_cast<double>(substeps);
  SpineController spine(controller);

  std::vector<BalanceSample> out;
  out.reserve(samples_per_period);
  for (std::size_t i = 0; i < samples_per_period; ++i) {
    const double flexion = spine.Step();
    const WarpState& ws = spine.last_state();
    for (std::size_t j = 1; j < substeps; ++j) spine.Step();
    const double t = static_cast<double>(i) * sample_dt;
    BalanceSample s = EvaluateBalance(geom, gait, com, t, flexion);
    s.warped_phase = ws.warped_phase;
    s.k = ws.k;
    out.push_back(s);
  }
  return out;
}

}  // namespace spinebal
