#include "spinebal/gait.h"

#include <cmath>
#include <numbers>
#include <string>

#include "spinebal/errors.h"

namespace spinebal {
namespace {

constexpr double kOffsetTolerance = 1e-12;

// Fractional part in [0, 1).
double Wrap01(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;
  return f;
}

bool SameFraction(double a, double b) {
  const double d = Wrap01(a - b);
  return d < kOffsetTolerance || d > 1.0 - kOffsetTolerance;
}

void RequireTime(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw DomainError("gait time must be finite and >= 0, got " +
                      std::to_string(t));
  }
}

// Times on a simulation grid (i * T / n) can land an ulp short of a
// half-period boundary; snap those onto the boundary so the schedule switches
// on the sample that nominally sits at nT/2.
constexpr double kBoundarySnap = 1e-9;

double StanceFraction(const GaitParams& gait, Leg leg, double t) {
  double x = t / gait.period - gait.phase_offsets[static_cast<std::size_t>(leg)];
  const double halves = std::round(2.0 * x);
  if (std::abs(2.0 * x - halves) < kBoundarySnap) x = halves / 2.0;
  return Wrap01(x);
}

}  // namespace

const char* LegName(Leg leg) {
  switch (leg) {
    case Leg::kLF:
      return "LF";
    case Leg::kRF:
      return "RF";
    case Leg::kLH:
      return "LH";
    case Leg::kRH:
      return "RH";
  }
  return "?";
}

double GaitParams::angular_frequency() const {
  return 2.0 * std::numbers::pi / period;
}

void GaitParams::Validate() const {
  if (!std::isfinite(period) || period <= 0.0) {
    throw ConfigError("gait period must be > 0");
  }
  if (!std::isfinite(stride_amplitude) || stride_amplitude <= 0.0) {
    throw ConfigError("stride amplitude must be > 0");
  }
  if (!(duty > 0.0 && duty <= 1.0)) {
    throw ConfigError("duty must lie in (0, 1]");
  }
  if (duty != 0.5) {
    throw ConfigError("only the ideal trot (duty 0.5) is modelled");
  }
  for (double off : phase_offsets) {
    if (!std::isfinite(off)) throw ConfigError("phase offset is not finite");
  }
  if (!std::isfinite(hind_stride_lag)) {
    throw ConfigError("hind stride lag is not finite");
  }
  const auto off = [&](Leg leg) {
    return phase_offsets[static_cast<std::size_t>(leg)];
  };
  if (!SameFraction(off(Leg::kLF), off(Leg::kRH)) ||
      !SameFraction(off(Leg::kRF), off(Leg::kLH))) {
    throw ConfigError("trot requires LF/RH and RF/LH to share phase");
  }
  if (!SameFraction(off(Leg::kRF) - off(Leg::kLF), 0.5)) {
    throw ConfigError("trot requires the two diagonals offset by T/2");
  }
}

Diagonal ActiveDiagonal(const GaitParams& gait, double t) {
  RequireTime(t);
  return StanceFraction(gait, Leg::kLF, t) < gait.duty
             ? Diagonal::kLeftForeRightHind
             : Diagonal::kRightForeLeftHind;
}

StrideState StrideOfDiagonal(const GaitParams& gait, Diagonal diagonal,
                             double t) {
  RequireTime(t);
  const Leg fore =
      diagonal == Diagonal::kLeftForeRightHind ? Leg::kLF : Leg::kRF;
  const double progress = StanceFraction(gait, fore, t);
  const double two_pi = 2.0 * std::numbers::pi;
  StrideState s;
  s.fore = gait.stride_amplitude * std::cos(two_pi * progress);
  s.hind = gait.stride_amplitude *
           std::cos(two_pi * (progress + gait.hind_stride_lag));
  s.t = t;
  s.diagonal = diagonal;
  return s;
}

StrideState StrideAt(const GaitParams& gait, double t) {
  return StrideOfDiagonal(gait, ActiveDiagonal(gait, t), t);
}

std::array<LegPhase, 4> StanceSchedule(const GaitParams& gait, double t) {
  RequireTime(t);
  std::array<LegPhase, 4> out{};
  for (Leg leg : kAllLegs) {
    const double frac = StanceFraction(gait, leg, t);
    LegPhase& p = out[static_cast<std::size_t>(leg)];
    p.leg = leg;
    if (frac < gait.duty) {
      p.phase = LimbPhase::kStance;
      p.progress = frac / gait.duty;
    } else {
      p.phase = LimbPhase::kSwing;
      p.progress = (frac - gait.duty) / (1.0 - gait.duty);
    }
  }
  return out;
}

}  // namespace spinebal
