#pragma once

#include <array>
#include <cstddef>

#include "spinebal/kinematics.h"

namespace spinebal {

enum class Leg { kLF = 0, kRF = 1, kLH = 2, kRH = 3 };

inline constexpr std::array<Leg, 4> kAllLegs = {Leg::kLF, Leg::kRF, Leg::kLH,
                                               Leg::kRH};

const char* LegName(Leg leg);

// Ideal trot. Stride waveforms are cosines over the stance progress of each
// leg: a stance foot starts at +amplitude (ahead of its hip) and ends at
// -amplitude.
struct GaitParams {
  double period = 1.0;            // T [s]
  double stride_amplitude = 0.05; // [m]
  double duty = 0.5;
  // Per-leg stance start as a fraction of T, indexed by Leg.
  std::array<double, 4> phase_offsets = {0.0, 0.5, 0.5, 0.0};
  // Phase lead of the hind stride waveform over the fore stride of the same
  // diagonal, as a fraction of T. 0 = both stance feet sweep back together.
  double hind_stride_lag = 0.0;

  double angular_frequency() const;

  // Throws ConfigError when T or the amplitude is not positive, duty is not
  // 0.5, or the offsets violate the trot pairing.
  void Validate() const;
};

enum class LimbPhase { kStance, kSwing };

struct LegPhase {
  Leg leg = Leg::kLF;
  LimbPhase phase = LimbPhase::kStance;
  double progress = 0.0;  // fraction of the current phase elapsed, [0, 1)
};

// Stride offsets of the diagonal that is currently on the ground. Periodic
// in T. Throws DomainError for negative or non-finite t.
StrideState StrideAt(const GaitParams& gait, double t);

// Stride offsets of a specific diagonal at t, regardless of which one is in
// stance. Used by the balance solver, which holds the stride fixed.
StrideState StrideOfDiagonal(const GaitParams& gait, Diagonal diagonal,
                             double t);

// Stance/swing labels for all four legs, indexed by Leg. The schedule is
// right-continuous: at t = T/2 the RF+LH pair is already in stance.
std::array<LegPhase, 4> StanceSchedule(const GaitParams& gait, double t);

Diagonal ActiveDiagonal(const GaitParams& gait, double t);

}  // namespace spinebal
