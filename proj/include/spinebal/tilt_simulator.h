#pragma once

// Proxy body-tilt dynamics driven by the balance trace:
//   roll:  theta'' = roll_gain  * dis          - damping * theta'
//   pitch: theta'' = pitch_gain * longitudinal - damping * theta'
// Positive dis (CoM on the right) gives a positive roll rate. Integration is
// semi-implicit Euler at the trace step.

#include <cstddef>
#include <span>
#include <vector>

#include "spinebal/kinematics.h"

namespace spinebal {

struct TiltParams {
  double roll_gain = 200.0;   // [rad s^-2 m^-1]
  double pitch_gain = 200.0;  // [rad s^-2 m^-1]
  double damping = 20.0;      // [s^-1]
  bool reset_on_switch = true;

  // Throws ConfigError on negative or non-finite values.
  void Validate() const;
};

// theta at every sample of drive; theta[0] = 0. If reset_interval > 0 the
// state is zeroed after each sample i with i % reset_interval == 0, i > 0, so
// theta at a switch sample is the value reached by the end of the previous
// half stride. Throws DomainError on an empty trace or dt <= 0.
std::vector<double> IntegrateTilt(std::span<const double> drive, double gain,
                                  double damping, double dt,
                                  std::size_t reset_interval);

std::vector<double> SimulateRoll(std::span<const double> dis,
                                 const TiltParams& params, double dt,
                                 std::size_t half_stride_samples);
std::vector<double> SimulatePitch(std::span<const double> longitudinal,
                                  const TiltParams& params, double dt,
                                  std::size_t half_stride_samples);

struct BalanceMetrics {
  double mean_abs_roll = 0.0;            // [rad]
  double mean_abs_pitch = 0.0;           // [rad]
  double half_stride_signed_area = 0.0;  // [m s]
  double roll_at_switch = 0.0;           // mean |theta_roll| at t = nT/2 [rad]

  friend bool operator==(const BalanceMetrics&, const BalanceMetrics&) = default;
};

// The traces start on a half-stride boundary and hold n * half + 1 samples.
// Window j covers samples (j*half, (j+1)*half]; tilt means are taken over
// those samples and roll_at_switch reads the last one. The dis integral uses
// the trapezoid rule over samples j*half .. (j+1)*half - 1 (the stance of one
// diagonal) and is signed +1 for LF+RH windows, -1 for RF+LH, then averaged.
// Throws DomainError on misaligned or mismatched lengths.
BalanceMetrics HalfStrideMetrics(std::span<const double> roll,
                                 std::span<const double> pitch,
                                 std::span<const double> dis, double dt,
                                 std::size_t half_stride_samples,
                                 Diagonal first_diagonal);

}  // namespace spinebal
