#include "spinebal/tilt_simulator.h"

#include <cmath>
#include <string>

#include "spinebal/errors.h"

namespace spinebal {

void TiltParams::Validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw ConfigError(std::string("tilt ") + name + " must be finite and >= 0");
    }
  };
  check(roll_gain, "roll_gain");
  check(pitch_gain, "pitch_gain");
  check(damping, "damping");
}

std::vector<double> IntegrateTilt(std::span<const double> drive, double gain,
                                  double damping, double dt,
                                  std::size_t reset_interval) {
  if (drive.empty()) throw DomainError("tilt simulation needs a non-empty trace");
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw DomainError("tilt time step must be > 0");
  }
  std::vector<double> theta(drive.size(), 0.0);
  double angle = 0.0;
  double rate = 0.0;
  for (std::size_t i = 0; i + 1 < drive.size(); ++i) {
    if (reset_interval > 0 && i > 0 && i % reset_interval == 0) {
      angle = 0.0;
      rate = 0.0;
    }
    rate += dt * (gain * drive[i] - damping * rate);
    angle += dt * rate;
    theta[i + 1] = angle;
  }
  return theta;
}

std::vector<double> SimulateRoll(std::span<const double> dis,
                                 const TiltParams& params, double dt,
                                 std::size_t half_stride_samples) {
  params.Validate();
  return IntegrateTilt(dis, params.roll_gain, params.damping, dt,
                       params.reset_on_switch ? half_stride_samples : 0);
}

std::vector<double> SimulatePitch(std::span<const double> longitudinal,
                                  const TiltParams& params, double dt,
                                  std::size_t half_stride_samples) {
  params.Validate();
  return IntegrateTilt(longitudinal, params.pitch_gain, params.damping, dt,
                       params.reset_on_switch ? half_stride_samples : 0);
}

BalanceMetrics HalfStrideMetrics(std::span<const double> roll,
                                 std::span<const double> pitch,
                                 std::span<const double> dis, double dt,
                                 std::size_t half_stride_samples,
                                 Diagonal first_diagonal) {
  const std::size_t n = dis.size();
  const std::size_t half = half_stride_samples;
  if (roll.size() != n || pitch.size() != n) {
    throw DomainError("roll, pitch and dis traces differ in length");
  }
  if (half < 2 || n < half + 1 || (n - 1) % half != 0) {
    throw DomainError("trace of " + std::to_string(n) +
                      " samples does not cover a whole number of half strides "
                      "of " + std::to_string(half) + " samples");
  }
  const std::size_t windows = (n - 1) / half;
  double roll_sum = 0.0, pitch_sum = 0.0, switch_sum = 0.0, area_sum = 0.0;
  double sign = first_diagonal == Diagonal::kLeftForeRightHind ? 1.0 : -1.0;
  for (std::size_t w = 0; w < windows; ++w) {
    const std::size_t start = w * half;
    const std::size_t end = start + half;
    for (std::size_t i = start + 1; i <= end; ++i) {
      roll_sum += std::abs(roll[i]);
      pitch_sum += std::abs(pitch[i]);
    }
    switch_sum += std::abs(roll[end]);
    double area = 0.0;
    for (std::size_t i = start; i + 1 < end; ++i) {
      area += 0.5 * (dis[i] + dis[i + 1]) * dt;
    }
    area_sum += sign * area;
    sign = -sign;
  }
  const double samples = static_cast<double>(windows * half);
  BalanceMetrics m;
  m.mean_abs_roll = roll_sum / samples;
  m.mean_abs_pitch = pitch_sum / samples;
  m.half_stride_signed_area = area_sum / static_cast<double>(windows);
  m.roll_at_switch = switch_sum / static_cast<double>(windows);
  return m;
}

}  // namespace spinebal
