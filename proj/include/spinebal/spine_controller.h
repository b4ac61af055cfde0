#pragma once

// Lateral spine flexion generators.
//
//   non_spine      R(t) = 0
//   spine          R(t) = alpha * cos(2 pi t / T + phi)
//   balance_spine  R(t) = alpha * cos(f_T(t) + phi), where the phase
//                  accumulator f_T advances by k * (2 pi / T) * t_s per step
//                  and k toggles between two values every quarter period.
//
// In the first quarter of each half stride k = 2 arccos(R'/alpha) / pi, which
// makes f_T reach arccos(R'/alpha) exactly at t = (2n+1)T/4, i.e. |R| = R'
// at the balance instant. The second quarter uses 2 - k so every half stride
// still advances f_T by pi.

#include <cstdint>
#include <string>
#include <string_view>

namespace spinebal {

enum class ControllerKind { kNonSpine, kSpine, kBalanceSpine };

std::string_view ControllerKindName(ControllerKind kind);
// Accepts "non-spine"/"non_spine", "spine", "balance-spine"/"balance_spine".
// Throws ConfigError otherwise.
ControllerKind ParseControllerKind(std::string_view name);

enum class WarpSegment { kFirstQuarter, kSecondQuarter };

struct SpineControllerParams {
  ControllerKind kind = ControllerKind::kNonSpine;
  double amplitude = 0.0;      // alpha [rad]
  double period = 1.0;         // T [s]
  double initial_phase = 0.0;  // phi [rad]
  double time_step = 1e-3;     // t_s [s]
  double balance_target = 0.0; // R' >= 0 [rad], balance_spine only

  double angular_frequency() const;

  // Throws ParameterError on alpha < 0, t_s <= 0, t_s > T/100, or (for
  // balance_spine) R' outside [0, alpha] with alpha > 0.
  void Validate() const;
};

struct WarpState {
  double warped_phase = 0.0;  // f_T [rad]
  WarpSegment segment = WarpSegment::kFirstQuarter;
  double k = 1.0;
  std::int64_t step = 0;  // index of the next expected sample on the t_s grid
};

struct FlexionSample {
  double flexion = 0.0;  // R(t)
  WarpState state;       // state for the next call (t + t_s)
};

// Phase-rate scale for one segment. Throws ParameterError unless
// alpha > 0 and 0 <= R' <= alpha.
double WarpFactor(double balance_target, double amplitude,
                  WarpSegment segment);

// Segment in force on [t, t + t_s): first quarter on [nT/2, nT/2 + T/4).
WarpSegment SegmentAt(double period, double t);

// Evaluates R at t and advances the warp state by one step. t must equal
// state.step * t_s (SteppingError otherwise). balance_spine with alpha = 0
// emits R = 0 with k = 1.
FlexionSample FlexionAt(const SpineControllerParams& params,
                        const WarpState& state, double t);

// Owns the warp state of one trajectory and steps it along the t_s grid.
class SpineController {
 public:
  explicit SpineController(SpineControllerParams params);

  // R at step i (t = i * t_s); must be called with consecutive i from 0.
  double Step();

  const WarpState& state() const { return state_; }
  const SpineControllerParams& params() const { return params_; }
  // Warp state that was in force for the sample returned by the last Step().
  const WarpState& last_state() const { return last_state_; }
  double time_of_next_step() const;

 private:
  SpineControllerParams params_;
  WarpState state_;
  WarpState last_state_;
};

}  // namespace spinebal
