#include "spinebal/spine_controller.h"

#include <cmath>
#include <numbers>

#include "spinebal/errors.h"

namespace spinebal {
namespace {

constexpr double kGridTolerance = 1e-6;  // in units of t_s
constexpr double kQuarterSnap = 1e-9;    // in units of T/4

}  // namespace

std::string_view ControllerKindName(ControllerKind kind) {
  switch (kind) {
    case ControllerKind::kNonSpine:
      return "non-spine";
    case ControllerKind::kSpine:
      return "spine";
    case ControllerKind::kBalanceSpine:
      return "balance-spine";
  }
  return "?";
}

ControllerKind ParseControllerKind(std::string_view name) {
  if (name == "non-spine" || name == "non_spine") {
    return ControllerKind::kNonSpine;
  }
  if (name == "spine") return ControllerKind::kSpine;
  if (name == "balance-spine" || name == "balance_spine") {
    return ControllerKind::kBalanceSpine;
  }
  throw ConfigError("unknown controller kind '" + std::string(name) +
                    "' (expected non-spine, spine or balance-spine)");
}

double SpineControllerParams::angular_frequency() const {
  return 2.0 * std::numbers::pi / period;
}

void SpineControllerParams::Validate() const {
  if (!std::isfinite(amplitude) || amplitude < 0.0) {
    throw ParameterError("spine amplitude must be finite and >= 0");
  }
  if (!std::isfinite(period) || period <= 0.0) {
    throw ParameterError("controller period must be > 0");
  }
  if (!std::isfinite(initial_phase)) {
    throw ParameterError("initial phase is not finite");
  }
  if (!std::isfinite(time_step) || time_step <= 0.0) {
    throw ParameterError("time step must be > 0");
  }
  if (time_step > period / 100.0 * (1.0 + 1e-12)) {
    throw ParameterError("time step must be <= T/100");
  }
  if (kind == ControllerKind::kBalanceSpine && amplitude > 0.0) {
    if (!std::isfinite(balance_target) || balance_target < 0.0) {
      throw ParameterError("balance target R' must be >= 0");
    }
    if (balance_target > amplitude) {
      throw ParameterError(
          "balance target R' = " + std::to_string(balance_target) +
          " rad exceeds the spine amplitude alpha = " +
          std::to_string(amplitude) +
          " rad; arccos(R'/alpha) is undefined. Raise alpha to at least R'.");
    }
  }
}

double WarpFactor(double balance_target, double amplitude,
                  WarpSegment segment) {
  if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
    throw ParameterError("warp factor needs alpha > 0");
  }
  if (!(balance_target >= 0.0) || balance_target > amplitude) {
    throw ParameterError("warp factor needs 0 <= R' <= alpha");
  }
  const double first =
      2.0 * std::acos(balance_target / amplitude) / std::numbers::pi;
  return segment == WarpSegment::kFirstQuarter ? first : 2.0 - first;
}

WarpSegment SegmentAt(double period, double t) {
  const auto quarter =
      static_cast<std::int64_t>(std::floor(4.0 * t / period + kQuarterSnap));
  return quarter % 2 == 0 ? WarpSegment::kFirstQuarter
                          : WarpSegment::kSecondQuarter;
}

FlexionSample FlexionAt(const SpineControllerParams& params,
                        const WarpState& state, double t) {
  const double grid = t / params.time_step;
  if (!std::isfinite(t) ||
      std::abs(grid - static_cast<double>(state.step)) > kGridTolerance) {
    throw SteppingError("controller expected t = " +
                        std::to_string(state.step * params.time_step) +
                        " s on the t_s grid, got " + std::to_string(t));
  }
  const double omega = params.angular_frequency();
  FlexionSample out;
  out.state = state;
  out.state.step = state.step + 1;

  switch (params.kind) {
    case ControllerKind::kNonSpine:
      out.flexion = 0.0;
      break;
    case ControllerKind::kSpine:
      out.flexion = params.amplitude * std::cos(omega * t + params.initial_phase);
      out.state.k = 1.0;
      out.state.segment = SegmentAt(params.period, t);
      out.state.warped_phase = state.warped_phase + omega * params.time_step;
      break;
    case ControllerKind::kBalanceSpine: {
      const WarpSegment segment = SegmentAt(params.period, t);
      const double k = params.amplitude > 0.0
                           ? WarpFactor(params.balance_target,
                                        params.amplitude, segment)
                           : 1.0;
      out.flexion = params.amplitude *
                    std::cos(state.warped_phase + params.initial_phase);
      out.state.segment = segment;
      out.state.k = k;
      out.state.warped_phase = state.warped_phase + k * omega * params.time_step;
      break;
    }
  }
  return out;
}

SpineController::SpineController(SpineControllerParams params)
    : params_(params) {
  params_.Validate();
}

double SpineController::Step() {
  const double t = time_of_next_step();
  const FlexionSample s = FlexionAt(params_, state_, t);
  last_state_ = state_;
  last_state_.segment = s.state.segment;
  last_state_.k = s.state.k;
  state_ = s.state;
  return s.flexion;
}

double SpineController::time_of_next_step() const {
  return static_cast<double>(state_.step) * params_.time_step;
}

}  // namespace spinebal
