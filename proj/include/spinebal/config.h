#pragma once

// Declarative experiment configuration. Every field has a default; a JSON
// file only needs the keys it overrides. Unknown keys are rejected.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinebal/balance.h"
#include "spinebal/gait.h"
#include "spinebal/kinematics.h"
#include "spinebal/spine_controller.h"
#include "spinebal/tilt_simulator.h"

namespace spinebal {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr int kSchemaMajor = 1;

struct GeometryConfig {
  double spine_length = 0.16;
  double body_length = 0.08;
  double hind_hip_halfwidth = 0.02;
  double fore_hip_halfwidth = 0.02;

  friend bool operator==(const GeometryConfig&, const GeometryConfig&) = default;
};

struct GaitConfig {
  double stride_amplitude = 0.05;
  double duty = 0.5;
  std::array<double, 4> phase_offsets = {0.0, 0.5, 0.5, 0.0};
  double hind_stride_lag = 0.0;

  friend bool operator==(const GaitConfig&, const GaitConfig&) = default;
};

struct ControllerConfig {
  ControllerKind kind = ControllerKind::kBalanceSpine;
  double amplitude = 0.15;
  double initial_phase = 0.0;
  int steps_per_period = 1000;

  friend bool operator==(const ControllerConfig&,
                         const ControllerConfig&) = default;
};

struct ComConfig {
  double cx = -0.15;
  double cy = 0.0;
  ComMode mode = ComMode::kFixed;
  double spine_mass_fraction = 0.0;

  friend bool operator==(const ComConfig&, const ComConfig&) = default;
};

struct TiltConfig {
  double roll_gain = 200.0;
  double pitch_gain = 200.0;
  double damping = 20.0;
  bool reset_on_switch = true;

  friend bool operator==(const TiltConfig&, const TiltConfig&) = default;
};

struct SolverConfig {
  double range_lo = -kMaxFlexion;
  double range_hi = kMaxFlexion;
  double tolerance = 1e-9;
  int max_iterations = 200;
  int probe_samples = 1001;

  friend bool operator==(const SolverConfig&, const SolverConfig&) = default;
};

// 0.5 + 0.4 m Hz, m = 0..10
std::vector<double> DefaultFrequencies();

struct SweepConfig {
  std::vector<double> frequencies = DefaultFrequencies();
  int repetitions = 10;
  int periods = 4;  // recorded stride periods per run

  friend bool operator==(const SweepConfig&, const SweepConfig&) = default;
};

struct ExperimentConfig {
  GeometryConfig geometry;
  GaitConfig gait;
  ControllerConfig controller;
  ComConfig com;
  TiltConfig tilt;
  SolverConfig solver;
  SweepConfig sweep;
  std::uint64_t seed = 20240601;
  std::string output_dir = "out";

  friend bool operator==(const ExperimentConfig&,
                         const ExperimentConfig&) = default;

  // Throws ConfigError (or DomainError from the geometry) on bad values.
  void Validate() const;

  RobotGeometry Geometry() const;
  GaitParams Gait(double period) const;
  ComPosition Com() const;
  TiltParams Tilt() const;
};

nlohmann::json ConfigToJson(const ExperimentConfig& config);
// Missing keys keep their defaults. Throws ConfigError on unknown keys or
// wrong types.
ExperimentConfig ConfigFromJson(const nlohmann::json& j);
// Throws IoError if the file cannot be read, ConfigError if it is not valid.
ExperimentConfig LoadConfig(const std::string& path);

const char* ComModeName(ComMode mode);
ComMode ParseComMode(const std::string& name);

}  // namespace spinebal
