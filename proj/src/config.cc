#include "spinebal/config.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>

#include "spinebal/errors.h"

namespace spinebal {
namespace {

using nlohmann::json;

void RequireObject(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
}

void RejectUnknown(const json& j, const std::string& where,
                   std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) throw ConfigError("unknown key '" + where + "." + it.key() + "'");
  }
}

template <typename T>
void Read(const json& j, const char* key, const std::string& where, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + where + "." + key + "': " + e.what());
  }
}

void RequirePositive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ConfigError(std::string(name) + " must be finite and > 0");
  }
}

}  // namespace

std::vector<double> DefaultFrequencies() {
  std::vector<double> f;
  for (int m = 0; m <= 10; ++m) f.push_back((5.0 + 4.0 * m) / 10.0);
  return f;
}

const char* ComModeName(ComMode mode) {
  return mode == ComMode::kFixed ? "fixed" : "flexion-coupled";
}

ComMode ParseComMode(const std::string& name) {
  if (name == "fixed") return ComMode::kFixed;
  if (name == "flexion-coupled" || name == "flexion_coupled") {
    return ComMode::kFlexionCoupled;
  }
  throw ConfigError("unknown CoM mode '" + name +
                    "' (expected fixed or flexion-coupled)");
}

void ExperimentConfig::Validate() const {
  try {
    Geometry();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  RequirePositive(gait.stride_amplitude, "gait.stride_amplitude");
  Gait(1.0).Validate();
  if (!std::isfinite(controller.amplitude) || controller.amplitude < 0.0) {
    throw ConfigError("controller.amplitude must be finite and >= 0");
  }
  if (controller.amplitude > kMaxFlexion) {
    throw ConfigError("controller.amplitude must not exceed pi/2");
  }
  if (!std::isfinite(controller.initial_phase)) {
    throw ConfigError("controller.initial_phase must be finite");
  }
  if (controller.steps_per_period < 100 || controller.steps_per_period % 4 != 0) {
    throw ConfigError(
        "controller.steps_per_period must be a multiple of 4 and >= 100");
  }
  Com().Validate();
  Tilt().Validate();
  if (!(solver.range_lo < solver.range_hi) || solver.range_lo < -kMaxFlexion ||
      solver.range_hi > kMaxFlexion) {
    throw ConfigError("solver range must satisfy -pi/2 <= lo < hi <= pi/2");
  }
  RequirePositive(solver.tolerance, "solver.tolerance");
  if (solver.max_iterations < 1) {
    throw ConfigError("solver.max_iterations must be >= 1");
  }
  if (solver.probe_samples < 3) {
    throw ConfigError("solver.probe_samples must be >= 3");
  }
  if (sweep.frequencies.empty()) {
    throw ConfigError("sweep.frequencies must not be empty");
  }
  for (double f : sweep.frequencies) RequirePositive(f, "sweep frequency");
  if (sweep.repetitions < 1) throw ConfigError("sweep.repetitions must be >= 1");
  if (sweep.periods < 1) throw ConfigError("sweep.periods must be >= 1");
}

RobotGeometry ExperimentConfig::Geometry() const {
  return RobotGeometry::Make(geometry.spine_length, geometry.body_length,
                             geometry.hind_hip_halfwidth,
                             geometry.fore_hip_halfwidth);
}

GaitParams ExperimentConfig::Gait(double period) const {
  GaitParams g;
  g.period = period;
  g.stride_amplitude = gait.stride_amplitude;
  g.duty = gait.duty;
  g.phase_offsets = gait.phase_offsets;
  g.hind_stride_lag = gait.hind_stride_lag;
  return g;
}

ComPosition ExperimentConfig::Com() const {
  ComPosition c;
  c.cx = com.cx;
  c.cy = com.cy;
  c.mode = com.mode;
  c.spine_mass_fraction = com.spine_mass_fraction;
  return c;
}

TiltParams ExperimentConfig::Tilt() const {
  TiltParams t;
  t.roll_gain = tilt.roll_gain;
  t.pitch_gain = tilt.pitch_gain;
  t.damping = tilt.damping;
  t.reset_on_switch = tilt.reset_on_switch;
  return t;
}

json ConfigToJson(const ExperimentConfig& c) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["geometry"] = {{"spine_length", c.geometry.spine_length},
                   {"body_length", c.geometry.body_length},
                   {"hind_hip_halfwidth", c.geometry.hind_hip_halfwidth},
                   {"fore_hip_halfwidth", c.geometry.fore_hip_halfwidth}};
  j["gait"] = {{"stride_amplitude", c.gait.stride_amplitude},
               {"duty", c.gait.duty},
               {"phase_offsets", c.gait.phase_offsets},
               {"hind_stride_lag", c.gait.hind_stride_lag}};
  j["controller"] = {{"kind", std::string(ControllerKindName(c.controller.kind))},
                     {"amplitude", c.controller.amplitude},
                     {"initial_phase", c.controller.initial_phase},
                     {"steps_per_period", c.controller.steps_per_period}};
  j["com"] = {{"cx", c.com.cx},
              {"cy", c.com.cy},
              {"mode", ComModeName(c.com.mode)},
              {"spine_mass_fraction", c.com.spine_mass_fraction}};
  j["tilt"] = {{"roll_gain", c.tilt.roll_gain},
               {"pitch_gain", c.tilt.pitch_gain},
               {"damping", c.tilt.damping},
               {"reset_on_switch", c.tilt.reset_on_switch}};
  j["solver"] = {{"range_lo", c.solver.range_lo},
                 {"range_hi", c.solver.range_hi},
                 {"tolerance", c.solver.tolerance},
                 {"max_iterations", c.solver.max_iterations},
                 {"probe_samples", c.solver.probe_samples}};
  j["sweep"] = {{"frequencies", c.sweep.frequencies},
                {"repetitions", c.sweep.repetitions},
                {"periods", c.sweep.periods}};
  j["seed"] = c.seed;
  j["output_dir"] = c.output_dir;
  return j;
}

ExperimentConfig ConfigFromJson(const json& j) {
  ExperimentConfig c;
  RequireObject(j, "config");
  RejectUnknown(j, "config",
                {"schema_version", "geometry", "gait", "controller", "com",
                 "tilt", "solver", "sweep", "seed", "output_dir"});
  if (j.contains("schema_version")) {
    std::string v;
    Read(j, "schema_version", "config", v);
    if (v.substr(0, v.find('.')) != std::to_string(kSchemaMajor)) {
      throw ConfigError("unsupported config schema version '" + v + "'");
    }
  }
  if (j.contains("geometry")) {
    const json& g = j["geometry"];
    RequireObject(g, "geometry");
    RejectUnknown(g, "geometry",
                  {"spine_length", "body_length", "hind_hip_halfwidth",
                   "fore_hip_halfwidth"});
    Read(g, "spine_length", "geometry", c.geometry.spine_length);
    Read(g, "body_length", "geometry", c.geometry.body_length);
    Read(g, "hind_hip_halfwidth", "geometry", c.geometry.hind_hip_halfwidth);
    Read(g, "fore_hip_halfwidth", "geometry", c.geometry.fore_hip_halfwidth);
  }
  if (j.contains("gait")) {
    const json& g = j["gait"];
    RequireObject(g, "gait");
    RejectUnknown(g, "gait",
                  {"stride_amplitude", "duty", "phase_offsets",
                   "hind_stride_lag"});
    Read(g, "stride_amplitude", "gait", c.gait.stride_amplitude);
    Read(g, "duty", "gait", c.gait.duty);
    Read(g, "phase_offsets", "gait", c.gait.phase_offsets);
    Read(g, "hind_stride_lag", "gait", c.gait.hind_stride_lag);
  }
  if (j.contains("controller")) {
    const json& g = j["controller"];
    RequireObject(g, "controller");
    RejectUnknown(g, "controller",
                  {"kind", "amplitude", "initial_phase", "steps_per_period"});
    if (g.contains("kind")) {
      std::string kind;
      Read(g, "kind", "controller", kind);
      c.controller.kind = ParseControllerKind(kind);
    }
    Read(g, "amplitude", "controller", c.controller.amplitude);
    Read(g, "initial_phase", "controller", c.controller.initial_phase);
    Read(g, "steps_per_period", "controller", c.controller.steps_per_period);
  }
  if (j.contains("com")) {
    const json& g = j["com"];
    RequireObject(g, "com");
    RejectUnknown(g, "com", {"cx", "cy", "mode", "spine_mass_fraction"});
    Read(g, "cx", "com", c.com.cx);
    Read(g, "cy", "com", c.com.cy);
    if (g.contains("mode")) {
      std::string mode;
      Read(g, "mode", "com", mode);
      c.com.mode = ParseComMode(mode);
    }
    Read(g, "spine_mass_fraction", "com", c.com.spine_mass_fraction);
  }
  if (j.contains("tilt")) {
    const json& g = j["tilt"];
    RequireObject(g, "tilt");
    RejectUnknown(g, "tilt",
                  {"roll_gain", "pitch_gain", "damping", "reset_on_switch"});
    Read(g, "roll_gain", "tilt", c.tilt.roll_gain);
    Read(g, "pitch_gain", "tilt", c.tilt.pitch_gain);
    Read(g, "damping", "tilt", c.tilt.damping);
    Read(g, "reset_on_switch", "tilt", c.tilt.reset_on_switch);
  }
  if (j.contains("solver")) {
    const json& g = j["solver"];
    RequireObject(g, "solver");
    RejectUnknown(g, "solver",
                  {"range_lo", "range_hi", "tolerance", "max_iterations",
                   "probe_samples"});
    Read(g, "range_lo", "solver", c.solver.range_lo);
    Read(g, "range_hi", "solver", c.solver.range_hi);
    Read(g, "tolerance", "solver", c.solver.tolerance);
    Read(g, "max_iterations", "solver", c.solver.max_iterations);
    Read(g, "probe_samples", "solver", c.solver.probe_samples);
  }
  if (j.contains("sweep")) {
    const json& g = j["sweep"];
    RequireObject(g, "sweep");
    RejectUnknown(g, "sweep", {"frequencies", "repetitions", "periods"});
    Read(g, "frequencies", "sweep", c.sweep.frequencies);
    Read(g, "repetitions", "sweep", c.sweep.repetitions);
    Read(g, "periods", "sweep", c.sweep.periods);
  }
  Read(j, "seed", "config", c.seed);
  Read(j, "output_dir", "config", c.output_dir);
  return c;
}

ExperimentConfig LoadConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file '" + path + "'");
  json j;
  try {
    j = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " +
                      e.what());
  }
  ExperimentConfig c = ConfigFromJson(j);
  c.Validate();
  return c;
}

}  // namespace spinebal
