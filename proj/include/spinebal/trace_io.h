#pragma once

// CSV traces with a JSON sidecar, plus the JSON reports written by the CLI.
// Floats are written with 17 significant digits so every double survives a
// write/read cycle bit-exactly.

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "spinebal/config.h"
#include "spinebal/solver.h"
#include "spinebal/spine_controller.h"
#include "spinebal/tilt_simulator.h"

namespace spinebal {

inline constexpr std::array<std::string_view, 13> kTraceColumns = {
    "t",  "l_f", "l_h", "R",   "f_T",        "k",          "fx",
    "fy", "hx",  "hy",  "dis", "theta_roll", "theta_pitch"};

struct TraceRow {
  double t = 0.0;
  double l_f = 0.0;
  double l_h = 0.0;
  double flexion = 0.0;
  double warped_phase = 0.0;
  double k = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  double hx = 0.0;
  double hy = 0.0;
  double dis = 0.0;
  double theta_roll = 0.0;
  double theta_pitch = 0.0;

  friend bool operator==(const TraceRow&, const TraceRow&) = default;
};

struct ExperimentRecord {
  ExperimentConfig config;
  ControllerKind controller = ControllerKind::kNonSpine;
  double frequency = 1.0;        // [Hz]
  std::uint64_t seed = 0;        // per-run seed derived from config.seed
  std::int64_t phase_offset_steps = 0;
  double balance_target = 0.0;   // R' handed to the controller
  double effective_phase = 0.0;  // phi actually used by the controller
  std::vector<TraceRow> rows;
  BalanceMetrics metrics;

  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

// Always 17 significant digits.
std::string FormatDouble(double v);
// Throws ParseError for malformed or non-finite tokens.
double ParseDouble(std::string_view token);

// Writes <csv_path> and <csv_path minus .csv>.json. Parent directories are
// created. Throws IoError with the path on failure.
void WriteTrace(const ExperimentRecord& record,
                const std::filesystem::path& csv_path);
// Throws IoError if either file is missing, ParseError (with line number for
// the CSV) on malformed content or an unknown schema major.
ExperimentRecord ReadTrace(const std::filesystem::path& csv_path);
std::filesystem::path SidecarPath(const std::filesystem::path& csv_path);

nlohmann::json MetricsToJson(const BalanceMetrics& m);
BalanceMetrics MetricsFromJson(const nlohmann::json& j);
nlohmann::json SolverReportToJson(const SolverResult& r);

// Writes JSON with a trailing newline; throws IoError.
void WriteJsonFile(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace spinebal
