#pragma once

// Runs of the closed loop gait -> spine controller -> balance -> tilt, one
// per (controller, frequency, repetition), and their aggregation.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinebal/config.h"
#include "spinebal/solver.h"
#include "spinebal/trace_io.h"

namespace spinebal {

inline constexpr std::array<ControllerKind, 3> kAllControllers = {
    ControllerKind::kNonSpine, ControllerKind::kSpine,
    ControllerKind::kBalanceSpine};

// Problem at the first balance instant t = T/4 (LF+RH in stance). The stride
// depends only on the gait phase, so the result does not depend on T.
BalanceProblem MakeBalanceProblem(const ExperimentConfig& config);
SolverResult SolveForConfig(const ExperimentConfig& config);

// What a controller kind needs from the solver: R' and the phase that makes
// R(T/4) carry the sign of the signed root. Both spine controllers share the
// phase so that the balance controller differs from the plain one only by the
// warp.
struct ControllerPlan {
  double balance_target = 0.0;
  double effective_phase = 0.0;
  std::vector<std::string> warnings;
};

// non-spine never consults the solver. spine uses the solved sign when a
// root exists and the configured phase otherwise. balance-spine propagates
// NoRootError; an R' above alpha surfaces as ParameterError when the
// controller is built.
ControllerPlan PlanController(const ExperimentConfig& config,
                              ControllerKind kind,
                              const std::optional<SolverResult>& solved);

SpineControllerParams ControllerParams(const ExperimentConfig& config,
                                       ControllerKind kind, double period,
                                       const ControllerPlan& plan);

std::uint64_t CellSeed(std::uint64_t seed, std::size_t frequency_index,
                       std::size_t repetition);
// Uniform integer in [0, steps) drawn from the run seed.
std::int64_t PhaseOffsetSteps(std::uint64_t cell_seed, int steps);

// One run. Gait and controller both start at t = 0; the first
// phase_offset_steps steps are a warm-up, and recording starts at the first
// half-stride boundary at or after it and spans sweep.periods periods
// (periods * steps + 1 rows, endpoint included).
ExperimentRecord RunCell(const ExperimentConfig& config, ControllerKind kind,
                         std::size_t frequency_index, std::size_t repetition,
                         const ControllerPlan& plan);

struct SweepResult {
  ControllerKind controller = ControllerKind::kNonSpine;
  std::optional<SolverResult> solved;
  ControllerPlan plan;
  // frequency-major: index = f * repetitions + rep
  std::vector<ExperimentRecord> records;
};

// Cells run on up to `jobs` threads; results are merged by index, so the
// output does not depend on jobs. If out_dir is set each record is written
// by the thread that produced it. keep_rows = false drops traces after the
// metrics are taken.
SweepResult RunSweep(const ExperimentConfig& config, ControllerKind kind,
                     unsigned jobs,
                     const std::optional<std::filesystem::path>& out_dir,
                     bool keep_rows = true);

std::string TraceFileName(ControllerKind kind, std::size_t frequency_index,
                          std::size_t repetition);

struct Stat {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation, 0 for one value
};

Stat Summarize(const std::vector<double>& values);

struct FrequencySummary {
  double frequency = 0.0;
  Stat mean_abs_roll;
  Stat mean_abs_pitch;
  Stat half_stride_signed_area;
  Stat roll_at_switch;
};

std::vector<FrequencySummary> SummarizeSweep(const ExperimentConfig& config,
                                             const SweepResult& sweep);
// Keyed by the shortest string that round-trips the frequency.
nlohmann::json SummaryToJson(const ExperimentConfig& config,
                             const SweepResult& sweep);

struct CompareRow {
  double frequency = 0.0;
  ControllerKind controller = ControllerKind::kNonSpine;
  double mean_abs_roll = 0.0;
  double mean_abs_pitch = 0.0;
  double half_stride_signed_area = 0.0;
};

struct CompareWinners {
  double frequency = 0.0;
  ControllerKind roll = ControllerKind::kNonSpine;
  ControllerKind pitch = ControllerKind::kNonSpine;
  ControllerKind area = ControllerKind::kNonSpine;  // smallest |area|
};

struct CompareResult {
  std::vector<CompareRow> rows;  // frequency-major, controllers in kAllControllers order
  std::vector<CompareWinners> winners;
  std::optional<SolverResult> solved;
};

CompareResult RunCompare(const ExperimentConfig& config, unsigned jobs);
nlohmann::json CompareToJson(const CompareResult& result);
std::string CompareTable(const CompareResult& result);

}  // namespace spinebal
