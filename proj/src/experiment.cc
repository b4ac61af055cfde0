#include "spinebal/experiment.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <random>
#include <thread>

#include "spinebal/balance.h"
#include "spinebal/errors.h"
#include "spinebal/gait.h"

namespace spinebal {
namespace {

using nlohmann::json;

std::string ShortestDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::optional<SolverResult> SolveIfNeeded(const ExperimentConfig& config,
                                          ControllerKind kind) {
  if (kind == ControllerKind::kNonSpine) return std::nullopt;
  if (kind == ControllerKind::kBalanceSpine) return SolveForConfig(config);
  try {
    return SolveForConfig(config);
  } catch (const NoRootError&) {
    return std::nullopt;
  }
}

SweepResult RunSweepWith(const ExperimentConfig& config, ControllerKind kind,
                         unsigned jobs,
                         const std::optional<std::filesystem::path>& out_dir,
                         bool keep_rows, std::optional<SolverResult> solved) {
  config.Validate();
  SweepResult out;
  out.controller = kind;
  out.solved = std::move(solved);
  out.plan = PlanController(config, kind, out.solved);
  // Surface parameter errors before any thread starts.
  SpineController probe(ControllerParams(config, kind, 1.0, out.plan));

  const std::size_t reps = static_cast<std::size_t>(config.sweep.repetitions);
  const std::size_t cells = config.sweep.frequencies.size() * reps;
  out.records.resize(cells);
  std::vector<std::exception_ptr> errors(cells);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < cells; i = next++) {
      try {
        ExperimentRecord rec = RunCell(config, kind, i / reps, i % reps, out.plan);
        if (out_dir) WriteTrace(rec, *out_dir / TraceFileName(kind, i / reps, i % reps));
        if (!keep_rows) {
          rec.rows.clear();
          rec.rows.shrink_to_fit();
        }
        out.records[i] = std::move(rec);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

BalanceProblem MakeBalanceProblem(const ExperimentConfig& config) {
  const GaitParams gait = config.Gait(1.0);
  gait.Validate();
  BalanceProblem p;
  p.geom = config.Geometry();
  p.stride_at_tb =
      StrideOfDiagonal(gait, Diagonal::kLeftForeRightHind, gait.period / 4.0);
  p.com = config.Com();
  p.range_lo = config.solver.range_lo;
  p.range_hi = config.solver.range_hi;
  p.tolerance = config.solver.tolerance;
  p.max_iterations = config.solver.max_iterations;
  return p;
}

SolverResult SolveForConfig(const ExperimentConfig& config) {
  return SolveBalanceFlexion(
      MakeBalanceProblem(config),
      static_cast<std::size_t>(config.solver.probe_samples));
}

ControllerPlan PlanController(const ExperimentConfig& config,
                              ControllerKind kind,
                              const std::optional<SolverResult>& solved) {
  ControllerPlan plan;
  plan.effective_phase = config.controller.initial_phase;
  if (kind == ControllerKind::kNonSpine) return plan;
  if (!solved) {
    if (kind == ControllerKind::kBalanceSpine) {
      throw Error("balance-spine needs a solved balance flexion");
    }
    plan.warnings.push_back("no balance root; spine uses the configured phase");
    return plan;
  }
  plan.warnings = solved->warnings;
  if (solved->root < 0.0) plan.effective_phase += std::numbers::pi;
  if (kind == ControllerKind::kBalanceSpine) {
    plan.balance_target = solved->r_prime;
    if (config.controller.amplitude == 0.0) {
      plan.warnings.push_back(
          "alpha = 0: balance-spine holds the spine straight");
    }
  }
  return plan;
}

SpineControllerParams ControllerParams(const ExperimentConfig& config,
                                       ControllerKind kind, double period,
                                       const ControllerPlan& plan) {
  SpineControllerParams p;
  p.kind = kind;
  p.amplitude = config.controller.amplitude;
  p.period = period;
  p.initial_phase = plan.effective_phase;
  p.time_step = period / static_cast<double>(config.controller.steps_per_period);
  p.balance_target = plan.balance_target;
  return p;
}

std::uint64_t CellSeed(std::uint64_t seed, std::size_t frequency_index,
                       std::size_t repetition) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(frequency_index),
                    static_cast<std::uint32_t>(repetition)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

std::int64_t PhaseOffsetSteps(std::uint64_t cell_seed, int steps) {
  std::mt19937_64 engine(cell_seed);
  const double u = static_cast<double>(engine() >> 11) * 0x1.0p-53;
  const auto k = static_cast<std::int64_t>(u * steps);
  return std::min<std::int64_t>(k, steps - 1);
}

ExperimentRecord RunCell(const ExperimentConfig& config, ControllerKind kind,
                         std::size_t frequency_index, std::size_t repetition,
                         const ControllerPlan& plan) {
  const double frequency = config.sweep.frequencies.at(frequency_index);
  const double period = 1.0 / frequency;
  const int steps = config.controller.steps_per_period;
  const std::int64_t half = steps / 2;

  const RobotGeometry geom = config.Geometry();
  const GaitParams gait = config.Gait(period);
  const ComPosition com = config.Com();
  SpineController spine(ControllerParams(config, kind, period, plan));
  const double dt = spine.params().time_step;

  ExperimentRecord rec;
  rec.config = config;
  rec.controller = kind;
  rec.frequency = frequency;
  rec.seed = CellSeed(config.seed, frequency_index, repetition);
  rec.phase_offset_steps = PhaseOffsetSteps(rec.seed, steps);
  rec.balance_target = plan.balance_target;
  rec.effective_phase = plan.effective_phase;

  const std::int64_t start = (rec.phase_offset_steps + half - 1) / half * half;
  const std::int64_t stop = start + static_cast<std::int64_t>(config.sweep.periods) * steps;
  rec.rows.reserve(static_cast<std::size_t>(stop - start + 1));
  std::vector<double> dis, longitudinal;
  dis.reserve(rec.rows.capacity());
  longitudinal.reserve(rec.rows.capacity());
  Diagonal first = Diagonal::kLeftForeRightHind;

  for (std::int64_t i = 0; i <= stop; ++i) {
    const double flexion = spine.Step();
    if (i < start) continue;
    const WarpState& ws = spine.last_state();
    const double t = static_cast<double>(i) * dt;
    const BalanceSample s = EvaluateBalance(geom, gait, com, t, flexion);
    if (i == start) first = s.diagonal;
    TraceRow row;
    row.t = t;
    row.l_f = s.stride_fore;
    row.l_h = s.stride_hind;
    row.flexion = flexion;
    row.warped_phase = ws.warped_phase;
    row.k = ws.k;
    row.fx = s.footholds.fore.x;
    row.fy = s.footholds.fore.y;
    row.hx = s.footholds.hind.x;
    row.hy = s.footholds.hind.y;
    row.dis = s.dis;
    rec.rows.push_back(row);
    dis.push_back(s.dis);
    longitudinal.push_back(s.longitudinal);
  }

  const TiltParams tilt = config.Tilt();
  const auto h = static_cast<std::size_t>(half);
  const std::vector<double> roll = SimulateRoll(dis, tilt, dt, h);
  const std::vector<double> pitch = SimulatePitch(longitudinal, tilt, dt, h);
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    rec.rows[i].theta_roll = roll[i];
    rec.rows[i].theta_pitch = pitch[i];
  }
  rec.metrics = HalfStrideMetrics(roll, pitch, dis, dt, h, first);
  return rec;
}

SweepResult RunSweep(const ExperimentConfig& config, ControllerKind kind,
                     unsigned jobs,
                     const std::optional<std::filesystem::path>& out_dir,
                     bool keep_rows) {
  config.Validate();
  return RunSweepWith(config, kind, jobs, out_dir, keep_rows,
                      SolveIfNeeded(config, kind));
}

std::string TraceFileName(ControllerKind kind, std::size_t frequency_index,
                          std::size_t repetition) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%s_f%02zu_r%02zu.csv",
                std::string(ControllerKindName(kind)).c_str(), frequency_index,
                repetition);
  return buf;
}

Stat Summarize(const std::vector<double>& values) {
  Stat s;
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.std = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

std::vector<FrequencySummary> SummarizeSweep(const ExperimentConfig& config,
                                             const SweepResult& sweep) {
  const std::size_t reps = static_cast<std::size_t>(config.sweep.repetitions);
  std::vector<FrequencySummary> out;
  for (std::size_t f = 0; f < config.sweep.frequencies.size(); ++f) {
    std::vector<double> roll, pitch, area, sw;
    for (std::size_t r = 0; r < reps; ++r) {
      const BalanceMetrics& m = sweep.records.at(f * reps + r).metrics;
      roll.push_back(m.mean_abs_roll);
      pitch.push_back(m.mean_abs_pitch);
      area.push_back(m.half_stride_signed_area);
      sw.push_back(m.roll_at_switch);
    }
    FrequencySummary s;
    s.frequency = config.sweep.frequencies[f];
    s.mean_abs_roll = Summarize(roll);
    s.mean_abs_pitch = Summarize(pitch);
    s.half_stride_signed_area = Summarize(area);
    s.roll_at_switch = Summarize(sw);
    out.push_back(s);
  }
  return out;
}

json SummaryToJson(const ExperimentConfig& config, const SweepResult& sweep) {
  auto stat = [](const Stat& s) { return json{{"mean", s.mean}, {"std", s.std}}; };
  json freqs = json::object();
  for (const FrequencySummary& s : SummarizeSweep(config, sweep)) {
    freqs[ShortestDouble(s.frequency)] = {
        {"frequency", s.frequency},
        {"mean_abs_roll", stat(s.mean_abs_roll)},
        {"mean_abs_pitch", stat(s.mean_abs_pitch)},
        {"half_stride_signed_area", stat(s.half_stride_signed_area)},
        {"roll_at_switch", stat(s.roll_at_switch)}};
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["controller"] = std::string(ControllerKindName(sweep.controller));
  j["repetitions"] = config.sweep.repetitions;
  j["seed"] = config.seed;
  j["balance_target"] = sweep.plan.balance_target;
  j["effective_phase"] = sweep.plan.effective_phase;
  j["solver"] = sweep.solved ? SolverReportToJson(*sweep.solved) : json(nullptr);
  j["warnings"] = sweep.plan.warnings;
  j["frequencies"] = freqs;
  return j;
}

CompareResult RunCompare(const ExperimentConfig& config, unsigned jobs) {
  config.Validate();
  CompareResult out;
  try {
    out.solved = SolveForConfig(config);
  } catch (const NoRootError&) {
    out.solved = std::nullopt;
  }
  std::vector<std::vector<FrequencySummary>> per_kind;
  for (ControllerKind kind : kAllControllers) {
    const std::optional<SolverResult> solved =
        kind == ControllerKind::kNonSpine ? std::nullopt : out.solved;
    if (kind == ControllerKind::kBalanceSpine && !solved) {
      SolveForConfig(config);  // rethrows the bracket failure
    }
    const SweepResult sweep =
        RunSweepWith(config, kind, jobs, std::nullopt, false, solved);
    per_kind.push_back(SummarizeSweep(config, sweep));
  }
  for (std::size_t f = 0; f < config.sweep.frequencies.size(); ++f) {
    CompareWinners w;
    w.frequency = config.sweep.frequencies[f];
    double best_roll = INFINITY, best_pitch = INFINITY, best_area = INFINITY;
    for (std::size_t k = 0; k < kAllControllers.size(); ++k) {
      const FrequencySummary& s = per_kind[k][f];
      CompareRow row;
      row.frequency = s.frequency;
      row.controller = kAllControllers[k];
      row.mean_abs_roll = s.mean_abs_roll.mean;
      row.mean_abs_pitch = s.mean_abs_pitch.mean;
      row.half_stride_signed_area = s.half_stride_signed_area.mean;
      out.rows.push_back(row);
      if (row.mean_abs_roll < best_roll) {
        best_roll = row.mean_abs_roll;
        w.roll = row.controller;
      }
      if (row.mean_abs_pitch < best_pitch) {
        best_pitch = row.mean_abs_pitch;
        w.pitch = row.controller;
      }
      if (std::abs(row.half_stride_signed_area) < best_area) {
        best_area = std::abs(row.half_stride_signed_area);
        w.area = row.controller;
      }
    }
    out.winners.push_back(w);
  }
  return out;
}

json CompareToJson(const CompareResult& result) {
  json rows = json::array();
  for (const CompareRow& r : result.rows) {
    rows.push_back({{"frequency", r.frequency},
                    {"controller", std::string(ControllerKindName(r.controller))},
                    {"mean_abs_roll", r.mean_abs_roll},
                    {"mean_abs_pitch", r.mean_abs_pitch},
                    {"half_stride_signed_area", r.half_stride_signed_area}});
  }
  json winners = json::array();
  for (const CompareWinners& w : result.winners) {
    winners.push_back({{"frequency", w.frequency},
                       {"mean_abs_roll", std::string(ControllerKindName(w.roll))},
                       {"mean_abs_pitch", std::string(ControllerKindName(w.pitch))},
                       {"half_stride_signed_area",
                        std::string(ControllerKindName(w.area))}});
  }
  json j;
  j["schema_version"] = kSchemaVersion;
  j["solver"] = result.solved ? SolverReportToJson(*result.solved) : json(nullptr);
  j["rows"] = rows;
  j["winners"] = winners;
  return j;
}

std::string CompareTable(const CompareResult& result) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %-14s %14s %14s %16s\n", "freq_hz",
                "controller", "mean|roll|", "mean|pitch|", "signed_area");
  out += buf;
  for (const CompareRow& r : result.rows) {
    std::snprintf(buf, sizeof buf, "%-8.3g %-14s %14.6e %14.6e %16.6e\n",
                  r.frequency, std::string(ControllerKindName(r.controller)).c_str(),
                  r.mean_abs_roll, r.mean_abs_pitch, r.half_stride_signed_area);
    out += buf;
  }
  out += "\nwinners (smallest value; |area| for the signed area)\n";
  for (const CompareWinners& w : result.winners) {
    std::snprintf(buf, sizeof buf, "%-8.3g roll=%s pitch=%s area=%s\n",
                  w.frequency, std::string(ControllerKindName(w.roll)).c_str(),
                  std::string(ControllerKindName(w.pitch)).c_str(),
                  std::string(ControllerKindName(w.area)).c_str());
    out += buf;
  }
  return out;
}

}  // namespace spinebal
