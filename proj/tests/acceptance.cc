#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "spinebal/balance.h"
#include "spinebal/experiment.h"
#include "spinebal/solver.h"
#include "spinebal/spine_controller.h"
#include "spinebal/trace_io.h"

namespace {

using namespace spinebal;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

unsigned Jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

// 1: series/direct agreement at the switch and the zero-flexion limit
Outcome SeriesBranch() {
  std::mt19937_64 eng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  bool exact_at_zero = true;
  for (int i = 0; i < 1000; ++i) {
    const double ls = 0.02 + 0.5 * u(eng), lb = 0.02 + 0.5 * u(eng);
    const double lhh = 0.005 + 0.1 * u(eng), lfh = 0.005 + 0.1 * u(eng);
    const double lh = -0.1 + 0.2 * u(eng);
    const auto g = RobotGeometry::Make(ls, lb, lhh, lfh);
    const double th_below = std::nextafter(kSeriesSwitchAngle, 0.0);
    // direct closed form evaluated here, independent of the library branch
    auto direct = [&](double th) {
      return std::pair{lh * std::cos(th) + lhh * std::sin(th) + ls - ls * std::sin(th) / th,
                       ls * (1 - std::cos(th)) / th + lhh * std::cos(th) - lh * std::sin(th)};
    };
    auto series = [&](double th) {
      const double s = 1 - th * th / 6 + th * th * th * th / 120;
      const double c = th / 2 - th * th * th / 24;
      return std::pair{lh * std::cos(th) + lhh * std::sin(th) + ls - ls * s,
                       ls * c + lhh * std::cos(th) - lh * std::sin(th)};
    };
    const auto lib_below = ComputeHindDisplacement(g, lh, th_below / 2);
    const auto lib_at = ComputeHindDisplacement(g, lh, kSeriesSwitchAngle / 2);
    const auto d = direct(th_below);
    const auto s = series(kSeriesSwitchAngle);
    worst = std::max({worst, std::abs(lib_below.x - d.first),
                      std::abs(lib_below.y - d.second),
                      std::abs(lib_at.x - s.first), std::abs(lib_at.y - s.second)});
    const auto zero = ComputeHindDisplacement(g, lh, 0.0);
    exact_at_zero = exact_at_zero && zero.x == lh && zero.y == lhh;
  }
  return {worst < 1e-9 && exact_at_zero,
          "max branch gap " + Num(worst) + " m, R=0 exact: " +
              (exact_at_zero ? "yes" : "no")};
}

// 2: support-line incidence and agreement with a two-point line
Outcome Incidence() {
  std::mt19937_64 eng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst_res = 0.0, worst_dir = 0.0;
  bool positive = true;
  for (int i = 0; i < 10000; ++i) {
    const auto g = RobotGeometry::Make(0.02 + 0.5 * u(eng), 0.02 + 0.5 * u(eng),
                                       0.005 + 0.1 * u(eng), 0.005 + 0.1 * u(eng));
    StrideState s{-0.1 + 0.2 * u(eng), -0.1 + 0.2 * u(eng), 0.0,
                  u(eng) < 0.5 ? Diagonal::kLeftForeRightHind
                               : Diagonal::kRightForeLeftHind};
    const double r = -kPi / 2 + kPi * u(eng);
    const SupportLine l = ComputeSupportLine(g, s, r);
    const Footholds f = ComputeFootholds(g, s, r);
    worst_res = std::max({worst_res, std::abs(l.Residual(f.fore)),
                          std::abs(l.Residual(f.hind))});
    const double dx = f.fore.x - f.hind.x, dy = f.fore.y - f.hind.y;
    const double on = std::hypot(dx, dy);
    const double oa = -dy / on, ob = dx / on, oc = -(oa * f.hind.x + ob * f.hind.y);
    const double n = std::hypot(l.a, l.b);
    positive = positive && (l.a * oa + l.b * ob) > 0;
    worst_dir = std::max({worst_dir, std::abs(l.a / n - oa), std::abs(l.b / n - ob),
                          std::abs(l.c / n - oc)});
  }
  return {worst_res < 1e-12 && worst_dir < 1e-12 && positive,
          "max incidence " + Num(worst_res) + ", max coefficient gap " +
              Num(worst_dir)};
}

// 3: monotone dis(R) with a single crossing at the balance instant
Outcome Monotonicity() {
  const ExperimentConfig config;
  const BalanceProblem p = MakeBalanceProblem(config);
  const int n = 100000;
  const double spacing = kPi / (n - 1);
  std::vector<double> d(n);
  for (int i = 0; i < n; ++i) {
    const double r = i == n - 1 ? kPi / 2 : -kPi / 2 + spacing * i;
    d[i] = BalanceDistance(p.geom, p.stride_at_tb, r, p.com);
  }
  bool inc = true, dec = true;
  int changes = 0, cross = -1;
  for (int i = 1; i < n; ++i) {
    inc = inc && d[i] > d[i - 1];
    dec = dec && d[i] < d[i - 1];
    if ((d[i] > 0) != (d[i - 1] > 0)) {
      ++changes;
      cross = i - 1;
    }
  }
  bool root_ok = false;
  double residual = NAN;
  if (changes == 1) {
    const double r0 = -kPi / 2 + spacing * cross;
    const double oracle = r0 + spacing * d[cross] / (d[cross] - d[cross + 1]);
    const SolverResult s = SolveForConfig(config);
    residual = s.residual;
    root_ok = std::abs(s.root - oracle) <= spacing && std::abs(s.residual) < 1e-9;
  }
  return {(inc || dec) && changes == 1 && root_ok,
          std::string("strictly monotone: ") + (inc || dec ? "yes" : "no") +
              ", sign changes " + std::to_string(changes) + ", residual " +
              Num(residual)};
}

// 4: warp factor bookkeeping over one period
Outcome Warp() {
  const ExperimentConfig config;
  const SolverResult s = SolveForConfig(config);
  const double alpha = config.controller.amplitude;
  const double k1 = WarpFactor(s.r_prime, alpha, WarpSegment::kFirstQuarter);
  const double k2 = WarpFactor(s.r_prime, alpha, WarpSegment::kSecondQuarter);
  const bool a = k1 + k2 == 2.0;

  SpineControllerParams p;
  p.kind = ControllerKind::kBalanceSpine;
  p.amplitude = alpha;
  p.period = 1.0;
  p.time_step = 1.0 / 1000;
  p.balance_target = s.r_prime;
  SpineController c(p);
  double r_switch = NAN;
  for (int i = 0; i < 1000; ++i) {
    const double r = c.Step();
    if (i == 250) r_switch = r;
  }
  const double ft = c.state().warped_phase;
  const bool b = std::abs(ft - 2 * kPi) <= std::max(k1, k2) * 2 * kPi / 1000;
  const bool cc = std::abs(std::abs(r_switch) - s.r_prime) < 1e-6;

  SpineControllerParams q = p;
  q.balance_target = 0.0;
  SpineController bal(q);
  q.kind = ControllerKind::kSpine;
  SpineController spine(q);
  double gap = 0.0;
  for (int i = 0; i < 1000; ++i) gap = std::max(gap, std::abs(bal.Step() - spine.Step()));
  const bool dd = gap <= 1e-12;
  return {a && b && cc && dd,
          std::string("(a) ") + (a ? "ok" : "no") + " (b) |f_T(T)-2pi| " +
              Num(std::abs(ft - 2 * kPi)) + " (c) ||R|-R'| " +
              Num(std::abs(std::abs(r_switch) - s.r_prime)) + " (d) gap " + Num(gap)};
}

// 5: dis vanishes at every balance instant with the balance controller
Outcome BalanceInstants() {
  const ExperimentConfig config;
  const SolverResult s = SolveForConfig(config);
  const ControllerPlan plan =
      PlanController(config, ControllerKind::kBalanceSpine, s);
  const GaitParams gait = config.Gait(1.0);
  const int steps = 1000;
  SpineControllerParams p = ControllerParams(config, ControllerKind::kBalanceSpine, 1.0, plan);
  p.time_step = 1.0 / steps;
  SpineController c(p);
  double worst = 0.0;
  for (int i = 0; i <= 4 * steps; ++i) {
    const double r = c.Step();
    if (i % (steps / 2) == steps / 4 && i < 2 * steps) {
      const double t = i * p.time_step;
      worst = std::max(worst, std::abs(EvaluateBalance(config.Geometry(), gait,
                                                       config.Com(), t, r).dis));
    }
  }
  const double non = std::abs(
      EvaluateBalance(config.Geometry(), gait, config.Com(), 0.25, 0.0).dis);
  return {worst < 1e-6 && non > 10 * 1e-6,
          "max |dis| at balance instants " + Num(worst) + " m, non-spine |dis(T/4)| " +
              Num(non) + " m"};
}

// 6: tilt ordering across the frequency sweep
Outcome Ordering() {
  const ExperimentConfig config;
  const CompareResult r = RunCompare(config, Jobs());
  int roll_ok = 0, pitch_ok = 0;
  const std::size_t nf = config.sweep.frequencies.size();
  double worst_ratio = INFINITY;
  for (std::size_t f = 0; f < nf; ++f) {
    const CompareRow& non = r.rows[3 * f];
    const CompareRow& spine = r.rows[3 * f + 1];
    const CompareRow& bal = r.rows[3 * f + 2];
    roll_ok += bal.mean_abs_roll < spine.mean_abs_roll &&
               spine.mean_abs_roll < non.mean_abs_roll;
    pitch_ok += spine.mean_abs_pitch < non.mean_abs_pitch &&
                bal.mean_abs_pitch < non.mean_abs_pitch;
    worst_ratio = std::min({worst_ratio, spine.mean_abs_roll / bal.mean_abs_roll,
                            non.mean_abs_roll / spine.mean_abs_roll});
  }
  return {roll_ok == static_cast<int>(nf) && pitch_ok == static_cast<int>(nf),
          "roll order holds at " + std::to_string(roll_ok) + "/" +
              std::to_string(nf) + ", pitch at " + std::to_string(pitch_ok) + "/" +
              std::to_string(nf) + ", tightest roll ratio " + Num(worst_ratio)};
}

// 7: dis(t + T/2) = -dis(t)
Outcome Mirror() {
  const ExperimentConfig config;
  const SolverResult s = SolveForConfig(config);
  double worst = 0.0;
  for (ControllerKind kind : kAllControllers) {
    const ControllerPlan plan = PlanController(config, kind, s);
    const auto tr = DisTrace(config.Geometry(), config.Gait(1.0),
                             ControllerParams(config, kind, 1.0, plan),
                             config.Com(), 1024);
    for (int i = 0; i < 512; ++i) {
      worst = std::max(worst, std::abs(tr[i + 512].dis + tr[i].dis));
    }
  }
  return {worst < 1e-9, "max |dis(t+T/2)+dis(t)| " + Num(worst) + " m"};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// 8: byte-identical reruns and lossless read-back
Outcome Determinism() {
  ExperimentConfig config;
  config.sweep.frequencies = {0.9, 2.1};
  config.sweep.repetitions = 2;
  const fs::path a = fs::temp_directory_path() / "spinebal_accept_a";
  const fs::path b = fs::temp_directory_path() / "spinebal_accept_b";
  fs::remove_all(a);
  fs::remove_all(b);
  bool identical = true, round_trip = true;
  for (ControllerKind kind : kAllControllers) {
    const SweepResult ra = RunSweep(config, kind, 2, a);
    RunSweep(config, kind, 1, b);
    for (std::size_t i = 0; i < ra.records.size(); ++i) {
      const std::string name = TraceFileName(kind, i / 2, i % 2);
      identical = identical && Slurp(a / name) == Slurp(b / name);
      round_trip = round_trip && ReadTrace(a / name) == ra.records[i];
    }
  }
  return {identical && round_trip,
          std::string("byte-identical: ") + (identical ? "yes" : "no") +
              ", read(write(r)) == r: " + (round_trip ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"kinematic singularity", 1.0, SeriesBranch},
      {"support-line incidence", 1.0, Incidence},
      {"monotonicity and unique root", 5.0, Monotonicity},
      {"warp correctness", 1.0, Warp},
      {"balance-status distribution", 1.0, BalanceInstants},
      {"tilt ordering over the sweep", 30.0, Ordering},
      {"mirror antisymmetry", 1.0, Mirror},
      {"determinism and I/O", 1.0, Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < criteria[i].limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s criterion %zu (%s): %s; %.3f s (limit %.0f s)\n",
                pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(),
                secs, criteria[i].limit_s);
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
