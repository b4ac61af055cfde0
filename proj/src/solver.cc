#include "spinebal/solver.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinebal/errors.h"

namespace spinebal {
namespace {

// Bisection stops once |dis| falls below this fraction of the tolerance.
constexpr double kResidualFraction = 1e-6;

int Sign(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

void BalanceProblem::Validate() const {
  if (!std::isfinite(range_lo) || !std::isfinite(range_hi) ||
      !(range_lo < range_hi)) {
    throw DomainError("search range must satisfy lo < hi");
  }
  if (range_lo < -kMaxFlexion || range_hi > kMaxFlexion) {
    throw RangeError("search range must lie within [-pi/2, pi/2]");
  }
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw DomainError("solver tolerance must be > 0");
  }
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  com.Validate();
}

double BalanceProblem::DisAt(double flexion) const {
  return BalanceDistance(geom, stride_at_tb, flexion, com);
}

MonotonicityReport MonotonicityProbe(const BalanceProblem& problem,
                                     std::size_t n_samples) {
  if (n_samples < 3) throw DomainError("monotonicity probe needs >= 3 samples");
  problem.Validate();
  MonotonicityReport r;
  r.samples = n_samples;
  const double span = problem.range_hi - problem.range_lo;
  const double last = static_cast<double>(n_samples - 1);
  double prev = problem.DisAt(problem.range_lo);
  double lo = prev, hi = prev;
  int prev_sign = Sign(prev);
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < n_samples; ++i) {
    const double x = i + 1 == n_samples
                         ? problem.range_hi
                         : problem.range_lo + span * (static_cast<double>(i) / last);
    const double d = problem.DisAt(x);
    if (!(d > prev)) inc = false;
    if (!(d < prev)) dec = false;
    const int s = Sign(d);
    if (s != 0) {
      if (prev_sign != 0 && s != prev_sign) ++r.sign_changes;
      prev_sign = s;
    }
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    prev = d;
  }
  r.strictly_monotone = inc || dec;
  r.derivative_sign = inc ? 1 : (dec ? -1 : 0);
  r.degenerate = hi - lo <= problem.tolerance;
  return r;
}

SolverResult SolveBalanceFlexion(const BalanceProblem& problem,
                                 std::size_t probe_samples) {
  problem.Validate();
  double lo = problem.range_lo;
  double hi = problem.range_hi;
  double f_lo = problem.DisAt(lo);
  const double f_hi = problem.DisAt(hi);

  SolverResult out;
  out.monotonicity = MonotonicityProbe(problem, probe_samples);
  if (!out.monotonicity.strictly_monotone) {
    out.warnings.push_back(
        "dis is not strictly monotone over the search range; the root may "
        "not be unique");
  }

  auto finish = [&](double root, int iters) {
    out.root = root;
    out.r_prime = std::abs(root);
    out.residual = problem.DisAt(root);
    out.iterations = iters;
    return out;
  };
  if (f_lo == 0.0) return finish(lo, 0);
  if (f_hi == 0.0) return finish(hi, 0);
  if (Sign(f_lo) == Sign(f_hi)) {
    if (std::max(std::abs(f_lo), std::abs(f_hi)) < problem.tolerance) {
      out.warnings.push_back(
          "dis stays within tolerance over the whole range; returning the "
          "endpoint closest to balance");
      return finish(std::abs(f_lo) <= std::abs(f_hi) ? lo : hi, 0);
    }
    throw NoRootError("dis does not change sign over [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]: dis(lo) = " +
                          std::to_string(f_lo) + " m, dis(hi) = " +
                          std::to_string(f_hi) + " m",
                      f_lo, f_hi);
  }

  // The midpoint comes first so a root at the centre of a symmetric bracket
  // is returned exactly.
  int iters = 0;
  while (iters < problem.max_iterations) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++iters;
    const double f_mid = problem.DisAt(mid);
    if (std::abs(f_mid) <= problem.tolerance * kResidualFraction) {
      return finish(mid, iters);
    }
    if (Sign(f_mid) == Sign(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  const double root =
      std::abs(problem.DisAt(lo)) <= std::abs(problem.DisAt(hi)) ? lo : hi;
  finish(root, iters);
  if (std::abs(out.residual) >= problem.tolerance) {
    out.warnings.push_back("bisection stopped with residual " +
                           std::to_string(out.residual) +
                           " m above tolerance");
  }
  return out;
}

}  // namespace spinebal
