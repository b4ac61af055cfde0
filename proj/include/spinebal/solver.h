#pragma once

// Bracketed search for the flexion angle that puts the CoM on the support
// line at the balance instant, with the stride held fixed.

#include <cstddef>
#include <string>
#include <vector>

#include "spinebal/balance.h"
#include "spinebal/kinematics.h"

namespace spinebal {

struct BalanceProblem {
  RobotGeometry geom = RobotGeometry::Default();
  StrideState stride_at_tb;
  ComPosition com;
  double range_lo = -kMaxFlexion;
  double range_hi = kMaxFlexion;
  double tolerance = 1e-9;  // [m]
  int max_iterations = 200;

  // Throws DomainError / RangeError on a bad range or tolerance.
  void Validate() const;
  double DisAt(double flexion) const;
};

struct MonotonicityReport {
  std::size_t samples = 0;
  bool strictly_monotone = false;
  int derivative_sign = 0;  // +1 increasing, -1 decreasing, 0 mixed/flat
  int sign_changes = 0;     // sign changes of dis along the grid
  bool degenerate = false;  // every sample equal within tolerance
};

struct SolverResult {
  double root = 0.0;     // signed flexion with dis(root) ~ 0
  double r_prime = 0.0;  // |root|
  double residual = 0.0; // dis(root) through the full pipeline
  int iterations = 0;
  MonotonicityReport monotonicity;
  std::vector<std::string> warnings;
};

inline constexpr std::size_t kDefaultProbeSamples = 1001;

// Bisection. Throws NoRootError carrying dis at both ends when they share a
// sign. A non-monotone probe adds a warning rather than failing.
SolverResult SolveBalanceFlexion(const BalanceProblem& problem,
                                 std::size_t probe_samples =
                                     kDefaultProbeSamples);

// Samples dis at n uniform points over the range (endpoints included).
// Throws DomainError for n < 3.
MonotonicityReport MonotonicityProbe(const BalanceProblem& problem,
                                     std::size_t n_samples);

}  // namespace spinebal
