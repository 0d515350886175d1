#pragma once

#include <cstdint>
#include <stdexcept>

#include "slicer/types.hpp"

namespace slicer {

// Standard normal quantile (inverse CDF) via Acklam's rational
// approximation; absolute error below 1.2e-9 across (0, 1). Throws
// std::domain_error outside the open interval.
double z_quantile(double p);

// Two-sided confidence setup: z = z_{1 - alpha/2}.
struct ConfidenceParams {
  double alpha;
  double z;
  static ConfidenceParams from_alpha(double alpha);
};

// Smallest relative slice length p such that, with n nodes holding i.i.d.
// uniform random values, a length-p interval's realized membership stays
// within (1 +- beta) * n * p with probability at least 1 - eps:
// p >= 3 / (beta^2 * n) * ln(2 / eps).
double min_slice_length(double beta, double eps, std::uint32_t n);

struct MonteCarloResult {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double fraction = 0.0;   // successes / trials
  double required = 0.0;   // slack-adjusted threshold the contract demands
  bool pass = false;       // fraction >= required
};

// Empirical check of the slice-size concentration bound: per trial, draw n
// uniform values, count those landing in a length-p interval, and test
// whether the count lies in [(1-beta)np, (1+beta)np]. Requires p at or
// above min_slice_length(beta, eps, n) (throws std::domain_error below).
struct SliceSizeQuery {
  std::uint32_t n = 10000;
  double p = 0.01;
  double beta = 0.1;
  double eps = 0.01;
};
MonteCarloResult verify_slice_size(const SliceSizeQuery& query,
                                   std::uint64_t trials, std::uint64_t seed);

// The threshold verify_slice_size holds its success fraction against:
// 1 - eps minus three standard errors of Monte Carlo noise.
double slice_size_required_fraction(double eps, std::uint64_t trials);

// Messages a node must have sampled before the slice derived from its
// estimated rank p_hat is correct with probability at least 1 - alpha,
// where d is the distance from p_hat to the nearest interior slice
// boundary: N = (z_{1-alpha/2} * sqrt(p_hat (1 - p_hat)) / d)^2.
// Throws std::domain_error for d <= 0, p_hat outside [0, 1], or alpha
// outside (0, 1).
double required_messages(double p_hat, double d, double alpha);

// N = max(1, ceil(required_messages(p, d, alpha))) with d the distance
// from p to the nearest interior boundary of spec; 1 when no interior
// boundary exists. Throws like required_messages (in particular for p
// exactly on an interior boundary).
std::uint64_t assignment_sample_count(const SliceSpec& spec, double p, double alpha);

// Empirical check of the assignment-confidence bound for a node with true
// normalized rank p in (0, 1]: per trial, draw N = assignment_sample_count
// Bernoulli(p) samples, form the rank estimate, and test whether it maps
// into the same slice as p.
struct AssignmentQuery {
  SliceSpec spec = SliceSpec::equal_width(10);
  double p = 0.5;
  double alpha = 0.05;
};
MonteCarloResult verify_assignment(const AssignmentQuery& query,
                                   std::uint64_t trials, std::uint64_t seed);

// Threshold for verify_assignment: 1 - alpha minus a fixed 0.03 Monte
// Carlo allowance.
double assignment_required_fraction(double alpha);

}  // namespace slicer
