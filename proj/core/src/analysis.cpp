#include "slicer/analysis.hpp"

#include <cmath>

#include "slicer/rng.hpp"

namespace slicer {

double z_quantile(double p) {
  if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("z_quantile: p must lie in (0,1)");

  // Acklam's coefficients.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  constexpr double p_high = 1.0 - p_low;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p <= p_high) {
    const double q = p - 0.5;
    const double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  const double q = std::sqrt(-2.0 * std::log(1.0 - p));
  return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
         ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
}

ConfidenceParams ConfidenceParams::from_alpha(double alpha) {
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::domain_error("alpha must lie in (0,1)");
  return {alpha, z_quantile(1.0 - alpha / 2.0)};
}

double min_slice_length(double beta, double eps, std::uint32_t n) {
  if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
  if (!(eps > 0.0) || !(eps < 1.0)) throw std::domain_error("eps must lie in (0,1)");
  if (n == 0) throw std::domain_error("n must be positive");
  return 3.0 / (beta * beta * static_cast<double>(n)) * std::log(2.0 / eps);
}

MonteCarloResult verify_slice_size(const SliceSizeQuery& query,
                                   std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::domain_error("trials must be positive");
  if (!(query.p > 0.0) || !(query.p <= 1.0))
    throw std::domain_error("slice length must lie in (0,1]");
  const double floor_p = min_slice_length(query.beta, query.eps, query.n);
  if (query.p < floor_p)
    throw std::domain_error("slice length below the bound's validity floor");

  const double np = static_cast<double>(query.n) * query.p;
  const double lo = (1.0 - query.beta) * np;
  const double hi = (1.0 + query.beta) * np;

  Rng rng(seed);
  std::uint64_t ok = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint32_t count = 0;
    for (std::uint32_t i = 0; i < query.n; ++i)
      if (rng.unit_open_closed() <= query.p) ++count;
    const auto size = static_cast<double>(count);
    if (size >= lo && size <= hi) ++ok;
  }

  MonteCarloResult res;
  res.trials = trials;
  res.successes = ok;
  res.fraction = static_cast<double>(ok) / static_cast<double>(trials);
  res.required = slice_size_required_fraction(query.eps, trials);
  res.pass = res.fraction >= res.required;
  return res;
}

double slice_size_required_fraction(double eps, std::uint64_t trials) {
  return 1.0 - eps - 3.0 * std::sqrt(eps / static_cast<double>(trials));
}

double required_messages(double p_hat, double d, double alpha) {
  if (!(d > 0.0)) throw std::domain_error("boundary distance must be positive");
  if (!(p_hat >= 0.0) || !(p_hat <= 1.0))
    throw std::domain_error("rank estimate must lie in [0,1]");
  const double z = ConfidenceParams::from_alpha(alpha).z;
  const double s = z * std::sqrt(p_hat * (1.0 - p_hat)) / d;
  return s * s;
}

std::uint64_t assignment_sample_count(const SliceSpec& spec, double p, double alpha) {
  const double d = spec.boundary_distance(p);
  if (!std::isfinite(d)) return 1;
  const double need = required_messages(p, d, alpha);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(need)));
}

MonteCarloResult verify_assignment(const AssignmentQuery& query,
                                   std::uint64_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::domain_error("trials must be positive");
  if (!(query.p > 0.0) || !(query.p <= 1.0))
    throw std::domain_error("rank must lie in (0,1]");

  const std::uint64_t samples = assignment_sample_count(query.spec, query.p, query.alpha);
  const std::uint32_t truth = query.spec.slice_of(query.p);

  Rng rng(seed);
  std::uint64_t ok = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    std::uint64_t below = 0;
    for (std::uint64_t i = 0; i < samples; ++i)
      if (rng.unit_open_closed() <= query.p) ++below;
    const double est = static_cast<double>(below) / static_cast<double>(samples);
    const std::uint32_t assigned = est <= 0.0 ? 1 : query.spec.slice_of(est);
    if (assigned == truth) ++ok;
  }

  MonteCarloResult res;
  res.trials = trials;
  res.successes = ok;
  res.fraction = static_cast<double>(ok) / static_cast<double>(trials);
  res.required = assignment_required_fraction(query.alpha);
  res.pass = res.fraction >= res.required;
  return res;
}

double assignment_required_fraction(double alpha) { return 1.0 - alpha - 0.03; }

}  // namespace slicer
