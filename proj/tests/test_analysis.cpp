#include <doctest.h>

#include <cmath>
#include <vector>

#include "slicer/analysis.hpp"

using namespace slicer;

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// Reference quantile: bisect the erfc-based CDF, which is accurate to
// machine precision, down to a 1e-12 bracket.
double z_oracle(double p) {
  double lo = -10.0, hi = 10.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (normal_cdf(mid) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("normal quantile matches an erfc bisection across the range") {
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  // Extremes and points straddling the rational approximation's regime split.
  for (double p : {0.0005, 0.001, 0.005, 0.0242, 0.02425, 0.0243, 0.9757, 0.97575,
                   0.9758, 0.995, 0.999, 0.9995})
    grid.push_back(p);
  for (double p : grid) {
    const double z = z_quantile(p);
    CHECK(std::fabs(z - z_oracle(p)) < 1e-8);
  }
}

TEST_CASE("normal quantile frozen points") {
  CHECK(z_quantile(0.975) == doctest::Approx(1.959964).epsilon(1e-6));
  CHECK(z_quantile(0.5) == doctest::Approx(0.0).scale(1.0));
  CHECK(z_quantile(0.8) == doctest::Approx(-z_quantile(0.2)).epsilon(1e-12));
  CHECK_THROWS_AS(z_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(z_quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(z_quantile(-0.1), std::domain_error);
}

TEST_CASE("two-sided confidence setup") {
  const auto p95 = ConfidenceParams::from_alpha(0.05);
  CHECK(p95.alpha == 0.05);
  CHECK(p95.z == doctest::Approx(1.959964).epsilon(1e-6));

  // alpha = 1 - erf(1/sqrt(2)) puts the two-sided z at exactly one sigma.
  const double alpha_1sigma = std::erfc(1.0 / std::sqrt(2.0));
  CHECK(ConfidenceParams::from_alpha(alpha_1sigma).z == doctest::Approx(1.0).epsilon(1e-7));

  CHECK(ConfidenceParams::from_alpha(0.9999).z ==
        doctest::Approx(0.000125331).epsilon(1e-3));

  CHECK_THROWS_AS(ConfidenceParams::from_alpha(0.0), std::domain_error);
  CHECK_THROWS_AS(ConfidenceParams::from_alpha(1.0), std::domain_error);
}

TEST_CASE("minimum reliable slice length") {
  CHECK(min_slice_length(0.5, 0.01, 10000) ==
        doctest::Approx(0.0063579808).epsilon(1e-7));
  // beta = 1, eps = 2 e^-3 collapses the logarithm to 3.
  CHECK(min_slice_length(1.0, 2.0 * std::exp(-3.0), 10000) == doctest::Approx(9.0 / 10000));
  CHECK(min_slice_length(0.5, 0.01, 20000) < min_slice_length(0.5, 0.01, 10000));
  CHECK(min_slice_length(0.8, 0.01, 10000) < min_slice_length(0.5, 0.01, 10000));
  CHECK(min_slice_length(0.5, 0.05, 10000) < min_slice_length(0.5, 0.01, 10000));
  CHECK_THROWS_AS(min_slice_length(0.0, 0.01, 10000), std::domain_error);
  CHECK_THROWS_AS(min_slice_length(0.5, 1.0, 10000), std::domain_error);
  CHECK_THROWS_AS(min_slice_length(0.5, 0.01, 0), std::domain_error);
}

TEST_CASE("required message count for a confident assignment") {
  CHECK(required_messages(0.5, 0.005, 0.05) == doctest::Approx(38414.588).epsilon(1e-5));
  CHECK(required_messages(0.5, 0.05, 0.05) == doctest::Approx(384.14588).epsilon(1e-5));
  CHECK(required_messages(0.0, 0.1, 0.05) == 0.0);
  CHECK(required_messages(1.0, 0.1, 0.05) == 0.0);
  CHECK_THROWS_AS(required_messages(0.5, 0.0, 0.05), std::domain_error);
  CHECK_THROWS_AS(required_messages(1.2, 0.1, 0.05), std::domain_error);
  CHECK_THROWS_AS(required_messages(0.5, 0.1, 0.0), std::domain_error);
}

TEST_CASE("sample count against the nearest boundary of a slice spec") {
  CHECK(assignment_sample_count(SliceSpec::equal_width(2), 0.52, 0.05) == 2398);
  CHECK(assignment_sample_count(SliceSpec::equal_width(1), 0.52, 0.05) == 1);
  CHECK_THROWS_AS(assignment_sample_count(SliceSpec::equal_width(2), 0.5, 0.05),
                  std::domain_error);
}

TEST_CASE("slice-size concentration check") {
  // Floor minus three-sigma sampling slack: 1 - 0.01 - 3*sqrt(0.01/1e4).
  CHECK(slice_size_required_fraction(0.01, 10000) == doctest::Approx(0.987).epsilon(1e-9));

  SliceSizeQuery q;
  q.n = 1000;
  q.p = 0.1;
  q.beta = 0.5;
  q.eps = 0.01;
  const auto res = verify_slice_size(q, 2000, 1);
  CHECK(res.trials == 2000);
  CHECK(res.fraction ==
        static_cast<double>(res.successes) / static_cast<double>(res.trials));
  CHECK(res.required == doctest::Approx(slice_size_required_fraction(q.eps, 2000)));
  CHECK(res.pass);

  const auto replay = verify_slice_size(q, 2000, 1);
  CHECK(replay.successes == res.successes);

  CHECK_THROWS_AS(verify_slice_size(q, 0, 1), std::domain_error);
  auto bad = q;
  bad.p = 0.05;  // below the validity floor ~0.0636 at these parameters
  CHECK_THROWS_AS(verify_slice_size(bad, 100, 1), std::domain_error);
  bad = q;
  bad.p = 0.0;
  CHECK_THROWS_AS(verify_slice_size(bad, 100, 1), std::domain_error);
}

TEST_CASE("assignment confidence check") {
  CHECK(assignment_required_fraction(0.05) == doctest::Approx(0.92));

  AssignmentQuery q;
  q.spec = SliceSpec::equal_width(2);
  q.p = 0.52;
  q.alpha = 0.05;
  const auto res = verify_assignment(q, 2000, 2);
  CHECK(res.trials == 2000);
  CHECK(res.required == doctest::Approx(0.92));
  CHECK(res.pass);

  const auto replay = verify_assignment(q, 2000, 2);
  CHECK(replay.successes == res.successes);

  CHECK_THROWS_AS(verify_assignment(q, 0, 2), std::domain_error);
  auto bad = q;
  bad.p = 0.0;
  CHECK_THROWS_AS(verify_assignment(bad, 100, 2), std::domain_error);
}
