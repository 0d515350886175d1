#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "slicer/rng.hpp"

using namespace slicer;

TEST_CASE("identical seeds replay the identical stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.unit() == b.unit());
    CHECK(a.below(97) == b.below(97));
  }
}

TEST_CASE("below stays inside its bound and covers it") {
  Rng rng(7);
  std::vector<int> hits(13, 0);
  for (int i = 0; i < 13000; ++i) {
    const auto v = rng.below(13);
    REQUIRE(v < 13);
    ++hits[static_cast<std::size_t>(v)];
  }
  // Expected 1000 per bucket; 5 sigma of a binomial(13000, 1/13) is ~155.
  for (int h : hits) CHECK(std::abs(h - 1000) < 250);
}

TEST_CASE("unit variants hit their half-open ends") {
  Rng rng(3);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.unit();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double v = rng.unit_open_closed();
    CHECK(v > 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("bernoulli matches its probability within binomial noise") {
  Rng rng(11);
  int heads = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i)
    if (rng.bernoulli(0.5)) ++heads;
  // 3 sigma of binomial(10^4, 1/2) is 150.
  CHECK(std::abs(heads - n / 2) <= 150);
  for (int i = 0; i < 100; ++i) {
    CHECK_FALSE(rng.bernoulli(0.0));
    CHECK(rng.bernoulli(1.0));
  }
}

TEST_CASE("exponential draws are positive with roughly the right mean") {
  Rng rng(5);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.exponential(100.0);
    REQUIRE(x > 0.0);
    sum += x;
  }
  // Standard error of the mean is 100/sqrt(20000) ~ 0.71.
  CHECK(std::abs(sum / n - 100.0) < 4.0);
}

TEST_CASE("shuffle permutes without loss") {
  Rng rng(9);
  std::vector<int> v(50);
  for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = i;
  auto shuffled = v;
  rng.shuffle(shuffled);
  CHECK(shuffled != v);  // astronomically unlikely to be identity
  std::sort(shuffled.begin(), shuffled.end());
  CHECK(shuffled == v);
}

TEST_CASE("sample_indices draws distinct indices and clamps") {
  Rng rng(13);
  for (int rep = 0; rep < 200; ++rep) {
    auto s = rng.sample_indices(30, 7);
    REQUIRE(s.size() == 7);
    auto sorted = s;
    std::sort(sorted.begin(), sorted.end());
    CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
    CHECK(sorted.back() < 30);
  }
  auto all = rng.sample_indices(5, 9);
  std::sort(all.begin(), all.end());
  CHECK(all == std::vector<std::size_t>{0, 1, 2, 3, 4});
}

TEST_CASE("sample_indices is uniform over subsets") {
  Rng rng(17);
  // 2-subsets of {0..4}: each element appears with probability 2/5.
  std::vector<int> hits(5, 0);
  const int reps = 20000;
  for (int rep = 0; rep < reps; ++rep)
    for (auto idx : rng.sample_indices(5, 2)) ++hits[idx];
  // Expected 8000 per element, 5 sigma ~ 390.
  for (int h : hits) CHECK(std::abs(h - 8000) < 400);
}
