#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "slicer/types.hpp"

using namespace slicer;

TEST_CASE("equal-width spec has evenly spaced boundaries") {
  const auto spec = SliceSpec::equal_width(4);
  CHECK(spec.slice_count() == 4);
  REQUIRE(spec.boundaries().size() == 5);
  CHECK(spec.boundaries()[0] == 0.0);
  CHECK(spec.boundaries()[4] == 1.0);
  CHECK(spec.lower(2) == doctest::Approx(0.25));
  CHECK(spec.upper(2) == doctest::Approx(0.5));
  CHECK(spec.width(3) == doctest::Approx(0.25));
  CHECK(spec.midpoint(1) == doctest::Approx(0.125));
  CHECK(spec.equal_width_count() == 4);
}

TEST_CASE("slice_of maps (0,1] and puts boundary values in the lower slice") {
  const auto spec = SliceSpec::equal_width(10);
  CHECK(spec.slice_of(0.05) == 1);
  CHECK(spec.slice_of(0.1) == 1);   // boundary belongs below
  CHECK(spec.slice_of(0.100001) == 2);
  CHECK(spec.slice_of(0.55) == 6);
  CHECK(spec.slice_of(1.0) == 10);
  CHECK_THROWS_AS(spec.slice_of(0.0), std::domain_error);
  CHECK_THROWS_AS(spec.slice_of(-0.3), std::domain_error);
  CHECK_THROWS_AS(spec.slice_of(1.0001), std::domain_error);
}

TEST_CASE("explicit boundaries round through from_boundaries") {
  const auto spec = SliceSpec::from_boundaries({0.0, 0.3, 1.0});
  CHECK(spec.slice_count() == 2);
  CHECK(spec.slice_of(0.3) == 1);
  CHECK(spec.slice_of(0.31) == 2);
  CHECK(spec.equal_width_count() == 0);
  CHECK_THROWS(SliceSpec::from_boundaries({0.0, 0.5, 0.5, 1.0}));
  CHECK_THROWS(SliceSpec::from_boundaries({0.1, 0.5, 1.0}));
  CHECK_THROWS(SliceSpec::from_boundaries({0.0, 0.5, 0.9}));
  CHECK_THROWS(SliceSpec::from_boundaries({0.0}));
}

TEST_CASE("boundary_distance measures to interior separators only") {
  const auto spec = SliceSpec::equal_width(10);
  CHECK(spec.boundary_distance(0.14) == doctest::Approx(0.04));
  CHECK(spec.boundary_distance(0.5) == doctest::Approx(0.0));
  CHECK(spec.boundary_distance(0.97) == doctest::Approx(0.07));
  const auto one = SliceSpec::equal_width(1);
  CHECK(std::isinf(one.boundary_distance(0.4)));
}

TEST_CASE("misplaced is the sign test on both orders") {
  CHECK(misplaced(50, 0.85, 120, 0.1));    // higher attribute, lower value
  CHECK(misplaced(120, 0.1, 50, 0.85));    // symmetric
  CHECK_FALSE(misplaced(50, 0.1, 120, 0.85));
  CHECK_FALSE(misplaced(50, 0.5, 50, 0.9));   // equal attributes: no order to violate
  CHECK_FALSE(misplaced(50, 0.5, 120, 0.5));  // equal values
}

TEST_CASE("attribute_ranks are dense, 1-based, id tie-broken") {
  std::vector<std::pair<NodeId, AttributeValue>> pop = {{7, 30}, {2, 10}, {5, 30}, {9, 20}};
  const auto ranks = attribute_ranks(pop);
  CHECK(ranks.at(2) == 1);
  CHECK(ranks.at(9) == 2);
  CHECK(ranks.at(5) == 3);  // ties by smaller id
  CHECK(ranks.at(7) == 4);

  std::vector<std::pair<NodeId, AttributeValue>> dup = {{1, 5}, {1, 6}};
  CHECK_THROWS_AS(attribute_ranks(dup), std::invalid_argument);
}
