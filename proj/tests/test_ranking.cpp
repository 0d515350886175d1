#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "slicer/ranking.hpp"

using namespace slicer;

namespace {

RankingNodeState make_node(NodeId id, AttributeValue attr, std::uint32_t window = 0) {
  RankingNodeState s;
  s.id = id;
  s.attribute = attr;
  s.window_capacity = window;
  s.view = View(id, 8);
  return s;
}

}  // namespace

TEST_CASE("first-cycle estimate from a batch of comparisons") {
  const auto spec = SliceSpec::equal_width(10);
  auto node = make_node(1, 100);
  // Ten attributes encountered, three of them at or below the node's own.
  for (int i = 0; i < 3; ++i) record_sample(node, 50);
  for (int i = 0; i < 7; ++i) record_sample(node, 200);
  CHECK(node.samples_seen == 10);
  CHECK(node.samples_below == 3);
  refresh_estimate(node, spec);
  CHECK(node.rank_estimate == doctest::Approx(0.3));
  CHECK(node.slice_estimate == std::uint32_t{3});
}

TEST_CASE("equal attribute counts as a below comparison") {
  auto node = make_node(1, 100);
  record_sample(node, 100);
  CHECK(node.samples_below == 1);
  record_sample(node, 101);
  CHECK(node.samples_below == 1);
}

TEST_CASE("one-way receipt updates counters and estimate") {
  const auto spec = SliceSpec::equal_width(10);
  auto node = make_node(7, 100);
  node.samples_seen = 10;
  node.samples_below = 3;
  process_upd(node, UpdMessage{2, 7, 60}, spec);
  CHECK(node.samples_seen == 11);
  CHECK(node.samples_below == 4);
  CHECK(node.rank_estimate == doctest::Approx(4.0 / 11.0));
  CHECK(node.upd_received == 1);

  auto fresh = make_node(8, 100);
  process_upd(fresh, UpdMessage{2, 8, 500}, spec);
  CHECK(fresh.rank_estimate == 0.0);
  CHECK(fresh.slice_estimate == std::uint32_t{1});
  CHECK(estimated_slice(fresh, spec) == 1);
}

TEST_CASE("refresh leaves an unsampled node untouched") {
  const auto spec = SliceSpec::equal_width(4);
  auto node = make_node(1, 100);
  refresh_estimate(node, spec);
  CHECK(node.rank_estimate == 0.0);
  CHECK_FALSE(node.slice_estimate.has_value());
  CHECK(estimated_slice(node, spec) == 1);

  auto windowed = make_node(2, 100, 6);
  refresh_estimate(windowed, spec);
  CHECK_FALSE(windowed.slice_estimate.has_value());
}

TEST_CASE("window keeps only the most recent comparisons") {
  const auto spec = SliceSpec::equal_width(2);
  auto node = make_node(1, 100, 4);
  // Outcomes T,T,F,T,F; a window of 4 retains T,F,T,F.
  for (AttributeValue a : {50u, 50u, 150u, 50u, 150u}) record_sample(node, a);
  CHECK(node.window.size() == 4);
  CHECK(node.window_true == 2);
  CHECK(node.samples_seen == 5);   // lifetime counters still advance
  CHECK(node.samples_below == 3);
  refresh_estimate(node, spec);
  CHECK(node.rank_estimate == doctest::Approx(0.5));

  auto w1 = make_node(2, 100, 1);
  for (AttributeValue a : {50u, 50u, 150u, 50u, 150u}) record_sample(w1, a);
  refresh_estimate(w1, spec);
  CHECK(w1.rank_estimate == 0.0);  // degenerate window sees only the last outcome
  CHECK(w1.slice_estimate == std::uint32_t{1});
}

TEST_CASE("lifetime estimate converges to the population rank fraction") {
  const auto spec = SliceSpec::equal_width(10);
  auto node = make_node(1, 250);
  Rng rng(31);
  for (int i = 0; i < 20000; ++i)
    record_sample(node, static_cast<AttributeValue>(rng.below(1000) + 1));
  refresh_estimate(node, spec);
  CHECK(std::fabs(node.rank_estimate - 0.25) < 0.02);
  CHECK(node.slice_estimate == std::uint32_t{3});
}

TEST_CASE("boundary recipient is the estimate nearest a slice edge") {
  const auto spec = SliceSpec::equal_width(2);  // interior boundary 0.5
  auto node = make_node(1, 100);
  node.view.assign({{2, 0, 10, 0.31}, {3, 0, 20, 0.48}, {4, 0, 30, 0.77}});
  Rng rng(32);
  const auto t = select_upd_targets(node, spec, BoundaryMode::neighbor_nearest, rng);
  CHECK(t.boundary == NodeId{3});
  REQUIRE(t.random.has_value());
}

TEST_CASE("boundary ties go to the smaller id; self mode uses the own-side edge") {
  const auto spec = SliceSpec::equal_width(4);  // boundaries .25 .5 .75 exact
  auto node = make_node(1, 100);
  node.rank_estimate = 0.1;  // nearest boundary 0.25
  // Both payloads sit exactly 0.125 from their nearest boundary.
  node.view.assign({{9, 0, 10, 0.375}, {3, 0, 20, 0.625}});
  Rng rng(33);
  CHECK(select_upd_targets(node, spec, BoundaryMode::neighbor_nearest, rng).boundary ==
        NodeId{3});
  CHECK(select_upd_targets(node, spec, BoundaryMode::self_nearest, rng).boundary ==
        NodeId{9});  // 0.375 is far closer to 0.25 than 0.625 is
}

TEST_CASE("single-slice space falls back to the per-neighbor rule") {
  const auto spec = SliceSpec::equal_width(1);  // no interior boundary
  auto node = make_node(1, 100);
  node.rank_estimate = 0.4;
  node.view.assign({{2, 0, 10, 0.9}, {5, 0, 20, 0.2}});
  Rng rng(34);
  const auto t = select_upd_targets(node, spec, BoundaryMode::self_nearest, rng);
  // boundary_distance is infinite for every payload, so the first-seen
  // minimum (ties to smaller id) wins.
  CHECK(t.boundary == NodeId{2});
}

TEST_CASE("random recipient is uniform over the view") {
  const auto spec = SliceSpec::equal_width(2);
  auto node = make_node(1, 100);
  node.view.assign({{2, 0, 10, 0.1}, {3, 0, 20, 0.2}, {4, 0, 30, 0.3}});
  Rng rng(35);
  int hits[3] = {0, 0, 0};
  for (int i = 0; i < 9000; ++i) {
    const auto t = select_upd_targets(node, spec, BoundaryMode::neighbor_nearest, rng);
    REQUIRE(t.random.has_value());
    hits[*t.random - 2] += 1;
  }
  for (int h : hits) CHECK(std::abs(h - 3000) < 300);
}

TEST_CASE("empty view selects nobody") {
  const auto spec = SliceSpec::equal_width(2);
  auto node = make_node(1, 100);
  Rng rng(36);
  const auto t = select_upd_targets(node, spec, BoundaryMode::neighbor_nearest, rng);
  CHECK_FALSE(t.boundary.has_value());
  CHECK_FALSE(t.random.has_value());
}
