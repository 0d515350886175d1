#include <doctest.h>

#include <cmath>
#include <vector>

#include "slicer/metrics.hpp"

using namespace slicer;

namespace {

OrderingNodeState onode(NodeId id, AttributeValue attr, double value) {
  OrderingNodeState s;
  s.id = id;
  s.attribute = attr;
  s.random_value = value;
  s.view = View(id, 4);
  return s;
}

}  // namespace

TEST_CASE("global disorder of a reversed pair is one") {
  std::vector<OrderingNodeState> nodes;
  nodes.push_back(onode(1, 10, 0.9));
  nodes.push_back(onode(2, 20, 0.1));
  CHECK(gdm(nodes) == doctest::Approx(1.0));

  std::vector<OrderingNodeState> sorted;
  sorted.push_back(onode(1, 10, 0.1));
  sorted.push_back(onode(2, 20, 0.9));
  CHECK(gdm(sorted) == doctest::Approx(0.0));
}

TEST_CASE("slice disorder contribution counts crossed slices") {
  const auto spec = SliceSpec::equal_width(10);
  CHECK(sdm_contribution(spec, 1, 3) == doctest::Approx(2.0));
  CHECK(sdm_contribution(spec, 3, 1) == doctest::Approx(2.0));
  CHECK(sdm_contribution(spec, 4, 4) == doctest::Approx(0.0));
}

TEST_CASE("equal-width slice disorder equals the summed index gaps") {
  Rng rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const std::uint32_t k = 2 + rng.below(9);
    const auto spec = SliceSpec::equal_width(k);
    double expect = 0.0;
    double direct = 0.0;
    for (int i = 0; i < 30; ++i) {
      const auto t = static_cast<std::uint32_t>(1 + rng.below(k));
      const auto e = static_cast<std::uint32_t>(1 + rng.below(k));
      direct += sdm_contribution(spec, t, e);
      expect += std::fabs(static_cast<double>(t) - static_cast<double>(e));
    }
    CHECK(direct == doctest::Approx(expect));
  }
}

TEST_CASE("two nodes, values 0.1 and 0.4, two slices") {
  // In-order values mean zero global disorder, yet both nodes land in the
  // lower half, so the upper node's slice belief is off by one slice.
  const auto spec = SliceSpec::equal_width(2);
  std::vector<OrderingNodeState> nodes;
  nodes.push_back(onode(1, 100, 0.1));
  nodes.push_back(onode(2, 200, 0.4));
  CHECK(gdm(nodes) == doctest::Approx(0.0));
  CHECK(sdm(nodes, spec) == doctest::Approx(1.0));
}

TEST_CASE("slice disorder overloads agree on equivalent populations") {
  const auto spec = SliceSpec::equal_width(5);
  std::vector<OrderingNodeState> ord;
  std::vector<RankingNodeState> rank;
  Rng rng(42);
  for (NodeId id = 1; id <= 40; ++id) {
    const auto attr = static_cast<AttributeValue>(rng.below(10000));
    const double est = rng.unit_open_closed();
    ord.push_back(onode(id, attr, est));
    RankingNodeState r;
    r.id = id;
    r.attribute = attr;
    r.rank_estimate = est;
    r.view = View(id, 4);
    rank.push_back(std::move(r));
  }
  CHECK(sdm(ord, spec) == sdm(rank, spec));
}

TEST_CASE("incremental global disorder tracks value swaps exactly") {
  Rng rng(43);
  std::vector<OrderingNodeState> nodes;
  for (NodeId id = 1; id <= 60; ++id)
    nodes.push_back(onode(id, static_cast<AttributeValue>(rng.below(30)), rng.unit()));
  GdmTracker tracker;
  tracker.rebuild(nodes);
  CHECK(tracker.population() == 60);
  CHECK(tracker.value() == gdm(nodes));
  for (int step = 0; step < 300; ++step) {
    const std::size_t a = rng.below(nodes.size());
    const std::size_t b = rng.below(nodes.size());
    std::swap(nodes[a].random_value, nodes[b].random_value);
    tracker.on_swap(nodes[a].id, nodes[b].id);
    REQUIRE(tracker.value() == gdm(nodes));
  }
}

TEST_CASE("incremental slice disorder tracks estimate changes exactly") {
  Rng rng(44);
  const auto spec = SliceSpec::equal_width(7);
  std::vector<OrderingNodeState> nodes;
  for (NodeId id = 1; id <= 50; ++id)
    nodes.push_back(
        onode(id, static_cast<AttributeValue>(rng.below(100000)), rng.unit_open_closed()));
  SdmTracker tracker;
  tracker.reset(spec);
  tracker.rebuild(nodes, [&](const OrderingNodeState& n) { return estimated_slice(n, spec); });
  CHECK(tracker.value() == sdm(nodes, spec));
  for (int step = 0; step < 300; ++step) {
    const std::size_t i = rng.below(nodes.size());
    const auto slice = static_cast<std::uint32_t>(1 + rng.below(7));
    nodes[i].random_value = spec.midpoint(slice);  // estimate becomes exactly that slice
    tracker.on_estimate_change(nodes[i].id, slice);
    REQUIRE(tracker.value() == sdm(nodes, spec));
  }
}
