#pragma once

#include <cstdint>
#include <deque>
#include <optional>

#include "slicer/rng.hpp"
#include "slicer/types.hpp"
#include "slicer/view.hpp"

namespace slicer {

// State of one node estimating its normalized attribute rank by counting
// how many of the attributes it encounters are at most its own.
// samples_seen / samples_below are the lifetime counters; when
// window_capacity is non-zero the estimate instead comes from a FIFO of the
// most recent comparison outcomes.
struct RankingNodeState {
  NodeId id = 0;
  AttributeValue attribute = 0;
  std::uint64_t samples_seen = 0;
  std::uint64_t samples_below = 0;
  double rank_estimate = 0.0;
  std::optional<std::uint32_t> slice_estimate;
  View view;

  std::uint32_t window_capacity = 0;  // 0 = lifetime counters
  std::deque<bool> window;
  std::uint64_t window_true = 0;

  std::uint64_t upd_received = 0;  // instrumentation, not protocol state
};

struct UpdMessage {
  NodeId from = 0;
  NodeId to = 0;
  AttributeValue attribute = 0;
};

enum class BoundaryMode : std::uint8_t {
  neighbor_nearest,  // each neighbor judged against its own nearest boundary (default)
  self_nearest,      // all neighbors judged against the boundary nearest this node's estimate
};

// Record one encountered attribute: bump the counters, feed the window when
// active. Does not recompute the estimate; callers batch that via
// refresh_estimate (the view scan) or get it via process_upd.
void record_sample(RankingNodeState& node, AttributeValue seen);

// Recompute rank_estimate and slice_estimate from the counters (or the
// window). A node that has seen nothing keeps estimate 0, which maps to
// slice 1.
void refresh_estimate(RankingNodeState& node, const SliceSpec& spec);

// One-way message receipt: record the sample and immediately refresh.
void process_upd(RankingNodeState& node, const UpdMessage& msg, const SliceSpec& spec);

struct RankingTargets {
  std::optional<NodeId> boundary;  // neighbor whose estimate sits closest to a boundary
  std::optional<NodeId> random;    // uniformly chosen neighbor
};

// Pick the two UPD recipients from the current view: the entry whose
// payload (rank estimate) is nearest a slice boundary, ties to the smaller
// id, plus one uniform entry. Empty view yields neither.
RankingTargets select_upd_targets(const RankingNodeState& node, const SliceSpec& spec,
                                  BoundaryMode mode, Rng& rng);

// Current slice belief; an estimate of 0 (nothing sampled yet, or every
// sample above) degenerates to slice 1.
inline std::uint32_t estimated_slice(const RankingNodeState& node, const SliceSpec& spec) {
  if (node.rank_estimate <= 0.0) return 1;
  return spec.slice_of(node.rank_estimate);
}

}  // namespace slicer
