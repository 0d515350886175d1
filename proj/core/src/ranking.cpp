#include "slicer/ranking.hpp"

#include <cmath>
#include <limits>

namespace slicer {

void record_sample(RankingNodeState& node, AttributeValue seen) {
  ++node.samples_seen;
  const bool below = seen <= node.attribute;
  if (below) ++node.samples_below;
  if (node.window_capacity > 0) {
    node.window.push_back(below);
    if (below) ++node.window_true;
    if (node.window.size() > node.window_capacity) {
      if (node.window.front()) --node.window_true;
      node.window.pop_front();
    }
  }
}

void refresh_estimate(RankingNodeState& node, const SliceSpec& spec) {
  if (node.window_capacity > 0) {
    if (node.window.empty()) return;
    node.rank_estimate =
        static_cast<double>(node.window_true) / static_cast<double>(node.window.size());
  } else {
    if (node.samples_seen == 0) return;
    node.rank_estimate =
        static_cast<double>(node.samples_below) / static_cast<double>(node.samples_seen);
  }
  node.slice_estimate = node.rank_estimate <= 0.0 ? 1 : spec.slice_of(node.rank_estimate);
}

void process_upd(RankingNodeState& node, const UpdMessage& msg, const SliceSpec& spec) {
  record_sample(node, msg.attribute);
  ++node.upd_received;
  refresh_estimate(node, spec);
}

RankingTargets select_upd_targets(const RankingNodeState& node, const SliceSpec& spec,
                                  BoundaryMode mode, Rng& rng) {
  RankingTargets out;
  const auto entries = node.view.entries();
  if (entries.empty()) return out;

  double self_boundary = 0.0;
  if (mode == BoundaryMode::self_nearest) {
    // The boundary nearest this node's own estimate, against which every
    // neighbor's estimate is measured.
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j + 1 < spec.boundaries().size(); ++j) {
      const double b = spec.boundaries()[j];
      const double d = std::fabs(node.rank_estimate - b);
      if (d < best) {
        best = d;
        self_boundary = b;
      }
    }
    if (!std::isfinite(best)) mode = BoundaryMode::neighbor_nearest;  // single slice
  }

  double best_dist = std::numeric_limits<double>::infinity();
  NodeId best_id = 0;
  bool have = false;
  for (const auto& e : entries) {
    const double d = mode == BoundaryMode::self_nearest
                         ? std::fabs(e.payload - self_boundary)
                         : spec.boundary_distance(e.payload);
    if (!have || d < best_dist || (d == best_dist && e.id < best_id)) {
      best_dist = d;
      best_id = e.id;
      have = true;
    }
  }
  out.boundary = best_id;
  out.random = entries[rng.below(entries.size())].id;
  return out;
}

}  // namespace slicer
