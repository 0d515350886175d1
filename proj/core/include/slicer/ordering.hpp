#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "slicer/rng.hpp"
#include "slicer/types.hpp"
#include "slicer/view.hpp"

namespace slicer {

// State of one node running a value-exchange ordering protocol. The node
// holds a random value in (0,1] it keeps swapping with misplaced peers;
// slice_estimate is the last slice it computed from that value (unset until
// the first adoption).
struct OrderingNodeState {
  NodeId id = 0;
  AttributeValue attribute = 0;
  double random_value = 0.0;
  std::optional<std::uint32_t> slice_estimate;
  View view;
};

// 1-based positions of every member of view ∪ {self} in the locally sorted
// attribute sequence and the locally sorted value sequence. Ties broken by
// id in both orders. members[k] pairs with attr_index[k] / value_index[k];
// members are listed in ascending id order and self_pos points at the owner.
struct LocalIndices {
  std::vector<NodeId> members;
  std::vector<std::uint32_t> attr_index;
  std::vector<std::uint32_t> value_index;
  std::size_t self_pos = 0;

  std::uint32_t attr_of(std::size_t k) const { return attr_index[k]; }
  std::uint32_t value_of(std::size_t k) const { return value_index[k]; }
};

LocalIndices local_indices(const OrderingNodeState& node);

// Local disorder measure: mean over view ∪ {self} of the squared gap
// between a member's local attribute index and local value index.
double ldm(const OrderingNodeState& node);

// Heuristic score of swapping with neighbor j:
//   la_i * lv_j + la_j * lv_i - la_j * lv_j
// over the local indices. Within one view scan its argmax coincides with
// the argmax of the direct LDM drop of the corresponding swap.
// Throws std::invalid_argument when j is not in the view.
double gain(const OrderingNodeState& node, NodeId j);

enum class JkTargetRule : std::uint8_t {
  uniform_misplaced,  // uniform choice among misplaced neighbors (default)
  uniform_any,        // uniform over the whole view; exchange is a no-op when not misplaced
};

// Baseline target choice: a uniformly random misplaced neighbor judged by
// the view's payloads, or nothing when no neighbor qualifies.
std::optional<NodeId> select_target_jk(const OrderingNodeState& node, Rng& rng,
                                       JkTargetRule rule = JkTargetRule::uniform_misplaced);

// Gain-guided target choice: scan the view in ascending id order keeping
// the last neighbor whose gain ties or beats the running maximum, then drop
// the pick when that neighbor is not actually misplaced per the view.
std::optional<NodeId> select_target_modjk(const OrderingNodeState& node);

// Current slice belief: the slice the node's present random value falls in.
inline std::uint32_t estimated_slice(const OrderingNodeState& node, const SliceSpec& spec) {
  return spec.slice_of(node.random_value);
}

}  // namespace slicer
