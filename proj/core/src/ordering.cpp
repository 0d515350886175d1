#include "slicer/ordering.hpp"

#include <algorithm>
#include <numeric>

namespace slicer {

namespace {

struct Member {
  NodeId id;
  AttributeValue attribute;
  double value;
};

std::vector<Member> collect_members(const OrderingNodeState& node) {
  std::vector<Member> members;
  members.reserve(node.view.size() + 1);
  members.push_back(Member{node.id, node.attribute, node.random_value});
  for (const auto& e : node.view.entries())
    members.push_back(Member{e.id, e.attribute, e.payload});
  std::sort(members.begin(), members.end(),
            [](const Member& a, const Member& b) { return a.id < b.id; });
  return members;
}

}  // namespace

LocalIndices local_indices(const OrderingNodeState& node) {
  const auto members = collect_members(node);
  const std::size_t m = members.size();

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);

  LocalIndices out;
  out.members.reserve(m);
  out.attr_index.assign(m, 0);
  out.value_index.assign(m, 0);
  for (std::size_t k = 0; k < m; ++k) {
    out.members.push_back(members[k].id);
    if (members[k].id == node.id) out.self_pos = k;
  }

  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (members[a].attribute != members[b].attribute)
      return members[a].attribute < members[b].attribute;
    return members[a].id < members[b].id;
  });
  for (std::size_t r = 0; r < m; ++r) out.attr_index[order[r]] = static_cast<std::uint32_t>(r + 1);

  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (members[a].value != members[b].value) return members[a].value < members[b].value;
    return members[a].id < members[b].id;
  });
  for (std::size_t r = 0; r < m; ++r) out.value_index[order[r]] = static_cast<std::uint32_t>(r + 1);

  return out;
}

double ldm(const OrderingNodeState& node) {
  const LocalIndices idx = local_indices(node);
  double sum = 0.0;
  for (std::size_t k = 0; k < idx.members.size(); ++k) {
    const double d = static_cast<double>(idx.attr_index[k]) - static_cast<double>(idx.value_index[k]);
    sum += d * d;
  }
  return sum / static_cast<double>(idx.members.size());
}

namespace {

double gain_at(const LocalIndices& idx, std::size_t self, std::size_t j) {
  const double la_i = idx.attr_index[self];
  const double lv_i = idx.value_index[self];
  const double la_j = idx.attr_index[j];
  const double lv_j = idx.value_index[j];
  return la_i * lv_j + la_j * lv_i - la_j * lv_j;
}

}  // namespace

double gain(const OrderingNodeState& node, NodeId j) {
  if (!node.view.contains(j)) throw std::invalid_argument("gain: node not in view");
  const LocalIndices idx = local_indices(node);
  for (std::size_t k = 0; k < idx.members.size(); ++k)
    if (idx.members[k] == j) return gain_at(idx, idx.self_pos, k);
  throw std::invalid_argument("gain: node not in view");
}

std::optional<NodeId> select_target_jk(const OrderingNodeState& node, Rng& rng, JkTargetRule rule) {
  const auto entries = node.view.entries();
  if (entries.empty()) return std::nullopt;

  if (rule == JkTargetRule::uniform_any) {
    return entries[rng.below(entries.size())].id;
  }

  std::vector<NodeId> candidates;
  for (const auto& e : entries)
    if (misplaced(node.attribute, node.random_value, e.attribute, e.payload))
      candidates.push_back(e.id);
  if (candidates.empty()) return std::nullopt;
  std::sort(candidates.begin(), candidates.end());
  return candidates[rng.below(candidates.size())];
}

std::optional<NodeId> select_target_modjk(const OrderingNodeState& node) {
  if (node.view.empty()) return std::nullopt;
  const LocalIndices idx = local_indices(node);

  double best_gain = 0.0;
  std::optional<std::size_t> best;
  // members are in ascending id order; >= keeps the last maximum.
  for (std::size_t k = 0; k < idx.members.size(); ++k) {
    if (k == idx.self_pos) continue;
    const double g = gain_at(idx, idx.self_pos, k);
    if (g >= best_gain) {
      best_gain = g;
      best = k;
    }
  }
  if (!best) return std::nullopt;

  const NodeId chosen = idx.members[*best];
  const ViewEntry* entry = node.view.find(chosen);
  if (!misplaced(node.attribute, node.random_value, entry->attribute, entry->payload))
    return std::nullopt;
  return chosen;
}

}  // namespace slicer
