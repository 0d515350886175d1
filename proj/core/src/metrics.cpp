#include "slicer/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace slicer {

namespace {

// Value ranks: 1-based positions in the (value, id)-sorted sequence.
std::unordered_map<NodeId, std::uint32_t> value_ranks(
    std::vector<std::pair<NodeId, double>> values) {
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second < b.second;
    return a.first < b.first;
  });
  std::unordered_map<NodeId, std::uint32_t> ranks;
  ranks.reserve(values.size());
  std::uint32_t r = 0;
  for (const auto& [id, v] : values) {
    (void)v;
    ranks.emplace(id, ++r);
  }
  return ranks;
}

template <typename State, typename EstimatedSlice>
double sdm_impl(std::span<const State> nodes, const SliceSpec& spec, EstimatedSlice&& estimated) {
  std::vector<std::pair<NodeId, AttributeValue>> attrs;
  attrs.reserve(nodes.size());
  for (const auto& n : nodes) attrs.emplace_back(n.id, n.attribute);
  const auto ranks = attribute_ranks(std::span<const std::pair<NodeId, AttributeValue>>(attrs));
  const double n_live = static_cast<double>(nodes.size());

  std::vector<const State*> by_id;
  by_id.reserve(nodes.size());
  for (const auto& n : nodes) by_id.push_back(&n);
  std::sort(by_id.begin(), by_id.end(),
            [](const State* a, const State* b) { return a->id < b->id; });

  double sum = 0.0;
  for (const State* n : by_id) {
    const double normalized = static_cast<double>(ranks.at(n->id)) / n_live;
    sum += sdm_contribution(spec, spec.slice_of(normalized), estimated(*n));
  }
  return sum;
}

}  // namespace

double gdm(std::span<const OrderingNodeState> nodes) {
  std::vector<std::pair<NodeId, AttributeValue>> attrs;
  std::vector<std::pair<NodeId, double>> values;
  attrs.reserve(nodes.size());
  values.reserve(nodes.size());
  for (const auto& n : nodes) {
    attrs.emplace_back(n.id, n.attribute);
    values.emplace_back(n.id, n.random_value);
  }
  const auto alpha = attribute_ranks(std::span<const std::pair<NodeId, AttributeValue>>(attrs));
  const auto rho = value_ranks(std::move(values));

  long long sum_sq = 0;
  for (const auto& n : nodes) {
    const long long d = static_cast<long long>(alpha.at(n.id)) - static_cast<long long>(rho.at(n.id));
    sum_sq += d * d;
  }
  return static_cast<double>(sum_sq) / static_cast<double>(nodes.size());
}

double sdm(std::span<const OrderingNodeState> nodes, const SliceSpec& spec) {
  return sdm_impl(nodes, spec,
                  [&spec](const OrderingNodeState& n) { return estimated_slice(n, spec); });
}

double sdm(std::span<const RankingNodeState> nodes, const SliceSpec& spec) {
  return sdm_impl(nodes, spec,
                  [&spec](const RankingNodeState& n) { return estimated_slice(n, spec); });
}

void GdmTracker::rebuild_from(std::vector<std::pair<NodeId, AttributeValue>> attrs,
                              std::vector<std::pair<NodeId, double>> values) {
  alpha_ = attribute_ranks(std::span<const std::pair<NodeId, AttributeValue>>(attrs));
  rho_ = value_ranks(std::move(values));
  sum_sq_ = 0;
  for (const auto& [id, a] : alpha_) {
    const long long d = static_cast<long long>(a) - static_cast<long long>(rho_.at(id));
    sum_sq_ += d * d;
  }
}

void GdmTracker::on_swap(NodeId a, NodeId b) {
  auto ra = rho_.find(a);
  auto rb = rho_.find(b);
  const long long aa = alpha_.at(a), ab = alpha_.at(b);
  const long long va = ra->second, vb = rb->second;
  sum_sq_ -= (aa - va) * (aa - va) + (ab - vb) * (ab - vb);
  sum_sq_ += (aa - vb) * (aa - vb) + (ab - va) * (ab - va);
  std::swap(ra->second, rb->second);
}

double GdmTracker::value() const {
  return static_cast<double>(sum_sq_) / static_cast<double>(alpha_.size());
}

double SdmTracker::value() const {
  std::vector<NodeId> ids;
  ids.reserve(contribution_.size());
  for (const auto& [id, c] : contribution_) {
    (void)c;
    ids.push_back(id);
  }
  std::sort(ids.begin(), ids.end());
  double sum = 0.0;
  for (NodeId id : ids) sum += contribution_.at(id);
  return sum;
}

}  // namespace slicer
