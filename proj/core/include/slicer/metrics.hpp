#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "slicer/ordering.hpp"
#include "slicer/ranking.hpp"
#include "slicer/types.hpp"

namespace slicer {

// One CSV row: the per-cycle message counters plus the two disorder
// metrics. gdm is NaN for ranking runs, where no permutation of random
// values exists to measure.
struct MetricsRecord {
  std::uint32_t cycle = 0;
  double gdm = 0.0;
  double sdm = 0.0;
  std::uint64_t messages_sent = 0;
  std::uint64_t useless_messages = 0;
  std::uint64_t unsuccessful_swaps = 0;
  std::uint32_t live_nodes = 0;
};

// Global disorder: mean squared gap between each node's global attribute
// rank and its random value's rank, both 1-based with ties broken by id.
double gdm(std::span<const OrderingNodeState> nodes);

// One node's slice disorder term, shared by the full recomputation and the
// incremental tracker so the two stay bit-identical.
inline double sdm_contribution(const SliceSpec& spec, std::uint32_t true_slice,
                               std::uint32_t estimated) {
  const double gap = spec.midpoint(true_slice) - spec.midpoint(estimated);
  return (gap < 0 ? -gap : gap) / spec.width(true_slice);
}

// Slice disorder: per node, the distance between the midpoint of its true
// slice (from the normalized attribute rank) and the midpoint of its
// estimated slice, in units of the true slice's width, summed over nodes.
double sdm(std::span<const OrderingNodeState> nodes, const SliceSpec& spec);
double sdm(std::span<const RankingNodeState> nodes, const SliceSpec& spec);

// Incrementally maintained GDM. Swaps transpose exactly two value ranks,
// so the integer sum of squared gaps adjusts in O(1); churn rebuilds.
class GdmTracker {
public:
  template <typename Nodes>
  void rebuild(const Nodes& nodes) {
    std::vector<std::pair<NodeId, AttributeValue>> attrs;
    std::vector<std::pair<NodeId, double>> values;
    attrs.reserve(nodes.size());
    values.reserve(nodes.size());
    for (const auto& n : nodes) {
      attrs.emplace_back(n.id, n.attribute);
      values.emplace_back(n.id, n.random_value);
    }
    rebuild_from(std::move(attrs), std::move(values));
  }

  // The two nodes exchanged their random values.
  void on_swap(NodeId a, NodeId b);

  double value() const;
  std::size_t population() const { return alpha_.size(); }

private:
  void rebuild_from(std::vector<std::pair<NodeId, AttributeValue>> attrs,
                    std::vector<std::pair<NodeId, double>> values);

  std::unordered_map<NodeId, std::uint32_t> alpha_;
  std::unordered_map<NodeId, std::uint32_t> rho_;
  long long sum_sq_ = 0;
};

// Incrementally maintained SDM: cached per-node contributions, refreshed
// when a node's estimated slice changes; the total is summed in ascending
// id order on query, matching the full recomputation bit for bit.
class SdmTracker {
public:
  void reset(const SliceSpec& spec) {
    spec_ = spec;
    true_slice_.clear();
    contribution_.clear();
  }

  template <typename Nodes, typename EstimatedSlice>
  void rebuild(const Nodes& nodes, EstimatedSlice&& estimated) {
    true_slice_.clear();
    contribution_.clear();
    std::vector<std::pair<NodeId, AttributeValue>> attrs;
    attrs.reserve(nodes.size());
    for (const auto& n : nodes) attrs.emplace_back(n.id, n.attribute);
    const auto ranks = attribute_ranks(std::span<const std::pair<NodeId, AttributeValue>>(attrs));
    const double n_live = static_cast<double>(attrs.size());
    for (const auto& n : nodes) {
      const double normalized = static_cast<double>(ranks.at(n.id)) / n_live;
      const std::uint32_t truth = spec_.slice_of(normalized);
      true_slice_[n.id] = truth;
      contribution_[n.id] = sdm_contribution(spec_, truth, estimated(n));
    }
  }

  void on_estimate_change(NodeId id, std::uint32_t estimated_slice) {
    contribution_.at(id) = sdm_contribution(spec_, true_slice_.at(id), estimated_slice);
  }

  double value() const;

private:
  SliceSpec spec_;
  std::unordered_map<NodeId, std::uint32_t> true_slice_;
  std::unordered_map<NodeId, double> contribution_;
};

}  // namespace slicer
