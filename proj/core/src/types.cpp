#include "slicer/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace slicer {

SliceSpec SliceSpec::equal_width(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("slice count must be positive");
  std::vector<double> b(k + 1);
  for (std::uint32_t j = 0; j <= k; ++j) b[j] = static_cast<double>(j) / k;
  b.front() = 0.0;
  b.back() = 1.0;
  return SliceSpec(std::move(b), k);
}

SliceSpec SliceSpec::from_boundaries(std::vector<double> boundaries) {
  if (boundaries.size() < 2) throw std::invalid_argument("need at least two boundaries");
  if (boundaries.front() != 0.0 || boundaries.back() != 1.0)
    throw std::invalid_argument("boundaries must start at 0 and end at 1");
  if (!std::is_sorted(boundaries.begin(), boundaries.end()) ||
      std::adjacent_find(boundaries.begin(), boundaries.end()) != boundaries.end())
    throw std::invalid_argument("boundaries must be strictly increasing");
  return SliceSpec(std::move(boundaries), 0);
}

std::uint32_t SliceSpec::slice_of(double x) const {
  if (!(x > 0.0) || !(x <= 1.0))
    throw std::domain_error("slice_of: value " + std::to_string(x) + " outside (0,1]");
  // First boundary >= x names the slice; boundaries_[0] == 0 < x always.
  auto it = std::lower_bound(boundaries_.begin() + 1, boundaries_.end(), x);
  return static_cast<std::uint32_t>(it - boundaries_.begin());
}

double SliceSpec::boundary_distance(double x) const {
  if (slice_count() < 2) return std::numeric_limits<double>::infinity();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 1; j + 1 < boundaries_.size(); ++j)
    best = std::min(best, std::fabs(x - boundaries_[j]));
  return best;
}

std::unordered_map<NodeId, std::uint32_t> attribute_ranks(
    std::span<const std::pair<NodeId, AttributeValue>> population) {
  std::vector<std::pair<NodeId, AttributeValue>> sorted(population.begin(), population.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& x, const auto& y) {
    if (x.second != y.second) return x.second < y.second;
    return x.first < y.first;
  });
  std::unordered_map<NodeId, std::uint32_t> ranks;
  ranks.reserve(sorted.size());
  std::uint32_t rank = 0;
  for (const auto& [id, attr] : sorted) {
    (void)attr;
    if (!ranks.emplace(id, ++rank).second)
      throw std::invalid_argument("attribute_ranks: duplicate node id " + std::to_string(id));
  }
  return ranks;
}

}  // namespace slicer
