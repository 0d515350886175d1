#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace slicer {

using NodeId = std::uint64_t;
using AttributeValue = std::uint64_t;

// A partition of (0,1] into consecutive slices. Boundaries are strictly
// increasing, start at 0 and end at 1; slice j (1-based) is (b[j-1], b[j]].
class SliceSpec {
public:
  SliceSpec() : SliceSpec(equal_width(1)) {}

  static SliceSpec equal_width(std::uint32_t k);
  static SliceSpec from_boundaries(std::vector<double> boundaries);

  std::uint32_t slice_count() const { return static_cast<std::uint32_t>(boundaries_.size() - 1); }

  // 1-based index of the slice containing x. Throws std::domain_error for
  // x outside (0,1]; comparisons are exact, a value sitting on a boundary
  // belongs to the lower slice.
  std::uint32_t slice_of(double x) const;

  double lower(std::uint32_t slice) const { return boundaries_.at(slice - 1); }
  double upper(std::uint32_t slice) const { return boundaries_.at(slice); }
  double width(std::uint32_t slice) const { return upper(slice) - lower(slice); }
  double midpoint(std::uint32_t slice) const { return (lower(slice) + upper(slice)) / 2.0; }

  // Distance from x to the nearest boundary separating two slices (0 and 1
  // do not separate anything). +infinity for a single-slice spec.
  double boundary_distance(double x) const;

  std::span<const double> boundaries() const { return boundaries_; }

  // Set when the spec was built by equal_width(); used for round-tripping
  // configs.
  std::uint32_t equal_width_count() const { return equal_width_k_; }

  friend bool operator==(const SliceSpec& a, const SliceSpec& b) {
    return a.boundaries_ == b.boundaries_;
  }

private:
  explicit SliceSpec(std::vector<double> boundaries, std::uint32_t equal_k)
      : boundaries_(std::move(boundaries)), equal_width_k_(equal_k) {}

  std::vector<double> boundaries_;
  std::uint32_t equal_width_k_ = 0;  // 0 when custom boundaries were given
};

// True when the pair (i, j) is misplaced: their attribute order and their
// random-value order disagree, i.e. (a_j - a_i) * (r_j - r_i) < 0.
// Implemented on comparison signs so unsigned attributes never underflow.
inline bool misplaced(AttributeValue a_i, double r_i, AttributeValue a_j, double r_j) {
  const int sign_a = (a_j > a_i) - (a_j < a_i);
  const int sign_r = (r_j > r_i) - (r_j < r_i);
  return sign_a * sign_r < 0;
}

// Dense 1-based ranks ordered by (attribute, id). Throws
// std::invalid_argument on duplicate node ids.
std::unordered_map<NodeId, std::uint32_t> attribute_ranks(
    std::span<const std::pair<NodeId, AttributeValue>> population);

}  // namespace slicer
