#pragma once

#include <cstdint>
#include <span>

#include "slicer/rng.hpp"
#include "slicer/view.hpp"

namespace slicer {

// Ground-truth row handed to the ideal sampler.
struct PeerProfile {
  NodeId id = 0;
  AttributeValue attribute = 0;
  double payload = 0.0;
};

inline ViewEntry self_descriptor(NodeId id, AttributeValue attribute, double payload) {
  return ViewEntry{id, 0, attribute, payload};
}

// One full shuffle between an initiator and its chosen partner. Each side
// sends every entry it holds plus a fresh descriptor of itself; the
// received descriptors then replace what was sent (entries describing the
// receiver are dropped, a peer held on both sides keeps the younger copy,
// own previous entries backfill a short result, and anything over capacity
// is truncated preferring young entries, age ties resolved at random).
// Ages are not touched here; the owner bumps them at the end of its own
// cycle.
void cyclon_exchange(View& initiator, const ViewEntry& initiator_self,
                     View& partner, const ViewEntry& partner_self, Rng& rng);

// Ideal sampler: a fresh view of min(capacity, population-1) distinct peers
// drawn uniformly without replacement, never the owner, ages all zero,
// attribute and payload copied from the profiles as they are now.
// `profile_at` maps a dense index in [0, population_size) to a PeerProfile;
// `self_index` is the owner's slot and is excluded from the draw.
template <typename ProfileAt>
View uniform_resample(NodeId owner, std::uint32_t capacity, std::size_t population_size,
                      std::size_t self_index, ProfileAt&& profile_at, Rng& rng) {
  View v(owner, capacity);
  if (population_size <= 1) return v;
  const std::size_t others = population_size - 1;
  std::vector<ViewEntry> entries;
  auto picks = rng.sample_indices(others, capacity);
  entries.reserve(picks.size());
  for (std::size_t idx : picks) {
    const std::size_t mapped = idx >= self_index ? idx + 1 : idx;
    const PeerProfile p = profile_at(mapped);
    entries.push_back(ViewEntry{p.id, 0, p.attribute, p.payload});
  }
  v.assign(std::move(entries));
  return v;
}

// Convenience overload over a materialized population (the owner may or may
// not appear in the span).
View uniform_resample(NodeId owner, std::uint32_t capacity,
                      std::span<const PeerProfile> population, Rng& rng);

}  // namespace slicer
