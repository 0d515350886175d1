#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "slicer/types.hpp"

namespace slicer {

class Rng;

// A peer descriptor as it travels between views. The payload is whatever
// the owning protocol gossips alongside the attribute: the random value for
// the ordering protocols, the rank estimate for the ranking protocol. It is
// a snapshot from when the descriptor was created and can go stale.
struct ViewEntry {
  NodeId id = 0;
  std::uint32_t age = 0;
  AttributeValue attribute = 0;
  double payload = 0.0;
};

// A node's partial membership view: at most `capacity` entries, never the
// owner itself, at most one entry per peer. Entries are kept sorted by
// (age, id) so every view operation is order-deterministic.
class View {
public:
  View() = default;
  View(NodeId owner, std::uint32_t capacity) : owner_(owner), capacity_(capacity) {}

  NodeId owner() const { return owner_; }
  std::uint32_t capacity() const { return capacity_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const ViewEntry> entries() const { return entries_; }

  const ViewEntry* find(NodeId id) const {
    for (const auto& e : entries_)
      if (e.id == id) return &e;
    return nullptr;
  }
  bool contains(NodeId id) const { return find(id) != nullptr; }

  // Shuffle partner choice: the entry with maximal age; a tie is settled
  // uniformly at random so no peer is systematically favored. Empty view
  // yields nothing.
  std::optional<NodeId> oldest(Rng& rng) const;

  void remove(NodeId id);
  void age_entries() {
    for (auto& e : entries_) ++e.age;
  }

  // Replace the whole content (bootstrap, fresh uniform sample, or the
  // merged result of a shuffle).
  void assign(std::vector<ViewEntry> entries);

private:
  void canonicalize();

  std::vector<ViewEntry> entries_;
  NodeId owner_ = 0;
  std::uint32_t capacity_ = 0;
};

}  // namespace slicer
