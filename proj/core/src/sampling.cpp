#include "slicer/sampling.hpp"

#include <algorithm>

#include "slicer/rng.hpp"

namespace slicer {

std::optional<NodeId> View::oldest(Rng& rng) const {
  if (entries_.empty()) return std::nullopt;
  std::uint32_t max_age = 0;
  for (const auto& e : entries_) max_age = std::max(max_age, e.age);
  std::vector<NodeId> tied;
  for (const auto& e : entries_)
    if (e.age == max_age) tied.push_back(e.id);
  return tied.size() == 1 ? tied.front() : tied[rng.below(tied.size())];
}

void View::remove(NodeId id) {
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                [id](const ViewEntry& e) { return e.id == id; }),
                 entries_.end());
}

void View::assign(std::vector<ViewEntry> entries) {
  std::vector<NodeId> ids;
  ids.reserve(entries.size());
  for (const auto& e : entries) {
    if (e.id == owner_) throw std::invalid_argument("view must not contain its owner");
    ids.push_back(e.id);
  }
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw std::invalid_argument("view entries must be distinct");
  entries_ = std::move(entries);
  canonicalize();
  if (entries_.size() > capacity_) entries_.resize(capacity_);
}

void View::canonicalize() {
  std::sort(entries_.begin(), entries_.end(), [](const ViewEntry& a, const ViewEntry& b) {
    if (a.age != b.age) return a.age < b.age;
    return a.id < b.id;
  });
}

namespace {

// One side of a shuffle. Everything the node held was sent to the peer, so
// the received descriptors take over its slots; its previous entries only
// backfill when fewer than `capacity` arrive. This conservation (descriptors
// hop between views instead of multiplying) is what keeps the neighbor
// supply close to uniform: retaining both sides' copies would let young
// entries double at every exchange and the truncation tie-break would then
// concentrate all views onto a few small ids.
std::vector<ViewEntry> shuffle_merge(NodeId owner, std::uint32_t capacity,
                                     std::span<const ViewEntry> received,
                                     std::span<const ViewEntry> leftovers, Rng& rng) {
  std::vector<ViewEntry> out;
  out.reserve(capacity + 1);
  for (const auto& r : received)
    if (r.id != owner) out.push_back(r);
  // A leftover copy of a peer that was also received collapses to the
  // younger of the two (the received copy on an age tie).
  auto slot_of = [&out](NodeId id) -> ViewEntry* {
    for (auto& e : out)
      if (e.id == id) return &e;
    return nullptr;
  };
  std::vector<ViewEntry> spare;
  for (const auto& l : leftovers) {
    if (ViewEntry* e = slot_of(l.id)) {
      if (l.age < e->age) *e = l;
    } else {
      spare.push_back(l);
    }
  }
  // Retention prefers young entries; within one age everything is equally
  // fresh, so the victim of a cut (and the order backfill is drawn in) is
  // chosen at random. A fixed tie-break here would hand the same nodes a
  // permanent survival edge and skew the whole neighbor supply toward them.
  auto by_age = [](const ViewEntry& a, const ViewEntry& b) { return a.age < b.age; };
  rng.shuffle(out);
  std::stable_sort(out.begin(), out.end(), by_age);
  if (out.size() > capacity) {
    out.resize(capacity);
  } else if (!spare.empty()) {
    rng.shuffle(spare);
    std::stable_sort(spare.begin(), spare.end(), by_age);
    for (const ViewEntry& s : spare) {
      if (out.size() == capacity) break;
      out.push_back(s);
    }
  }
  return out;
}

}  // namespace

void cyclon_exchange(View& initiator, const ViewEntry& initiator_self,
                     View& partner, const ViewEntry& partner_self, Rng& rng) {
  std::vector<ViewEntry> from_initiator(initiator.entries().begin(), initiator.entries().end());
  std::vector<ViewEntry> from_partner(partner.entries().begin(), partner.entries().end());
  std::vector<ViewEntry> to_initiator = from_partner;
  to_initiator.push_back(partner_self);
  std::vector<ViewEntry> to_partner = from_initiator;
  to_partner.push_back(initiator_self);

  initiator.assign(shuffle_merge(initiator.owner(), initiator.capacity(),
                                 to_initiator, from_initiator, rng));
  partner.assign(shuffle_merge(partner.owner(), partner.capacity(),
                               to_partner, from_partner, rng));
}

View uniform_resample(NodeId owner, std::uint32_t capacity,
                      std::span<const PeerProfile> population, Rng& rng) {
  std::vector<PeerProfile> others;
  others.reserve(population.size());
  for (const auto& p : population)
    if (p.id != owner) others.push_back(p);
  View v(owner, capacity);
  std::vector<ViewEntry> entries;
  for (std::size_t idx : rng.sample_indices(others.size(), capacity))
    entries.push_back(ViewEntry{others[idx].id, 0, others[idx].attribute, others[idx].payload});
  v.assign(std::move(entries));
  return v;
}

}  // namespace slicer
