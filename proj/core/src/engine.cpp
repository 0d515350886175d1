#include "slicer/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <variant>

#include "slicer/rng.hpp"
#include "slicer/sampling.hpp"

namespace slicer {

SliceSpec SimulationConfig::slice_spec() const {
  if (!boundaries.empty()) return SliceSpec::from_boundaries(boundaries);
  return SliceSpec::equal_width(slices);
}

void SimulationConfig::validate() const {
  if (n < 2) throw ConfigError("n must be at least 2");
  if (c < 1) throw ConfigError("view capacity c must be at least 1");
  if (c >= n) throw ConfigError("view capacity c must be below n");
  if (cycles < 1) throw ConfigError("cycles must be at least 1");
  try {
    (void)slice_spec();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("bad slice spec: ") + e.what());
  }
  if (churn.rate < 0.0 || churn.rate >= 1.0) throw ConfigError("churn rate must be in [0,1)");
  if (churn.bias < 0.0 || churn.bias > 1.0) throw ConfigError("churn bias must be in [0,1]");
  if (churn.mode == ChurnMode::regular && churn.regular_period < 1)
    throw ConfigError("regular churn period must be at least 1");
  if (attributes.kind == AttributeDistribution::Kind::uniform) {
    if (attributes.hi <= attributes.lo || attributes.hi - attributes.lo < n)
      throw ConfigError("uniform attribute range must hold n distinct values");
  } else if (!(attributes.mean > 0.0)) {
    throw ConfigError("exponential attribute mean must be positive");
  }
}

namespace {

struct CycleCounters {
  std::uint64_t sent = 0;
  std::uint64_t useless = 0;
  std::uint64_t unsuccessful = 0;
};

}  // namespace

struct Simulation::Impl {
  virtual ~Impl() = default;
  virtual MetricsRecord step(SimObserver* obs, const Simulation& sim) = 0;
  virtual MetricsRecord snapshot() const = 0;
  virtual std::uint32_t cycle() const = 0;
  virtual const SimulationConfig& config() const = 0;
  virtual const SliceSpec& slices() const = 0;
  virtual std::span<const OrderingNodeState> ordering() const { return {}; }
  virtual std::span<const RankingNodeState> ranking() const { return {}; }
  virtual std::uint64_t lost() const = 0;
};

namespace {

// Shared population plumbing: node storage sorted by id, churn, view
// refresh, the per-cycle permutation. Derived drivers add the protocol
// messages. `Derived` provides fresh_state(), payload_of(), estimated(),
// active_step() and on_population_rebuilt().
template <typename Derived, typename State>
class DriverBase : public Simulation::Impl {
public:
  explicit DriverBase(const SimulationConfig& cfg)
      : cfg_(cfg), spec_(cfg.slice_spec()), rng_(cfg.seed) {}

  const SimulationConfig& config() const final { return cfg_; }
  const SliceSpec& slices() const final { return spec_; }
  std::uint32_t cycle() const final { return cycle_; }
  std::uint64_t lost() const final { return lost_total_; }

  MetricsRecord snapshot() const final {
    MetricsRecord rec;
    rec.cycle = cycle_;
    rec.gdm = self().gdm_value();
    rec.sdm = sdm_.value();
    rec.live_nodes = static_cast<std::uint32_t>(nodes_.size());
    return rec;
  }

  MetricsRecord step(SimObserver* obs, const Simulation& sim) final {
    ++cycle_;
    if (churn_due()) apply_churn();
    if (obs) obs->on_cycle_start(sim, cycle_);

    std::vector<NodeId> order;
    order.reserve(nodes_.size());
    for (const auto& n : nodes_) order.push_back(n.id);
    rng_.shuffle(order);
    for (NodeId id : order) self().active_step(nodes_[pos_.at(id)]);

    self().resolve_pending();
    // Ages advance once per cycle for every live view, at cycle end: an
    // entry received mid-cycle must not be re-shared at its received age
    // next cycle, or young stale copies would circulate without ever aging
    // out.
    for (auto& n : nodes_) n.view.age_entries();

    MetricsRecord rec;
    rec.cycle = cycle_;
    rec.gdm = self().gdm_value();
    rec.sdm = sdm_.value();
    rec.messages_sent = counters_.sent;
    rec.useless_messages = counters_.useless;
    rec.unsuccessful_swaps = counters_.unsuccessful;
    rec.live_nodes = static_cast<std::uint32_t>(nodes_.size());
    counters_ = CycleCounters{};
    if (obs) obs->on_cycle_end(sim, rec);
    return rec;
  }

protected:
  Derived& self() { return static_cast<Derived&>(*this); }
  const Derived& self() const { return static_cast<const Derived&>(*this); }

  void init_population() {
    const auto attrs = generate_attributes();
    nodes_.reserve(cfg_.n);
    for (std::uint32_t i = 0; i < cfg_.n; ++i) {
      const NodeId id = next_id_++;
      nodes_.push_back(self().fresh_state(id, attrs[i]));
      max_attr_ = std::max(max_attr_, attrs[i]);
    }
    rebuild_index();
    for (auto& n : nodes_) bootstrap_view(n);
    self().on_population_rebuilt();
  }

  std::vector<AttributeValue> generate_attributes() {
    std::vector<AttributeValue> attrs;
    attrs.reserve(cfg_.n);
    if (cfg_.attributes.kind == AttributeDistribution::Kind::uniform) {
      std::unordered_set<AttributeValue> used;
      const AttributeValue span = cfg_.attributes.hi - cfg_.attributes.lo;
      while (attrs.size() < cfg_.n) {
        const AttributeValue a = cfg_.attributes.lo + rng_.below(span);
        if (used.insert(a).second) attrs.push_back(a);
      }
    } else {
      for (std::uint32_t i = 0; i < cfg_.n; ++i)
        attrs.push_back(static_cast<AttributeValue>(std::floor(rng_.exponential(cfg_.attributes.mean))));
    }
    return attrs;
  }

  void rebuild_index() {
    pos_.clear();
    pos_.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) pos_.emplace(nodes_[i].id, i);
  }

  void bootstrap_view(State& node) {
    node.view = uniform_resample(
        node.id, cfg_.c, nodes_.size(), pos_.at(node.id),
        [this](std::size_t i) {
          const State& t = nodes_[i];
          return PeerProfile{t.id, t.attribute, self().payload_of(t)};
        },
        rng_);
  }

  void refresh_view(State& node) {
    if (cfg_.sampler == Sampler::uniform) {
      bootstrap_view(node);
      return;
    }
    while (auto partner_id = node.view.oldest(rng_)) {
      auto it = pos_.find(*partner_id);
      if (it == pos_.end()) {
        // Departed peer: drop the stale entry and try the next oldest.
        node.view.remove(*partner_id);
        continue;
      }
      State& partner = nodes_[it->second];
      cyclon_exchange(node.view,
                      self_descriptor(node.id, node.attribute, self().payload_of(node)),
                      partner.view,
                      self_descriptor(partner.id, partner.attribute, self().payload_of(partner)), rng_);
      break;
    }
  }

  bool churn_due() const {
    switch (cfg_.churn.mode) {
      case ChurnMode::none: return false;
      case ChurnMode::burst: return cycle_ <= cfg_.churn.burst_cycles;
      case ChurnMode::regular: return cycle_ % cfg_.churn.regular_period == 0;
    }
    return false;
  }

  void apply_churn() {
    const auto m = static_cast<std::size_t>(
        std::ceil(cfg_.churn.rate * static_cast<double>(nodes_.size())));
    if (m == 0) return;

    // Departures: by default exactly the lowest-(attribute, id) nodes; with
    // bias < 1 each pick degrades to a uniform victim with prob 1 - bias.
    std::vector<std::size_t> by_attr(nodes_.size());
    for (std::size_t i = 0; i < by_attr.size(); ++i) by_attr[i] = i;
    std::sort(by_attr.begin(), by_attr.end(), [this](std::size_t a, std::size_t b) {
      if (nodes_[a].attribute != nodes_[b].attribute)
        return nodes_[a].attribute < nodes_[b].attribute;
      return nodes_[a].id < nodes_[b].id;
    });
    std::vector<bool> picked(nodes_.size(), false);
    std::size_t lowest_cursor = 0;
    for (std::size_t k = 0; k < m && k < nodes_.size(); ++k) {
      if (cfg_.churn.bias >= 1.0 || rng_.bernoulli(cfg_.churn.bias)) {
        while (picked[by_attr[lowest_cursor]]) ++lowest_cursor;
        picked[by_attr[lowest_cursor]] = true;
      } else {
        std::size_t v;
        do {
          v = static_cast<std::size_t>(rng_.below(nodes_.size()));
        } while (picked[v]);
        picked[v] = true;
      }
    }
    std::vector<State> survivors;
    survivors.reserve(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (!picked[i]) survivors.push_back(std::move(nodes_[i]));
    nodes_ = std::move(survivors);

    // Arrivals: fresh ids, attributes strictly above everything seen so
    // far. Appending keeps the id ordering sorted.
    const std::size_t joining = m;
    for (std::size_t k = 0; k < joining; ++k) {
      const NodeId id = next_id_++;
      const AttributeValue attr = max_attr_ + 1 + rng_.below(100);
      max_attr_ = attr;
      nodes_.push_back(self().fresh_state(id, attr));
    }
    rebuild_index();
    for (std::size_t k = nodes_.size() - joining; k < nodes_.size(); ++k)
      bootstrap_view(nodes_[k]);
    self().on_population_rebuilt();
  }

  bool overlap_draw() {
    switch (cfg_.concurrency) {
      case Concurrency::none: return false;
      case Concurrency::half: return rng_.bernoulli(0.5);
      case Concurrency::full: return true;
    }
    return false;
  }

  SimulationConfig cfg_;
  SliceSpec spec_;
  Rng rng_;
  std::vector<State> nodes_;  // always sorted by id
  std::unordered_map<NodeId, std::size_t> pos_;
  AttributeValue max_attr_ = 0;
  NodeId next_id_ = 1;
  std::uint32_t cycle_ = 0;
  CycleCounters counters_;
  std::uint64_t lost_total_ = 0;
  SdmTracker sdm_;
};

class OrderingDriver final : public DriverBase<OrderingDriver, OrderingNodeState> {
public:
  explicit OrderingDriver(const SimulationConfig& cfg) : DriverBase(cfg) {
    sdm_.reset(spec_);
    init_population();
  }

  std::span<const OrderingNodeState> ordering() const final { return nodes_; }

  OrderingNodeState fresh_state(NodeId id, AttributeValue attr) {
    OrderingNodeState s;
    s.id = id;
    s.attribute = attr;
    s.random_value = rng_.unit_open_closed();
    return s;
  }

  double payload_of(const OrderingNodeState& s) const { return s.random_value; }

  double gdm_value() const { return gdm_.value(); }

  void on_population_rebuilt() {
    gdm_.rebuild(nodes_);
    sdm_.rebuild(nodes_, [this](const OrderingNodeState& s) { return estimated_slice(s, spec_); });
  }

  void active_step(OrderingNodeState& s) {
    refresh_view(s);
    std::optional<NodeId> target;
    if (cfg_.protocol == Protocol::jk) {
      target = select_target_jk(s, rng_, cfg_.jk_target);
    } else {
      target = select_target_modjk(s);
      if (!target && cfg_.modjk_idle == ModjkIdle::random_neighbor && !s.view.empty())
        target = s.view.entries()[rng_.below(s.view.size())].id;
    }
    if (target) {
      // The send-time condition is what the sender actually knows: the view
      // entry that motivated the exchange. A receipt-time re-check that
      // disagrees means the premise was stale — the payload aged in gossip,
      // or an overlapping exchange swapped it away mid-flight — and the
      // message was wasted.
      const ViewEntry* e = s.view.find(*target);
      const bool cond =
          e && misplaced(s.attribute, s.random_value, e->attribute, e->payload);
      send(Req{s.id, *target, s.random_value, s.attribute, cond});
    }
  }

  void resolve_pending() {
    // Uniform random next-delivery over everything still in transit,
    // replies included. Causal order holds by construction (a reply joins
    // the queue only once its request was delivered), while commit points
    // disperse through the phase: requests overtaken by a concurrent swap
    // meet post-swap state and fail their re-check instead of all being
    // judged against a frozen snapshot.
    while (!pending_.empty()) {
      const std::size_t k = rng_.below(pending_.size());
      const Message m = pending_[k];
      pending_[k] = pending_.back();
      pending_.pop_back();
      std::visit([this](const auto& msg) { deliver(msg); }, m);
    }
  }

private:
  // Exchange wire format. The request carries the initiator's value and
  // attribute; the acknowledgment answers with the responder's value at
  // receipt and whether the responder judged the pair misplaced then.
  struct Req {
    NodeId from, to;
    double r;
    AttributeValue a;
    bool cond_at_send;
  };
  struct Ack {
    NodeId from, to;
    double r_snapshot;
    bool responder_agreed;
  };
  using Message = std::variant<Req, Ack>;

  void send(const Req& m) {
    ++counters_.sent;
    if (overlap_draw()) pending_.push_back(m); else deliver(m);
  }
  void send(const Ack& m) {
    ++counters_.sent;
    if (overlap_draw()) pending_.push_back(m); else deliver(m);
  }

  void deliver(const Req& m) {
    auto it = pos_.find(m.to);
    if (it == pos_.end()) {
      ++lost_total_;
      return;
    }
    OrderingNodeState& j = nodes_[it->second];
    const bool agreed = misplaced(m.a, m.r, j.attribute, j.random_value);
    if (m.cond_at_send && !agreed) ++counters_.useless;
    send(Ack{j.id, m.from, j.random_value, agreed});
  }

  // The exchange commits here, as one atomic swap of the pair's current
  // values: the responder must have agreed at request receipt and the pair
  // must still be misplaced now. Swapping current values (rather than the
  // two sides adopting message snapshots independently) keeps the global
  // value multiset invariant under every concurrency mode; with
  // concurrency off it reduces to exactly the two independent checks.
  void deliver(const Ack& m) {
    auto ii = pos_.find(m.to);
    auto jj = pos_.find(m.from);
    if (ii == pos_.end() || jj == pos_.end()) {
      ++lost_total_;
      return;
    }
    OrderingNodeState& i = nodes_[ii->second];
    OrderingNodeState& j = nodes_[jj->second];
    const bool still =
        misplaced(j.attribute, j.random_value, i.attribute, i.random_value);
    if (m.responder_agreed && !still) ++counters_.useless;
    if (m.responder_agreed && still) {
      std::swap(i.random_value, j.random_value);
      i.slice_estimate = spec_.slice_of(i.random_value);
      j.slice_estimate = spec_.slice_of(j.random_value);
      gdm_.on_swap(i.id, j.id);
      sdm_.on_estimate_change(i.id, *i.slice_estimate);
      sdm_.on_estimate_change(j.id, *j.slice_estimate);
    } else {
      ++counters_.unsuccessful;
    }
  }

  GdmTracker gdm_;
  std::deque<Message> pending_;
};

class RankingDriver final : public DriverBase<RankingDriver, RankingNodeState> {
public:
  explicit RankingDriver(const SimulationConfig& cfg) : DriverBase(cfg) {
    sdm_.reset(spec_);
    init_population();
  }

  std::span<const RankingNodeState> ranking() const final { return nodes_; }

  RankingNodeState fresh_state(NodeId id, AttributeValue attr) {
    RankingNodeState s;
    s.id = id;
    s.attribute = attr;
    if (cfg_.protocol == Protocol::ranking_windowed)
      s.window_capacity = cfg_.effective_window();
    return s;
  }

  double payload_of(const RankingNodeState& s) const { return s.rank_estimate; }

  double gdm_value() const { return std::numeric_limits<double>::quiet_NaN(); }

  void on_population_rebuilt() {
    sdm_.rebuild(nodes_, [this](const RankingNodeState& s) { return estimated_slice(s, spec_); });
  }

  void active_step(RankingNodeState& s) {
    refresh_view(s);
    for (const auto& e : s.view.entries()) record_sample(s, e.attribute);
    const RankingTargets targets = select_upd_targets(s, spec_, cfg_.boundary_mode, rng_);
    if (targets.boundary) send(Upd{s.id, *targets.boundary, s.attribute});
    if (targets.random) send(Upd{s.id, *targets.random, s.attribute});
    refresh_estimate(s, spec_);
    sdm_.on_estimate_change(s.id, estimated_slice(s, spec_));
  }

  void resolve_pending() {
    if (pending_.empty()) return;
    std::vector<Upd> batch(pending_.begin(), pending_.end());
    pending_.clear();
    rng_.shuffle(batch);
    for (auto& m : batch) pending_.push_back(m);
    while (!pending_.empty()) {
      const Upd m = pending_.front();
      pending_.pop_front();
      deliver(m);
    }
  }

private:
  struct Upd {
    NodeId from, to;
    AttributeValue attribute;
  };

  void send(const Upd& m) {
    ++counters_.sent;
    if (overlap_draw()) pending_.push_back(m); else deliver(m);
  }

  void deliver(const Upd& m) {
    auto it = pos_.find(m.to);
    if (it == pos_.end()) {
      ++lost_total_;
      return;
    }
    RankingNodeState& nd = nodes_[it->second];
    process_upd(nd, UpdMessage{m.from, m.to, m.attribute}, spec_);
    sdm_.on_estimate_change(nd.id, estimated_slice(nd, spec_));
  }

  std::deque<Upd> pending_;
};

}  // namespace

Simulation::Simulation(const SimulationConfig& config) {
  config.validate();
  if (config.ordering_family())
    impl_ = std::make_unique<OrderingDriver>(config);
  else
    impl_ = std::make_unique<RankingDriver>(config);
}

Simulation::~Simulation() = default;
Simulation::Simulation(Simulation&&) noexcept = default;
Simulation& Simulation::operator=(Simulation&&) noexcept = default;

const SimulationConfig& Simulation::config() const { return impl_->config(); }
const SliceSpec& Simulation::slices() const { return impl_->slices(); }
std::uint32_t Simulation::cycle() const { return impl_->cycle(); }
MetricsRecord Simulation::snapshot() const { return impl_->snapshot(); }
MetricsRecord Simulation::step() { return impl_->step(nullptr, *this); }

std::vector<MetricsRecord> Simulation::run(SimObserver* observer) {
  std::vector<MetricsRecord> rows;
  rows.reserve(config().cycles + 1);
  rows.push_back(snapshot());
  if (observer) observer->on_cycle_end(*this, rows.back());
  while (cycle() < config().cycles) rows.push_back(impl_->step(observer, *this));
  return rows;
}

bool Simulation::ordering_family() const { return config().ordering_family(); }
std::span<const OrderingNodeState> Simulation::ordering_states() const { return impl_->ordering(); }
std::span<const RankingNodeState> Simulation::ranking_states() const { return impl_->ranking(); }
std::uint64_t Simulation::messages_lost() const { return impl_->lost(); }

}  // namespace slicer
