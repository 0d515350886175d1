#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "slicer/metrics.hpp"
#include "slicer/ordering.hpp"
#include "slicer/ranking.hpp"
#include "slicer/types.hpp"

namespace slicer {

enum class Protocol : std::uint8_t { jk, modjk, ranking, ranking_windowed };
enum class Sampler : std::uint8_t { cyclon, uniform };
enum class Concurrency : std::uint8_t { none, half, full };
enum class ChurnMode : std::uint8_t { none, burst, regular };

// When the gain scan finds no positive-gain misplaced neighbor, either skip
// the cycle's exchange or burn a request on a random neighbor anyway.
enum class ModjkIdle : std::uint8_t { skip, random_neighbor };

struct ChurnSchedule {
  ChurnMode mode = ChurnMode::none;
  double rate = 0.001;               // fraction of n replaced per event
  std::uint32_t burst_cycles = 200;  // burst: one event in each of the first B cycles
  std::uint32_t regular_period = 10; // regular: an event every P cycles
  // 1 = departures are exactly the lowest-attribute nodes; lower values mix
  // in uniformly random departures with probability (1 - bias) each.
  double bias = 1.0;

  bool operator==(const ChurnSchedule&) const = default;
};

struct AttributeDistribution {
  enum class Kind : std::uint8_t { uniform, exponential } kind = Kind::uniform;
  AttributeValue lo = 0;                 // uniform: [lo, hi), distinct with retry
  AttributeValue hi = std::uint64_t{1} << 20;
  double mean = 1e5;                     // exponential: floor of an Exp(mean) draw

  bool operator==(const AttributeDistribution&) const = default;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SimulationConfig {
  std::uint32_t n = 1000;
  std::uint32_t c = 20;
  std::uint32_t slices = 10;             // equal-width count ...
  std::vector<double> boundaries;        // ... unless explicit boundaries are given
  Protocol protocol = Protocol::modjk;
  Sampler sampler = Sampler::cyclon;
  Concurrency concurrency = Concurrency::none;
  ChurnSchedule churn;
  std::uint32_t cycles = 500;
  std::uint64_t seed = 1;
  AttributeDistribution attributes;

  std::uint32_t window = 0;              // ranking_windowed capacity; 0 = 20*c
  JkTargetRule jk_target = JkTargetRule::uniform_misplaced;
  ModjkIdle modjk_idle = ModjkIdle::skip;
  BoundaryMode boundary_mode = BoundaryMode::neighbor_nearest;

  SliceSpec slice_spec() const;
  std::uint32_t effective_window() const { return window != 0 ? window : 20 * c; }
  bool ordering_family() const { return protocol == Protocol::jk || protocol == Protocol::modjk; }
  void validate() const;  // throws ConfigError

  bool operator==(const SimulationConfig&) const = default;
};

// Test/analysis hooks into a running simulation. on_cycle_start fires after
// churn has been applied, before any node steps; on_cycle_end fires after
// message resolution and metrics capture.
class Simulation;
struct SimObserver {
  virtual void on_cycle_start(const Simulation&, std::uint32_t /*cycle*/) {}
  virtual void on_cycle_end(const Simulation&, const MetricsRecord& /*record*/) {}
  virtual ~SimObserver() = default;
};

// A deterministic cycle-driven run: the whole event trace is a pure
// function of (config, seed). Each cycle applies churn, runs every live
// node's active step in a fresh seeded permutation, resolves overlapping
// messages, and captures a MetricsRecord.
class Simulation {
public:
  explicit Simulation(const SimulationConfig& config);
  ~Simulation();
  Simulation(Simulation&&) noexcept;
  Simulation& operator=(Simulation&&) noexcept;

  const SimulationConfig& config() const;
  const SliceSpec& slices() const;
  std::uint32_t cycle() const;

  // Metrics of the current state with zeroed counters (the cycle-0 row).
  MetricsRecord snapshot() const;

  MetricsRecord step();
  // Runs the remaining cycles; the returned series starts with the
  // snapshot row for the current cycle.
  std::vector<MetricsRecord> run(SimObserver* observer = nullptr);

  bool ordering_family() const;
  // Live node states, in unspecified order. Only the matching family is
  // non-empty.
  std::span<const OrderingNodeState> ordering_states() const;
  std::span<const RankingNodeState> ranking_states() const;

  // Messages dropped because their target had departed (not part of the
  // CSV schema, used by tests).
  std::uint64_t messages_lost() const;

  struct Impl;  // internal driver interface (defined in engine.cpp)

private:
  std::unique_ptr<Impl> impl_;
};

inline std::vector<MetricsRecord> run_simulation(const SimulationConfig& config,
                                                 SimObserver* observer = nullptr) {
  Simulation sim(config);
  return sim.run(observer);
}

}  // namespace slicer
