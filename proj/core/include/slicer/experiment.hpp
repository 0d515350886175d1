#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "slicer/config.hpp"
#include "slicer/engine.hpp"
#include "slicer/metrics.hpp"

namespace slicer {

// A multi-seed experiment: one simulation per seed plus a per-cycle median
// aggregate, all written as CSV under out_dir.
struct ExperimentSpec {
  std::string name = "run";
  SimulationConfig config;
  std::vector<std::uint64_t> seeds;  // must be non-empty
  std::string out_dir = ".";

  void validate() const;  // throws ConfigError
};

// Median aggregate of MetricsRecord rows; counter medians may be half-
// integral, so every column widens to double.
struct AggregateRow {
  std::uint32_t cycle = 0;
  double gdm = 0.0;
  double sdm = 0.0;
  double messages_sent = 0.0;
  double useless_messages = 0.0;
  double unsuccessful_swaps = 0.0;
  double live_nodes = 0.0;
};

// One full simulation per seed (config.seed overridden by each entry),
// independent runs in parallel. Every returned series has cycles+1 rows
// (the cycle-0 snapshot first).
std::vector<std::vector<MetricsRecord>> run_seeds(const SimulationConfig& base,
                                                  const std::vector<std::uint64_t>& seeds);

// Per-cycle median across seed series. All series must have equal length.
// A column whose inputs are all NaN (gdm in ranking runs) stays NaN.
std::vector<AggregateRow> median_rows(const std::vector<std::vector<MetricsRecord>>& series);

// CSV emission: '#'-prefixed `key = value` comment lines echoing the
// config (plus the extra pairs given), then the column header
// `cycle,gdm,sdm,messages_sent,useless_messages,unsuccessful_swaps,live_nodes`,
// then the rows. Locale-independent: '.' decimals, '\n' endings.
void write_csv(std::ostream& out, const SimulationConfig& cfg,
               const std::vector<std::pair<std::string, std::string>>& extra,
               const std::vector<MetricsRecord>& rows);
void write_csv(std::ostream& out, const SimulationConfig& cfg,
               const std::vector<std::pair<std::string, std::string>>& extra,
               const std::vector<AggregateRow>& rows);

struct ExperimentResult {
  std::vector<std::string> files;                       // paths written, in order
  std::vector<std::vector<MetricsRecord>> seed_series;  // parallel to spec.seeds
  std::vector<AggregateRow> median;
};

// Runs the spec and writes <name>_seed<seed>.csv per seed plus
// <name>_median.csv. Rerunning an identical spec rewrites identical bytes.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// A one-axis parameter sweep: the base experiment repeated with `axis`
// (any config key) set to each value in turn.
struct SweepSpec {
  std::string name = "sweep";
  SimulationConfig config;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = ".";
  std::string axis;                  // config key, e.g. "protocol"
  std::vector<std::string> values;   // must be non-empty

  void validate() const;  // throws ConfigError (unknown axis, empty values)
};

struct SweepResult {
  std::vector<std::string> files;
  std::vector<ExperimentResult> cells;  // parallel to spec.values
};

// Runs one cell per axis value (each a full run_experiment named
// <name>_<value>), then writes <name>_sweep.csv: the per-cell median rows
// in long format with a leading axis column.
SweepResult run_sweep(const SweepSpec& spec);

// Built-in desk-scale experiment presets. Each is a ready SweepSpec with
// seeds 1..10; callers may override seeds and out_dir.
std::vector<std::string> recipe_names();
SweepSpec recipe(const std::string& name);  // throws ConfigError for unknown names

}  // namespace slicer
