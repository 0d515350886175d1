#include "slicer/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>
#include <stdexcept>

namespace slicer {

namespace {

bool valid_stem(const std::string& s) {
  if (s.empty()) return false;
  for (const char ch : s) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '_' || ch == '-';
    if (!ok) return false;
  }
  return true;
}

std::string sanitize_stem(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char ch : s) {
    const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                    (ch >= '0' && ch <= '9') || ch == '_' || ch == '-';
    out.push_back(ok ? ch : '_');
  }
  return out.empty() ? std::string("value") : out;
}

double median_of(std::vector<double>& vals) {
  vals.erase(std::remove_if(vals.begin(), vals.end(),
                            [](double v) { return std::isnan(v); }),
             vals.end());
  if (vals.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(vals.begin(), vals.end());
  const std::size_t n = vals.size();
  if (n % 2 == 1) return vals[n / 2];
  return 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

void write_header(std::ostream& out, const SimulationConfig& cfg,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
  for (const auto& [k, v] : config_items(cfg)) out << "# " << k << " = " << v << "\n";
  for (const auto& [k, v] : extra) out << "# " << k << " = " << v << "\n";
  out << "cycle,gdm,sdm,messages_sent,useless_messages,unsuccessful_swaps,live_nodes\n";
}

std::string seeds_csv(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(seeds[i]);
  }
  return s;
}

void write_file(const std::filesystem::path& path, const SimulationConfig& cfg,
                const std::vector<std::pair<std::string, std::string>>& extra,
                const auto& rows, std::vector<std::string>& files) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  write_csv(out, cfg, extra, rows);
  files.push_back(path.string());
}

}  // namespace

void ExperimentSpec::validate() const {
  if (!valid_stem(name)) throw ConfigError("experiment name must be a bare file stem");
  if (seeds.empty()) throw ConfigError("seed list must not be empty");
  config.validate();
}

void SweepSpec::validate() const {
  if (!valid_stem(name)) throw ConfigError("sweep name must be a bare file stem");
  if (seeds.empty()) throw ConfigError("seed list must not be empty");
  if (values.empty()) throw ConfigError("sweep value list must not be empty");
  SimulationConfig probe = config;
  if (!apply_setting(probe, axis, values.front()))
    throw ConfigError("unknown sweep axis '" + axis + "'");
  config.validate();
}

std::vector<std::vector<MetricsRecord>> run_seeds(const SimulationConfig& base,
                                                  const std::vector<std::uint64_t>& seeds) {
  std::vector<std::future<std::vector<MetricsRecord>>> futures;
  futures.reserve(seeds.size());
  for (const std::uint64_t seed : seeds) {
    SimulationConfig cfg = base;
    cfg.seed = seed;
    futures.push_back(std::async(std::launch::async,
                                 [cfg] { return run_simulation(cfg); }));
  }
  std::vector<std::vector<MetricsRecord>> out;
  out.reserve(seeds.size());
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

std::vector<AggregateRow> median_rows(const std::vector<std::vector<MetricsRecord>>& series) {
  if (series.empty()) return {};
  const std::size_t rows = series.front().size();
  for (const auto& s : series)
    if (s.size() != rows) throw std::invalid_argument("seed series lengths differ");

  std::vector<AggregateRow> out;
  out.reserve(rows);
  std::vector<double> col;
  col.reserve(series.size());
  auto med = [&](auto&& get) {
    col.clear();
    for (const auto& s : series) col.push_back(get(s));
    return median_of(col);
  };
  for (std::size_t t = 0; t < rows; ++t) {
    AggregateRow r;
    r.cycle = series.front()[t].cycle;
    r.gdm = med([t](const auto& s) { return s[t].gdm; });
    r.sdm = med([t](const auto& s) { return s[t].sdm; });
    r.messages_sent = med([t](const auto& s) { return double(s[t].messages_sent); });
    r.useless_messages = med([t](const auto& s) { return double(s[t].useless_messages); });
    r.unsuccessful_swaps = med([t](const auto& s) { return double(s[t].unsuccessful_swaps); });
    r.live_nodes = med([t](const auto& s) { return double(s[t].live_nodes); });
    out.push_back(r);
  }
  return out;
}

void write_csv(std::ostream& out, const SimulationConfig& cfg,
               const std::vector<std::pair<std::string, std::string>>& extra,
               const std::vector<MetricsRecord>& rows) {
  write_header(out, cfg, extra);
  for (const auto& r : rows) {
    out << r.cycle << ',' << format_double(r.gdm) << ',' << format_double(r.sdm) << ','
        << r.messages_sent << ',' << r.useless_messages << ',' << r.unsuccessful_swaps
        << ',' << r.live_nodes << "\n";
  }
}

void write_csv(std::ostream& out, const SimulationConfig& cfg,
               const std::vector<std::pair<std::string, std::string>>& extra,
               const std::vector<AggregateRow>& rows) {
  write_header(out, cfg, extra);
  for (const auto& r : rows) {
    out << r.cycle << ',' << format_double(r.gdm) << ',' << format_double(r.sdm) << ','
        << format_double(r.messages_sent) << ',' << format_double(r.useless_messages) << ','
        << format_double(r.unsuccessful_swaps) << ',' << format_double(r.live_nodes) << "\n";
  }
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const std::filesystem::path dir(spec.out_dir);
  std::filesystem::create_directories(dir);

  ExperimentResult res;
  res.seed_series = run_seeds(spec.config, spec.seeds);
  for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
    SimulationConfig cfg = spec.config;
    cfg.seed = spec.seeds[i];
    write_file(dir / (spec.name + "_seed" + std::to_string(spec.seeds[i]) + ".csv"), cfg,
               {{"name", spec.name}, {"seed", std::to_string(spec.seeds[i])}},
               res.seed_series[i], res.files);
  }
  res.median = median_rows(res.seed_series);
  write_file(dir / (spec.name + "_median.csv"), spec.config,
             {{"name", spec.name},
              {"seeds", seeds_csv(spec.seeds)},
              {"aggregate", "median"}},
             res.median, res.files);
  return res;
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::filesystem::path dir(spec.out_dir);
  std::filesystem::create_directories(dir);

  SweepResult res;
  for (const auto& value : spec.values) {
    ExperimentSpec cell;
    cell.name = spec.name + "_" + sanitize_stem(value);
    cell.config = spec.config;
    apply_setting(cell.config, spec.axis, value);
    cell.seeds = spec.seeds;
    cell.out_dir = spec.out_dir;
    res.cells.push_back(run_experiment(cell));
    for (const auto& f : res.cells.back().files) res.files.push_back(f);
  }

  const std::filesystem::path path = dir / (spec.name + "_sweep.csv");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  for (const auto& [k, v] : config_items(spec.config))
    if (k != spec.axis) out << "# " << k << " = " << v << "\n";
  out << "# name = " << spec.name << "\n";
  out << "# axis = " << spec.axis << "\n";
  out << "# seeds = " << seeds_csv(spec.seeds) << "\n";
  out << "# aggregate = median\n";
  out << spec.axis
      << ",cycle,gdm,sdm,messages_sent,useless_messages,unsuccessful_swaps,live_nodes\n";
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    for (const auto& r : res.cells[i].median) {
      out << spec.values[i] << ',' << r.cycle << ',' << format_double(r.gdm) << ','
          << format_double(r.sdm) << ',' << format_double(r.messages_sent) << ','
          << format_double(r.useless_messages) << ',' << format_double(r.unsuccessful_swaps)
          << ',' << format_double(r.live_nodes) << "\n";
    }
  }
  out.close();
  res.files.push_back(path.string());
  return res;
}

namespace {

std::vector<std::uint64_t> default_seeds() {
  std::vector<std::uint64_t> s(10);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = i + 1;
  return s;
}

SimulationConfig coarse_base() {
  SimulationConfig cfg;  // n=1000, c=20, 10 slices, modjk, cyclon, 500 cycles
  return cfg;
}

SimulationConfig fine_base() {
  SimulationConfig cfg;
  cfg.slices = 100;
  cfg.c = 10;
  return cfg;
}

}  // namespace

std::vector<std::string> recipe_names() {
  return {"fig3", "fig4a", "fig4b", "fig5a", "fig5b", "fig5c", "fig5d"};
}

SweepSpec recipe(const std::string& name) {
  SweepSpec s;
  s.name = name;
  s.seeds = default_seeds();
  if (name == "fig3") {
    // Ordering protocols head to head on a coarse slicing.
    s.config = coarse_base();
    s.axis = "protocol";
    s.values = {"jk", "modjk"};
  } else if (name == "fig4a") {
    // Message-concurrency impact on the improved ordering protocol.
    s.config = coarse_base();
    s.axis = "concurrency";
    s.values = {"none", "half", "full"};
  } else if (name == "fig4b") {
    // Useless-message comparison under full concurrency.
    s.config = coarse_base();
    s.config.concurrency = Concurrency::full;
    s.axis = "protocol";
    s.values = {"jk", "modjk"};
  } else if (name == "fig5a") {
    // Ordering floor versus rank estimation on a fine slicing.
    s.config = fine_base();
    s.axis = "protocol";
    s.values = {"jk", "modjk", "ranking"};
  } else if (name == "fig5b") {
    // Gossip views versus an ideal uniform sampler for ranking.
    s.config = fine_base();
    s.config.protocol = Protocol::ranking;
    s.axis = "sampler";
    s.values = {"cyclon", "uniform"};
  } else if (name == "fig5c") {
    // Correlated burst churn, then a recovery phase.
    s.config = fine_base();
    s.config.sampler = Sampler::uniform;
    s.config.churn.mode = ChurnMode::burst;
    s.config.churn.rate = 0.001;
    s.config.churn.burst_cycles = 200;
    s.config.cycles = 400;
    s.axis = "protocol";
    s.values = {"modjk", "ranking"};
  } else if (name == "fig5d") {
    // Sustained correlated churn; the sliding window earns its keep.
    s.config = fine_base();
    s.config.sampler = Sampler::uniform;
    s.config.churn.mode = ChurnMode::regular;
    s.config.churn.rate = 0.002;
    s.config.churn.regular_period = 10;
    s.config.cycles = 1200;
    s.axis = "protocol";
    s.values = {"modjk", "ranking", "ranking_windowed"};
  } else {
    throw ConfigError("unknown recipe '" + name + "' (have: fig3 fig4a fig4b fig5a fig5b fig5c fig5d)");
  }
  return s;
}

}  // namespace slicer
