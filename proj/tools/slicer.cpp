// Experiment runner for the slicing simulator: single/multi-seed runs,
// parameter sweeps, bundled figure recipes, and Monte-Carlo checks of the
// analytical bounds. Exit codes: 0 success/pass, 1 verification fail,
// 2 usage or configuration error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "slicer/analysis.hpp"
#include "slicer/config.hpp"
#include "slicer/experiment.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("SLICER_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != std::string(raw).size())
      throw std::invalid_argument("trailing characters");
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw slicer::ConfigError(std::string("SLICER_SEED is not an unsigned integer: '") + raw + "'");
  }
}

void apply_config_file(slicer::SimulationConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw slicer::ConfigError("cannot open config file '" + path + "'");
  for (const auto& [key, value] : slicer::parse_key_values(in)) {
    if (!slicer::apply_setting(cfg, key, value))
      throw slicer::ConfigError("unknown setting '" + key + "' in " + path);
  }
}

void apply_overrides(slicer::SimulationConfig& cfg, const std::vector<std::string>& sets) {
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw slicer::ConfigError("--set expects key=value, got '" + kv + "'");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    if (!slicer::apply_setting(cfg, key, value))
      throw slicer::ConfigError("unknown setting '" + key + "'");
  }
}

std::vector<std::uint64_t> resolve_seeds(const std::vector<std::uint64_t>& cli_seeds,
                                         const std::vector<std::uint64_t>& preset,
                                         std::uint64_t config_seed) {
  if (!cli_seeds.empty()) return cli_seeds;
  if (!preset.empty()) return preset;
  if (const auto env = env_seed()) return {*env};
  return {config_seed};
}

std::vector<std::string> split_csv(const std::string& joined) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= joined.size()) {
    auto comma = joined.find(',', start);
    if (comma == std::string::npos) comma = joined.size();
    out.push_back(joined.substr(start, comma - start));
    start = comma + 1;
    if (comma == joined.size()) break;
  }
  return out;
}

void report_files(const std::vector<std::string>& files) {
  for (const auto& f : files) std::cout << "wrote " << f << "\n";
}

struct RunArgs {
  std::string config_path;
  std::string recipe_name;
  std::string name;
  std::string out_dir = ".";
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> sets;
};

int cmd_run(const RunArgs& a) {
  if (!a.recipe_name.empty()) {
    slicer::SweepSpec sweep = slicer::recipe(a.recipe_name);
    if (!a.config_path.empty()) apply_config_file(sweep.config, a.config_path);
    apply_overrides(sweep.config, a.sets);
    sweep.seeds = resolve_seeds(a.seeds, sweep.seeds, sweep.config.seed);
    if (!a.name.empty()) sweep.name = a.name;
    sweep.out_dir = a.out_dir;
    report_files(slicer::run_sweep(sweep).files);
    return 0;
  }
  slicer::ExperimentSpec spec;
  if (!a.config_path.empty()) apply_config_file(spec.config, a.config_path);
  apply_overrides(spec.config, a.sets);
  spec.seeds = resolve_seeds(a.seeds, {}, spec.config.seed);
  spec.name = a.name.empty() ? "run" : a.name;
  spec.out_dir = a.out_dir;
  report_files(slicer::run_experiment(spec).files);
  return 0;
}

struct SweepArgs {
  RunArgs base;
  std::string axis;
  std::string values;
};

int cmd_sweep(const SweepArgs& a) {
  slicer::SweepSpec spec;
  if (!a.base.config_path.empty()) apply_config_file(spec.config, a.base.config_path);
  apply_overrides(spec.config, a.base.sets);
  spec.seeds = resolve_seeds(a.base.seeds, {}, spec.config.seed);
  spec.name = a.base.name.empty() ? "sweep" : a.base.name;
  spec.out_dir = a.base.out_dir;
  spec.axis = a.axis;
  spec.values = split_csv(a.values);
  report_files(slicer::run_sweep(spec).files);
  return 0;
}

struct Lemma1Args {
  std::uint32_t n = 10000;
  double p = 0.01;
  double beta = 0.5;
  double eps = 0.01;
  std::uint64_t trials = 10000;
  std::vector<std::uint64_t> seeds;
};

int cmd_verify_lemma1(const Lemma1Args& a) {
  const std::uint64_t seed = resolve_seeds(a.seeds, {}, 1).front();
  const double floor_p = slicer::min_slice_length(a.beta, a.eps, a.n);
  std::cout << "slice-size concentration check\n"
            << "  n=" << a.n << " p=" << slicer::format_double(a.p)
            << " beta=" << slicer::format_double(a.beta)
            << " eps=" << slicer::format_double(a.eps) << " trials=" << a.trials
            << " seed=" << seed << "\n"
            << "  validity floor:     p >= " << slicer::format_double(floor_p) << "\n";
  const auto res = slicer::verify_slice_size({a.n, a.p, a.beta, a.eps}, a.trials, seed);
  std::cout << "  required fraction:  " << slicer::format_double(res.required) << "\n"
            << "  empirical fraction: " << slicer::format_double(res.fraction) << " ("
            << res.successes << "/" << res.trials << ")\n"
            << (res.pass ? "PASS" : "FAIL") << "\n";
  return res.pass ? 0 : 1;
}

struct Theorem1Args {
  double p = 0.52;
  std::uint32_t slices = 2;
  std::string boundaries;
  double alpha = 0.05;
  std::uint64_t trials = 10000;
  std::vector<std::uint64_t> seeds;
};

int cmd_verify_theorem1(const Theorem1Args& a) {
  const std::uint64_t seed = resolve_seeds(a.seeds, {}, 1).front();
  slicer::AssignmentQuery q;
  if (!a.boundaries.empty()) {
    std::vector<double> bounds;
    for (const auto& item : split_csv(a.boundaries)) bounds.push_back(std::stod(item));
    q.spec = slicer::SliceSpec::from_boundaries(bounds);
  } else {
    q.spec = slicer::SliceSpec::equal_width(a.slices);
  }
  q.p = a.p;
  q.alpha = a.alpha;
  const double d = q.spec.boundary_distance(q.p);
  std::cout << "slice-assignment confidence check\n"
            << "  p=" << slicer::format_double(a.p) << " slices=" << q.spec.slice_count()
            << " alpha=" << slicer::format_double(a.alpha) << " trials=" << a.trials
            << " seed=" << seed << "\n"
            << "  boundary distance:  " << slicer::format_double(d) << "\n"
            << "  required messages:  " << slicer::format_double(slicer::required_messages(q.p, d, q.alpha))
            << " -> N = " << slicer::assignment_sample_count(q.spec, q.p, q.alpha) << "\n";
  const auto res = slicer::verify_assignment(q, a.trials, seed);
  std::cout << "  required fraction:  " << slicer::format_double(res.required) << "\n"
            << "  empirical fraction: " << slicer::format_double(res.fraction) << " ("
            << res.successes << "/" << res.trials << ")\n"
            << (res.pass ? "PASS" : "FAIL") << "\n";
  return res.pass ? 0 : 1;
}

void add_common(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--config", a.config_path, "key=value config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", a.seeds, "seed (repeatable; overrides SLICER_SEED)");
  cmd->add_option("--out", a.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--name", a.name, "output file stem");
  cmd->add_option("--set", a.sets, "config override key=value (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic distributed-slicing simulator and analysis toolkit"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand("run", "run one experiment (or a bundled recipe)");
  add_common(run, run_args);
  run->add_option("--recipe", run_args.recipe_name, "bundled experiment preset")
      ->check(CLI::IsMember(slicer::recipe_names()));

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand("sweep", "sweep one config key across values");
  add_common(sweep, sweep_args.base);
  sweep->add_option("--axis", sweep_args.axis, "config key to sweep")->required();
  sweep->add_option("--values", sweep_args.values, "comma-separated axis values")->required();

  CLI::App* verify = app.add_subcommand("verify", "Monte-Carlo checks of the analytical bounds");
  verify->require_subcommand(1);

  Lemma1Args l1;
  CLI::App* lemma1 = verify->add_subcommand("lemma1", "slice-size concentration bound");
  lemma1->add_option("--n", l1.n, "population size")->capture_default_str();
  lemma1->add_option("--p", l1.p, "slice length in (0,1]")->capture_default_str();
  lemma1->add_option("--beta", l1.beta, "relative size tolerance")->capture_default_str();
  lemma1->add_option("--eps", l1.eps, "allowed failure probability")->capture_default_str();
  lemma1->add_option("--trials", l1.trials, "Monte-Carlo trials")->capture_default_str();
  lemma1->add_option("--seed", l1.seeds, "seed (overrides SLICER_SEED)");

  Theorem1Args t1;
  CLI::App* theorem1 = verify->add_subcommand("theorem1", "slice-assignment confidence bound");
  theorem1->add_option("--p", t1.p, "true normalized rank in (0,1]")->capture_default_str();
  theorem1->add_option("--slices", t1.slices, "equal-width slice count")->capture_default_str();
  theorem1->add_option("--boundaries", t1.boundaries, "explicit boundaries 0,...,1 (overrides --slices)");
  theorem1->add_option("--alpha", t1.alpha, "confidence complement")->capture_default_str();
  theorem1->add_option("--trials", t1.trials, "Monte-Carlo trials")->capture_default_str();
  theorem1->add_option("--seed", t1.seeds, "seed (overrides SLICER_SEED)");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_args);
    if (sweep->parsed()) return cmd_sweep(sweep_args);
    if (lemma1->parsed()) return cmd_verify_lemma1(l1);
    if (theorem1->parsed()) return cmd_verify_theorem1(t1);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
