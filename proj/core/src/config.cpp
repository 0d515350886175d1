#include "slicer/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace slicer {

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_unsigned(const std::string& key, std::string_view v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError(key + ": expected an unsigned integer, got '" + std::string(v) + "'");
  return out;
}

double parse_double(const std::string& key, std::string_view v) {
  double out{};
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc{} || ptr != end)
    throw ConfigError(key + ": expected a number, got '" + std::string(v) + "'");
  return out;
}

std::vector<double> parse_double_list(const std::string& key, std::string_view v) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    auto comma = v.find(',', start);
    if (comma == std::string_view::npos) comma = v.size();
    const auto item = trim(v.substr(start, comma - start));
    if (item.empty())
      throw ConfigError(key + ": empty element in list '" + std::string(v) + "'");
    out.push_back(parse_double(key, item));
    start = comma + 1;
    if (comma == v.size()) break;
  }
  return out;
}

[[noreturn]] void bad_enum(const std::string& what, std::string_view v) {
  throw ConfigError(what + ": unknown value '" + std::string(v) + "'");
}

}  // namespace

std::string to_string(Protocol p) {
  switch (p) {
    case Protocol::jk: return "jk";
    case Protocol::modjk: return "modjk";
    case Protocol::ranking: return "ranking";
    case Protocol::ranking_windowed: return "ranking_windowed";
  }
  return "?";
}
std::string to_string(Sampler s) {
  return s == Sampler::cyclon ? "cyclon" : "uniform";
}
std::string to_string(Concurrency c) {
  switch (c) {
    case Concurrency::none: return "none";
    case Concurrency::half: return "half";
    case Concurrency::full: return "full";
  }
  return "?";
}
std::string to_string(ChurnMode m) {
  switch (m) {
    case ChurnMode::none: return "none";
    case ChurnMode::burst: return "burst";
    case ChurnMode::regular: return "regular";
  }
  return "?";
}
std::string to_string(JkTargetRule r) {
  return r == JkTargetRule::uniform_misplaced ? "misplaced" : "any";
}
std::string to_string(ModjkIdle m) {
  return m == ModjkIdle::skip ? "skip" : "random";
}
std::string to_string(BoundaryMode m) {
  return m == BoundaryMode::neighbor_nearest ? "neighbor" : "self";
}
std::string to_string(AttributeDistribution::Kind k) {
  return k == AttributeDistribution::Kind::uniform ? "uniform" : "exponential";
}

Protocol parse_protocol(std::string_view s) {
  if (s == "jk") return Protocol::jk;
  if (s == "modjk") return Protocol::modjk;
  if (s == "ranking") return Protocol::ranking;
  if (s == "ranking_windowed") return Protocol::ranking_windowed;
  bad_enum("protocol", s);
}
Sampler parse_sampler(std::string_view s) {
  if (s == "cyclon") return Sampler::cyclon;
  if (s == "uniform") return Sampler::uniform;
  bad_enum("sampler", s);
}
Concurrency parse_concurrency(std::string_view s) {
  if (s == "none") return Concurrency::none;
  if (s == "half") return Concurrency::half;
  if (s == "full") return Concurrency::full;
  bad_enum("concurrency", s);
}
ChurnMode parse_churn_mode(std::string_view s) {
  if (s == "none") return ChurnMode::none;
  if (s == "burst") return ChurnMode::burst;
  if (s == "regular") return ChurnMode::regular;
  bad_enum("churn", s);
}
JkTargetRule parse_jk_target(std::string_view s) {
  if (s == "misplaced") return JkTargetRule::uniform_misplaced;
  if (s == "any") return JkTargetRule::uniform_any;
  bad_enum("jk_target", s);
}
ModjkIdle parse_modjk_idle(std::string_view s) {
  if (s == "skip") return ModjkIdle::skip;
  if (s == "random") return ModjkIdle::random_neighbor;
  bad_enum("modjk_idle", s);
}
BoundaryMode parse_boundary_mode(std::string_view s) {
  if (s == "neighbor") return BoundaryMode::neighbor_nearest;
  if (s == "self") return BoundaryMode::self_nearest;
  bad_enum("boundary_mode", s);
}
AttributeDistribution::Kind parse_attribute_kind(std::string_view s) {
  if (s == "uniform") return AttributeDistribution::Kind::uniform;
  if (s == "exponential") return AttributeDistribution::Kind::exponential;
  bad_enum("attributes", s);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

std::vector<std::pair<std::string, std::string>> parse_key_values(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (const auto hash = sv.find('#'); hash != std::string_view::npos)
      sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const auto key = trim(sv.substr(0, eq));
    const auto value = trim(sv.substr(eq + 1));
    if (key.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::string(key), std::string(value));
  }
  return out;
}

bool apply_setting(SimulationConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "n") cfg.n = parse_unsigned<std::uint32_t>(key, value);
  else if (key == "c") cfg.c = parse_unsigned<std::uint32_t>(key, value);
  else if (key == "slices") {
    cfg.slices = parse_unsigned<std::uint32_t>(key, value);
    cfg.boundaries.clear();
  } else if (key == "boundaries") cfg.boundaries = parse_double_list(key, value);
  else if (key == "protocol") cfg.protocol = parse_protocol(value);
  else if (key == "sampler") cfg.sampler = parse_sampler(value);
  else if (key == "concurrency") cfg.concurrency = parse_concurrency(value);
  else if (key == "churn") cfg.churn.mode = parse_churn_mode(value);
  else if (key == "churn_rate") cfg.churn.rate = parse_double(key, value);
  else if (key == "churn_bias") cfg.churn.bias = parse_double(key, value);
  else if (key == "burst_cycles") cfg.churn.burst_cycles = parse_unsigned<std::uint32_t>(key, value);
  else if (key == "regular_period") cfg.churn.regular_period = parse_unsigned<std::uint32_t>(key, value);
  else if (key == "cycles") cfg.cycles = parse_unsigned<std::uint32_t>(key, value);
  else if (key == "seed") cfg.seed = parse_unsigned<std::uint64_t>(key, value);
  else if (key == "attributes") cfg.attributes.kind = parse_attribute_kind(value);
  else if (key == "attr_lo") cfg.attributes.lo = parse_unsigned<AttributeValue>(key, value);
  else if (key == "attr_hi") cfg.attributes.hi = parse_unsigned<AttributeValue>(key, value);
  else if (key == "attr_mean") cfg.attributes.mean = parse_double(key, value);
  else if (key == "window") cfg.window = parse_unsigned<std::uint32_t>(key, value);
  else if (key == "jk_target") cfg.jk_target = parse_jk_target(value);
  else if (key == "modjk_idle") cfg.modjk_idle = parse_modjk_idle(value);
  else if (key == "boundary_mode") cfg.boundary_mode = parse_boundary_mode(value);
  else return false;
  return true;
}

SimulationConfig config_from_stream(
    std::istream& in, std::vector<std::pair<std::string, std::string>>* extras) {
  SimulationConfig cfg;
  for (const auto& [key, value] : parse_key_values(in)) {
    if (apply_setting(cfg, key, value)) continue;
    if (extras) extras->emplace_back(key, value);
    else throw ConfigError("unknown setting '" + key + "'");
  }
  return cfg;
}

SimulationConfig load_config_file(
    const std::string& path, std::vector<std::pair<std::string, std::string>>* extras) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return config_from_stream(in, extras);
}

std::vector<std::pair<std::string, std::string>> config_items(const SimulationConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  auto put = [&out](std::string key, std::string value) {
    out.emplace_back(std::move(key), std::move(value));
  };
  put("n", std::to_string(cfg.n));
  put("c", std::to_string(cfg.c));
  if (!cfg.boundaries.empty()) {
    std::string list;
    for (std::size_t i = 0; i < cfg.boundaries.size(); ++i) {
      if (i) list += ',';
      list += format_double(cfg.boundaries[i]);
    }
    put("boundaries", list);
  } else {
    put("slices", std::to_string(cfg.slices));
  }
  put("protocol", to_string(cfg.protocol));
  put("sampler", to_string(cfg.sampler));
  put("concurrency", to_string(cfg.concurrency));
  put("churn", to_string(cfg.churn.mode));
  if (cfg.churn.mode != ChurnMode::none) {
    put("churn_rate", format_double(cfg.churn.rate));
    put("churn_bias", format_double(cfg.churn.bias));
    if (cfg.churn.mode == ChurnMode::burst)
      put("burst_cycles", std::to_string(cfg.churn.burst_cycles));
    else
      put("regular_period", std::to_string(cfg.churn.regular_period));
  }
  put("cycles", std::to_string(cfg.cycles));
  put("attributes", to_string(cfg.attributes.kind));
  if (cfg.attributes.kind == AttributeDistribution::Kind::uniform) {
    put("attr_lo", std::to_string(cfg.attributes.lo));
    put("attr_hi", std::to_string(cfg.attributes.hi));
  } else {
    put("attr_mean", format_double(cfg.attributes.mean));
  }
  if (cfg.protocol == Protocol::ranking_windowed) put("window", std::to_string(cfg.window));
  if (cfg.protocol == Protocol::jk) put("jk_target", to_string(cfg.jk_target));
  if (cfg.protocol == Protocol::modjk) put("modjk_idle", to_string(cfg.modjk_idle));
  if (!cfg.ordering_family()) put("boundary_mode", to_string(cfg.boundary_mode));
  return out;
}

}  // namespace slicer
