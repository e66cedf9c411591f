#include "pairwalk/config.hpp"

#include <charconv>
#include <sstream>

#include "pairwalk/io.hpp"

namespace pairwalk {

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::verify: return "verify";
    case RunMode::amplitude: return "amplitude";
    case RunMode::sample: return "sample";
    case RunMode::stats: return "stats";
  }
  return "?";
}

RunMode mode_from_string(const std::string& name) {
  if (name == "verify") return RunMode::verify;
  if (name == "amplitude") return RunMode::amplitude;
  if (name == "sample") return RunMode::sample;
  if (name == "stats") return RunMode::stats;
  throw ConfigError("unknown mode: " + name);
}

namespace {

long long parse_int(const std::string& key, const std::string& value) {
  long long out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("bad integer for " + key + ": '" + value + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw ConfigError("bad unsigned integer for " + key + ": '" + value + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double out = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    throw ConfigError("bad number for " + key + ": '" + value + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("bad boolean for " + key + ": '" + value + "'");
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

PairState parse_target(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw ConfigError("target must be 'x1,x2', got '" + text + "'");
  PairState p;
  p.x1 = static_cast<int>(parse_int("target.x1", trim(text.substr(0, comma))));
  p.x2 = static_cast<int>(parse_int("target.x2", trim(text.substr(comma + 1))));
  return p;
}

RunConfig resolve_defaults(RunConfig cfg) {
  const bool short_chain = cfg.mode == RunMode::verify || cfg.mode == RunMode::amplitude;
  if (!cfg.s) cfg.s = short_chain ? 7 : 25;
  if (!cfg.a) cfg.a = short_chain ? 4 : 11;
  if (!cfg.b) cfg.b = short_chain ? 5 : 13;
  if (!cfg.t_max) cfg.t_max = 30.0;
  if (!cfg.dt) cfg.dt = short_chain ? 0.05 : 0.005;
  if (!cfg.n_traj) cfg.n_traj = 10000;
  if (!cfg.seed) cfg.seed = 12345;
  if (!cfg.horizon) cfg.horizon = static_cast<double>(*cfg.s);
  if (!cfg.workers) cfg.workers = 0;
  if (!cfg.target)
    cfg.target = cfg.mode == RunMode::amplitude ? PairState{*cfg.s - 1, *cfg.s}
                                                : PairState{*cfg.a + 1, *cfg.b};
  if (cfg.format.empty()) cfg.format = "csv";
  if (cfg.format != "csv" && cfg.format != "json")
    throw ConfigError("format must be csv or json, got '" + cfg.format + "'");
  return cfg;
}

ChainConfig chain_of(const RunConfig& cfg) {
  if (!cfg.s || !cfg.a || !cfg.b) throw ConfigError("chain parameters not resolved");
  ChainConfig chain{*cfg.s, *cfg.a, *cfg.b, cfg.free_case};
  try {
    chain.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return chain;
}

SamplerSettings sampler_of(const RunConfig& cfg) {
  if (!cfg.dt || !cfg.horizon || !cfg.n_traj || !cfg.seed || !cfg.workers)
    throw ConfigError("sampler parameters not resolved");
  SamplerSettings settings;
  settings.dt = *cfg.dt;
  settings.horizon = *cfg.horizon;
  settings.n_traj = *cfg.n_traj;
  settings.seed = *cfg.seed;
  settings.n_workers = *cfg.workers;
  try {
    settings.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return settings;
}

PairState target_of(const RunConfig& cfg) {
  if (!cfg.target) throw ConfigError("target not resolved");
  const SiteIndexing idx(chain_of(cfg));
  if (!idx.contains(*cfg.target))
    throw ConfigError("target (" + std::to_string(cfg.target->x1) + "," +
                      std::to_string(cfg.target->x2) + ") is not a valid pair state for s=" +
                      std::to_string(*cfg.s));
  return *cfg.target;
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream os;
  os << "mode=" << to_string(cfg.mode) << "\n";
  if (cfg.s) os << "s=" << *cfg.s << "\n";
  if (cfg.a) os << "a=" << *cfg.a << "\n";
  if (cfg.b) os << "b=" << *cfg.b << "\n";
  os << "free=" << (cfg.free_case ? "true" : "false") << "\n";
  if (cfg.t_max) os << "t-max=" << format_double(*cfg.t_max) << "\n";
  if (cfg.dt) os << "dt=" << format_double(*cfg.dt) << "\n";
  if (cfg.n_traj) os << "n-traj=" << *cfg.n_traj << "\n";
  if (cfg.seed) os << "seed=" << *cfg.seed << "\n";
  if (cfg.target) os << "target=" << cfg.target->x1 << "," << cfg.target->x2 << "\n";
  if (cfg.horizon) os << "horizon=" << format_double(*cfg.horizon) << "\n";
  if (cfg.workers) os << "workers=" << *cfg.workers << "\n";
  os << "hits-only=" << (cfg.hits_only ? "true" : "false") << "\n";
  if (!cfg.traj_file.empty()) os << "traj=" << cfg.traj_file << "\n";
  if (!cfg.traj_file_free.empty()) os << "traj-free=" << cfg.traj_file_free << "\n";
  if (!cfg.out.empty()) os << "out=" << cfg.out << "\n";
  if (!cfg.format.empty()) os << "format=" << cfg.format << "\n";
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "mode") cfg.mode = mode_from_string(value);
    else if (key == "s") cfg.s = static_cast<int>(parse_int(key, value));
    else if (key == "a") cfg.a = static_cast<int>(parse_int(key, value));
    else if (key == "b") cfg.b = static_cast<int>(parse_int(key, value));
    else if (key == "free") cfg.free_case = parse_bool(key, value);
    else if (key == "t-max") cfg.t_max = parse_real(key, value);
    else if (key == "dt") cfg.dt = parse_real(key, value);
    else if (key == "n-traj") cfg.n_traj = static_cast<int>(parse_int(key, value));
    else if (key == "seed") cfg.seed = parse_u64(key, value);
    else if (key == "target") cfg.target = parse_target(value);
    else if (key == "horizon") cfg.horizon = parse_real(key, value);
    else if (key == "workers") cfg.workers = static_cast<int>(parse_int(key, value));
    else if (key == "hits-only") cfg.hits_only = parse_bool(key, value);
    else if (key == "traj") cfg.traj_file = value;
    else if (key == "traj-free") cfg.traj_file_free = value;
    else if (key == "out") cfg.out = value;
    else if (key == "format") cfg.format = value;
    else throw ConfigError("unknown config key: '" + key + "'");
  }
  return cfg;
}

RunConfig merge_configs(const RunConfig& base, const RunConfig& overrides) {
  RunConfig cfg = base;
  cfg.mode = overrides.mode;
  if (overrides.s) cfg.s = overrides.s;
  if (overrides.a) cfg.a = overrides.a;
  if (overrides.b) cfg.b = overrides.b;
  if (overrides.free_case) cfg.free_case = true;
  if (overrides.t_max) cfg.t_max = overrides.t_max;
  if (overrides.dt) cfg.dt = overrides.dt;
  if (overrides.n_traj) cfg.n_traj = overrides.n_traj;
  if (overrides.seed) cfg.seed = overrides.seed;
  if (overrides.target) cfg.target = overrides.target;
  if (overrides.horizon) cfg.horizon = overrides.horizon;
  if (overrides.workers) cfg.workers = overrides.workers;
  if (overrides.hits_only) cfg.hits_only = true;
  if (!overrides.traj_file.empty()) cfg.traj_file = overrides.traj_file;
  if (!overrides.traj_file_free.empty()) cfg.traj_file_free = overrides.traj_file_free;
  if (!overrides.out.empty()) cfg.out = overrides.out;
  if (!overrides.format.empty()) cfg.format = overrides.format;
  return cfg;
}

}  // namespace pairwalk
