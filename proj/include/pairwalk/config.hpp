#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "pairwalk/lattice.hpp"
#include "pairwalk/process.hpp"

namespace pairwalk {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { verify, amplitude, sample, stats };

const char* to_string(RunMode mode);
RunMode mode_from_string(const std::string& name);

// Exit codes shared by every subcommand.
enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailure = 1,
  kExitConfigError = 2,
  kExitIoError = 3,
};

// Front-end configuration. Unset optionals are filled by resolve_defaults
// with per-mode defaults: amplitude and verify default to the short chain
// (s,a,b) = (7,4,5) with grid step 0.05; sample and stats default to the
// production chain (25,11,13) with sampler step 0.005. The horizon defaults
// to s time units and the target to (a+1,b), except for amplitude where the
// terminal site (s-1,s) is the natural observation point.
struct RunConfig {
  RunMode mode = RunMode::verify;
  std::optional<int> s;
  std::optional<int> a;
  std::optional<int> b;
  bool free_case = false;
  std::optional<double> t_max;
  std::optional<double> dt;
  std::optional<int> n_traj;
  std::optional<std::uint64_t> seed;
  std::optional<PairState> target;
  std::optional<double> horizon;
  std::optional<int> workers;
  bool hits_only = false;
  std::string traj_file;       // optional trajectory input (stats)
  std::string traj_file_free;  // optional free-case trajectory input (stats)
  std::string out;             // output path or prefix; empty writes to stdout
  std::string format;          // "csv" or "json"

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig resolve_defaults(RunConfig cfg);

// Views of a resolved config; both throw ConfigError if a field is missing
// or inconsistent.
ChainConfig chain_of(const RunConfig& cfg);
SamplerSettings sampler_of(const RunConfig& cfg);
PairState target_of(const RunConfig& cfg);

// Flat key=value serialization mirroring the command-line flags. Emitting a
// resolved config and parsing it back reproduces the config exactly.
std::string emit_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& text);

// Fields set in `overrides` win over `base`.
RunConfig merge_configs(const RunConfig& base, const RunConfig& overrides);

PairState parse_target(const std::string& text);  // "x1,x2"

}  // namespace pairwalk
