#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pairwalk/commands.hpp"
#include "pairwalk/config.hpp"
#include "pairwalk/io.hpp"

namespace {

struct CliState {
  pairwalk::RunConfig flags;  // only what was given on the command line
  std::string target_text;
  std::string config_path;
  std::string save_config_path;
};

void attach_options(CLI::App* cmd, CliState& st) {
  cmd->add_option("--s", st.flags.s, "chain length (number of sites)");
  cmd->add_option("--a", st.flags.a, "first impurity link");
  cmd->add_option("--b", st.flags.b, "second impurity link");
  cmd->add_flag("--free", st.flags.free_case,
                "free variant: identity on every link");
  cmd->add_option("--t-max", st.flags.t_max, "amplitude grid endpoint");
  cmd->add_option("--dt", st.flags.dt, "time-grid step");
  cmd->add_option("--n-traj", st.flags.n_traj, "ensemble size");
  cmd->add_option("--seed", st.flags.seed, "RNG seed");
  cmd->add_option("--target", st.target_text, "target site as x1,x2");
  cmd->add_option("--horizon", st.flags.horizon,
                  "sampling/observation window (defaults to s time units)");
  cmd->add_option("--workers", st.flags.workers,
                  "sampling threads (0: one per hardware core)");
  cmd->add_flag("--hits-only", st.flags.hits_only,
                "emit only trajectories that hit the target");
  cmd->add_option("--traj", st.flags.traj_file,
                  "read the impurity-case ensemble from a trajectory file");
  cmd->add_option("--traj-free", st.flags.traj_file_free,
                  "read the free-case ensemble from a trajectory file");
  cmd->add_option("--out", st.flags.out, "output path or prefix (default: stdout)");
  cmd->add_option("--format", st.flags.format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--config", st.config_path,
                  "flat key=value config file; explicit flags override it");
  cmd->add_option("--save-config", st.save_config_path,
                  "write the fully resolved config to this file, then run");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace pairwalk;

  CLI::App app{"Two-walker quantum walk on a chain with noncommuting link "
               "impurities: exact evolution, jump-process sampling, and "
               "passage-time statistics."};
  app.require_subcommand(1);

  CliState st;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the conservation, gauge, and continuity self-checks");
  CLI::App* amplitude = app.add_subcommand(
      "amplitude", "Emit the amplitude time series at the target site, "
                   "impurity and free columns side by side");
  CLI::App* sample = app.add_subcommand(
      "sample", "Sample jump-process trajectories and write a trajectory file");
  CLI::App* stats = app.add_subcommand(
      "stats", "Conditional first-passage and sojourn statistics at the target");
  for (CLI::App* cmd : {verify, amplitude, sample, stats}) attach_options(cmd, st);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  RunConfig cfg;
  try {
    if (!st.target_text.empty()) st.flags.target = parse_target(st.target_text);
    if (app.got_subcommand(verify)) st.flags.mode = RunMode::verify;
    if (app.got_subcommand(amplitude)) st.flags.mode = RunMode::amplitude;
    if (app.got_subcommand(sample)) st.flags.mode = RunMode::sample;
    if (app.got_subcommand(stats)) st.flags.mode = RunMode::stats;

    cfg = st.flags;
    if (!st.config_path.empty())
      cfg = merge_configs(parse_config(read_text_file(st.config_path)), st.flags);
    if (!st.save_config_path.empty())
      write_text_file(st.save_config_path, emit_config(resolve_defaults(cfg)));
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIoError;
  }

  return run_command(cfg);
}
