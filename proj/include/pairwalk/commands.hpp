#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pairwalk/config.hpp"
#include "pairwalk/process.hpp"

namespace pairwalk {

// Subcommands. All expect a resolved config (resolve_defaults applied) and
// return one of the ExitCode values.
int cmd_verify(const RunConfig& cfg);
int cmd_amplitude(const RunConfig& cfg);
int cmd_sample(const RunConfig& cfg);
int cmd_stats(const RunConfig& cfg);

// Resolves defaults, dispatches on mode and maps exceptions to exit codes.
int run_command(const RunConfig& cfg);

// Trajectory file round trip. CSV: one line per trajectory, the index
// followed by (time,x1,x2) triples starting with the initial site at t=0.
// JSON: one object per line with the same triples under "path".
void write_trajectories(std::ostream& os, const std::vector<Trajectory>& trajectories,
                        const std::vector<int>& indices, const std::string& format);
std::vector<Trajectory> read_trajectories(const std::string& path, double horizon);

}  // namespace pairwalk
