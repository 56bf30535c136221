#pragma once

#include <string>

#include "sbldoa/config.hpp"

namespace sbldoa {

// Exit codes shared with the CLI front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

// Dispatch a run. mode is "single" (spectrum.csv, estimates.csv, trace.csv)
// or "sweep" (sweep.csv); files land in cfg.out_dir, which is created when
// missing, and every written path is echoed to stdout. Returns an exit code;
// errors are reported on stderr instead of thrown.
int run_command(const std::string& mode, const ExperimentConfig& cfg);

}  // namespace sbldoa
