#pragma once

#include <string>

#include "sqg/config.hpp"

namespace sqg {

/// Exit codes shared by the library drivers and the CLI.
enum ExitCode : int {
    exit_ok = 0,
    exit_config_error = 2,
    exit_integrator_failure = 3,
    exit_vacuous = 4,  // informational: a requested criterion never engaged
};

/// Expand output.dir against $SQG_OUTPUT_ROOT when it is relative.
std::string resolve_output_dir(const std::string& dir);

/// Single or twin run (dispatch on cfg.twin.enabled): writes config.json,
/// trajectory.csv, energy.csv, norms.json, meta.json, optional checkpoints,
/// requested criteria reports and plots under the run directory.
int run_simulate(const RunConfig& cfg, std::string* run_dir_out = nullptr);

/// Evaluate criteria from a persisted run directory.  `which` is one of
/// "prop", "1".."5", or "all"/"" for every theorem requested by the config.
int run_criteria(const std::string& run_dir, const std::string& which);

/// Calibration driver: measures Cb on the configured grid, calibrates C0 on
/// an amplitude family of the configured recipe, calibrates Cprop on
/// high-frequency data, and writes constants.json with provenance.
int run_calibrate(const RunConfig& cfg, std::string* out_path = nullptr);

/// Emit SVG plots derived purely from the persisted CSV.
int emit_plots(const std::string& run_dir);

/// Property suite used by the `check` subcommand; prints one line per
/// property and returns 0 only if all pass.
int run_check(uint64_t seed);

}  // namespace sqg
