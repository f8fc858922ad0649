#pragma once

#include <iosfwd>

#include "degmlmc/config.hpp"

namespace degmlmc {

/// Entry point of the degmlmc command line tool. Subcommands: solve, mc,
/// mlmc, table, validate. Returns the process exit status; errors are
/// reported as one "degmlmc: error: ..." line on `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Grid on the configured initial data domain with spacing cfg.dx.
GridSpec single_level_grid(const ExperimentConfig& cfg);

}  // namespace degmlmc
