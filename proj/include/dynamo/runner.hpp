#pragma once

// Experiment dispatch: maps a subcommand plus a validated configuration to a
// report.  run_cli wraps this in the exit-status contract (0 success,
// 1 operation error, 2 config error).

#include <iosfwd>
#include <string>
#include <vector>

#include "dynamo/config.hpp"
#include "dynamo/report.hpp"

namespace dynamo {

struct RunOptions {
    std::uint64_t budget = 10'000'000;
    bool override_restricted = false;
};

extern const std::vector<std::string> kSubcommands;

Report run(const std::string& subcommand, const ExperimentConfig& cfg,
           const RunOptions& options = {});

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dynamo
