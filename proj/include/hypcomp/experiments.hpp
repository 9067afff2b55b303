#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hypcomp/config.hpp"

namespace hypcomp {

inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct RunContext {
  std::filesystem::path out_dir;
  bool dry_run = false;
  std::ostream* log = nullptr;  // progress and summary lines; may be null
};

/// Budgets and work a subcommand would do with this config.
std::string plan(const std::string& subcommand, const ExperimentConfig& config);

/// Runs one subcommand, writing <sub>.csv (when it has data rows) and
/// <sub>_summary.csv into the output directory. Returns kExitPass or
/// kExitViolation; configuration problems throw Error(Config).
int run_subcommand(const std::string& subcommand, const ExperimentConfig& config,
                   const RunContext& context);

}  // namespace hypcomp
