// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_CLI_RUN_HPP
#define LEAKY_CLI_RUN_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace leaky::cli
{

enum ExitCode
{
  kExitOk = 0,
  kExitUsage = 1,
  kExitConfig = 2,
  kExitAllFailed = 3
};

struct RunOptions
{
  std::string config;
  std::vector<double> freq;      // overrides the sweep, in config frequency units
  std::optional<std::string> out;
  std::optional<int> threads;
  bool validate_only = false;
  bool oracle = false;            // add the exact-determinant residual column (single isotropic layer)
  std::vector<double> modes_at;   // write mode shapes at these frequencies (config units)
  std::optional<std::uint64_t> seed;
};

int Run(const RunOptions &options, std::ostream &out, std::ostream &err);

}  // namespace leaky::cli

#endif  // LEAKY_CLI_RUN_HPP
