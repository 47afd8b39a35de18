// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include <CLI11.hpp>

#include "leaky/cli/run.hpp"

int main(int argc, char **argv)
{
  CLI::App app{"Leaky guided waves in layered plates"};
  app.require_subcommand(1);

  leaky::cli::RunOptions opts;
  int threads = 0;
  std::uint64_t seed = 0;
  auto *run = app.add_subcommand("run", "Compute a dispersion sweep from a YAML configuration");
  run->add_option("config", opts.config, "Configuration file")->required();
  run->add_option("--freq", opts.freq, "Solve only these frequencies (config units)")->delimiter(',');
  run->add_option("--out", opts.out, "Output directory");
  auto *threads_opt = run->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--validate-only", opts.validate_only, "Check the configuration and report problem sizes");
  run->add_flag("--oracle", opts.oracle, "Add the exact-determinant residual (single isotropic layer)");
  run->add_option("--modes-at", opts.modes_at, "Write mode shapes at these frequencies (config units)")
    ->delimiter(',');
  auto *seed_opt = run->add_option("--seed", seed, "Seed of the random shift and combination");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : leaky::cli::kExitUsage;
  }
  if (*threads_opt)
  {
    opts.threads = threads;
  }
  if (*seed_opt)
  {
    opts.seed = seed;
  }
  return leaky::cli::Run(opts, std::cout, std::cerr);
}
