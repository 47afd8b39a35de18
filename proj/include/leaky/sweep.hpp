// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_SWEEP_HPP
#define LEAKY_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "leaky/coupling.hpp"
#include "leaky/mep.hpp"
#include "leaky/postprocess.hpp"

namespace leaky
{

// Plate layers (orders fixed), DOF mode and half-spaces.
struct WaveguideModel
{
  std::vector<Layer> layers;
  DofMode mode = DofMode::InPlane;
  std::vector<HalfSpaceSpec> half_spaces;

  LayerStack Stack() const { return LayerStack(layers, mode); }
  CoupledSystem Build(double omega) const;
};

struct SweepOptions
{
  SolveOptions solve;
  ClassifyOptions classify;
  int threads = 1;
  // Keep only the +x half of the spectrum (Re k > 0, or Re k = 0 with Im k > 0).
  bool positive_only = true;
};

struct FrequencyResult
{
  double frequency = 0.0;  // Hz
  std::vector<ModeSolution> modes;
  std::optional<std::string> error;
  double seconds = 0.0;
  bool isotropic_fluid_path = false;
  Eigen::Index determinant_size = 0;
};

// One frequency; solver failures are returned in `error`.
FrequencyResult SolveFrequency(const WaveguideModel &model, double frequency, const SweepOptions &options);

// Independent per-frequency solves on a pool of `threads` workers, in input order.
std::vector<FrequencyResult> DispersionSweep(const WaveguideModel &model, const std::vector<double> &frequencies,
                                             const SweepOptions &options = {});

}  // namespace leaky

#endif  // LEAKY_SWEEP_HPP
