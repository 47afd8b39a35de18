// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_CLI_CONFIG_HPP
#define LEAKY_CLI_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "leaky/sweep.hpp"

namespace leaky::cli
{

// Invalid configuration; the message starts with "file:line:column:".
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct Units
{
  std::string length = "mm", frequency = "MHz", speed = "m/s";
  double length_scale = 1e-3;     // m per unit
  double frequency_scale = 1e6;   // Hz per unit
  double speed_scale = 1.0;       // m/s per unit
};

struct LayerConfig
{
  std::string material;  // library name or "inline"
  double rho = 0.0, c_l = 0.0, c_t = 0.0;  // SI
  double thickness = 0.0;  // m
  std::optional<int> order;
};

struct HalfSpaceConfig
{
  std::string material = "vacuum";
  HalfSpaceMedium medium = Vacuum{};
};

struct SweepConfig
{
  std::string source;  // file name used in messages
  Units units;
  DofMode mode = DofMode::InPlane;
  std::vector<LayerConfig> layers;
  HalfSpaceConfig bottom, top;

  double f_min = 0.0, f_max = 0.0;  // Hz
  std::optional<int> count;
  std::optional<double> step;  // Hz

  SweepOptions options;
  std::string output_dir = "out";
  bool plots = true;
  double field_extent = 0.0;  // m into each half-space for mode shapes, 0 = one plate thickness
  int field_points = 201;

  std::vector<double> Frequencies() const;
  // Layers with orders resolved for frequencies up to f_highest (Hz).
  WaveguideModel Model(double f_highest) const;
};

SweepConfig ParseConfig(const std::string &text, const std::string &source);
SweepConfig LoadConfig(const std::string &path);

}  // namespace leaky::cli

#endif  // LEAKY_CLI_CONFIG_HPP
