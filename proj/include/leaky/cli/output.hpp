// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_CLI_OUTPUT_HPP
#define LEAKY_CLI_OUTPUT_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "leaky/sweep.hpp"

namespace leaky::cli
{

// 17 significant digits, so every double round-trips.
std::string FormatDouble(double v);

// Optional per-mode oracle residuals, indexed like results[i].modes[j].
using OracleTable = std::vector<std::vector<std::optional<double>>>;

//
// One row per mode sorted by (f, Re k, Im k). Columns that do not apply to the
// model (a missing half-space, gamma_y of a fluid) are left empty.
//
void WriteDispersionCsv(std::ostream &os, const WaveguideModel &model, const std::vector<FrequencyResult> &results,
                        const OracleTable *oracle = nullptr);

// Field along y at x = 0, t = 0: plate nodes plus `points` samples per half-space out to `extent`.
void WriteModeShapeCsv(std::ostream &os, const ModeSolution &mode, const CoupledSystem &sys, double extent,
                       int points);

enum class PlotKind
{
  PhaseVelocity,
  Attenuation
};

// Scatter plot of the admissible modes (Outgoing or Trapped, Re k > 0).
void WritePlotSvg(std::ostream &os, const std::vector<FrequencyResult> &results, PlotKind kind);

bool IsAdmissible(const ModeSolution &m);

}  // namespace leaky::cli

#endif  // LEAKY_CLI_OUTPUT_HPP
