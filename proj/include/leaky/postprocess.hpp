// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_POSTPROCESS_HPP
#define LEAKY_POSTPROCESS_HPP

#include <cmath>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "leaky/coupling.hpp"
#include "leaky/mep.hpp"

namespace leaky
{

// dB per neper, 20 / ln 10.
inline const double kDbPerNeper = 20.0 / std::log(10.0);

enum class ModeClass
{
  Outgoing,
  Incoming,
  Trapped,
  Evanescent
};

std::string_view ToString(ModeClass c);

struct ClassifyOptions
{
  double tol_trapped = 1e-4;  // Np/mm
  double tol_evan = 10.0;
};

//
// Radiation rule per half-space wavenumber q with outward sign s: it radiates
// when Re(q) s > 0 and decays when Im(q) s > 0. Without coupled sides a mode
// is Trapped (|Im k| below tolerance) or Evanescent.
//
ModeClass ClassifyMode(complex k, const VerticalWavenumbers &w, const CoupledSystem &sys,
                       const ClassifyOptions &options = {});

struct ModeSolution
{
  double frequency = 0.0;  // Hz
  double omega = 0.0;      // rad/s
  complex k;               // rad/m
  VerticalWavenumbers w;
  ModeClass classification = ModeClass::Evanescent;
  Eigen::VectorXcd v;  // CoupledSystem DOFs
  double residual = 0.0;
  int multiplicity = 1;

  double PhaseVelocity() const { return omega / k.real(); }
  double AttenuationNpPerM() const { return k.imag(); }
  double AttenuationDbPerM() const { return k.imag() * kDbPerNeper; }
  double AttenuationDbPerMm() const { return AttenuationDbPerM() * 1e-3; }
};

ModeSolution MakeModeSolution(const EigenTuple &t, const CoupledSystem &sys,
                              const ClassifyOptions &options = {});

enum class Region
{
  Plate,
  Fluid,
  Solid
};

struct FieldSample
{
  double x = 0.0, y = 0.0;
  Region region = Region::Plate;
  Side side = Side::Bottom;  // half-space samples only
  Eigen::Vector3cd u = Eigen::Vector3cd::Zero();         // displacement (particle displacement in fluids)
  Eigen::Vector3cd traction = Eigen::Vector3cd::Zero();  // on a y-plane; -p e_y in fluids
  complex pressure = 0.0;                                 // fluids only
};

struct FieldGrid
{
  std::vector<FieldSample> samples;
};

struct GridSpec
{
  std::vector<double> x, y;  // m
  double t = 0.0;            // s
};

// Plate field at y in [y_bottom, y_top]; interfaces use the layer above.
FieldSample EvaluatePlate(const ModeSolution &mode, const CoupledSystem &sys, double x, double y,
                          double t = 0.0);

// Field of the half-space on `side`, extended analytically to any y.
FieldSample EvaluateHalfSpace(const ModeSolution &mode, const CoupledSystem &sys, Side side, double x,
                              double y, double t = 0.0);

// Every (x, y) pair of the grid; throws DomainError for y outside all domains.
FieldGrid EvaluateFields(const ModeSolution &mode, const CoupledSystem &sys, const GridSpec &grid);

}  // namespace leaky

#endif  // LEAKY_POSTPROCESS_HPP
