// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_COUPLING_HPP
#define LEAKY_COUPLING_HPP

#include <array>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "leaky/fem.hpp"
#include "leaky/materials.hpp"
#include "leaky/types.hpp"

namespace leaky
{

struct Vacuum
{
};

using HalfSpaceMedium = std::variant<Vacuum, FluidMaterial, IsotropicSolid>;

struct HalfSpaceSpec
{
  Side side = Side::Bottom;
  HalfSpaceMedium medium;
};

//
// Interface matrices of an isotropic solid half-space. The half-space field is
// u = (ik A0 + i kappa_y A1 + i gamma_y A2) c_s at the interface, and the
// traction on a y-plane is
//   tau = (k^2 R0 + k kappa_y R1 + k gamma_y R2 + kappa^2 R3 + gamma^2 R4) c_s
// for amplitudes c_s = (a, b, c) of the longitudinal, shear-vertical and
// shear-horizontal potentials.
//
struct SolidCouplingMatrices
{
  Eigen::Matrix3d A0, A1, A2, D1, D2;
  Eigen::Matrix3d R0, R1, R2, R3, R4;
};

SolidCouplingMatrices MakeSolidCoupling(const IsotropicSolid &mat);

// Which vertical wavenumber multiplies an R-term of the nonlinear problem.
enum class CouplingTerm
{
  IKappa,  // i kappa_y (fluid pressure DOF)
  KKappa,  // k kappa_y (solid, longitudinal)
  KGamma   // k gamma_y (solid, transverse)
};

struct RTerm
{
  CouplingTerm term;
  Side side = Side::Bottom;
  Eigen::MatrixXd matrix;
};

struct CouplingSide
{
  Side side = Side::Bottom;
  std::variant<FluidMaterial, IsotropicSolid> medium;
  double kappa = 0.0;  // fluid or longitudinal bulk wavenumber (rad/m)
  double gamma = 0.0;  // transverse bulk wavenumber, solids only
  int first_dof = 0;   // first half-space DOF (pressure, or amplitudes a, b[, c])
  int dof_count = 0;
  std::vector<int> surface_dofs;  // plate DOFs of the surface node
  int normal_dof = 0;             // u_y DOF of the surface node

  bool IsFluid() const { return std::holds_alternative<FluidMaterial>(medium); }
  bool IsSolid() const { return !IsFluid(); }

  //
  // The pressure DOF carries p(y) = p_s exp(i kappa_y (y - y_s)) with the
  // physical vertical wavenumber kappa_y. Its R-term is written in terms of
  // kappa_r = -sign * kappa_y (sign = +1 top, -1 bottom), so identical fluids
  // on both faces share kappa_r for symmetric radiation. Solids use kappa_y
  // directly.
  //
  double ParameterSign() const { return IsFluid() ? -OutwardSign(side) : 1.0; }
};

// Per-side vertical wavenumbers in the convention exp(i kappa_y y).
struct VerticalWavenumbers
{
  std::array<complex, 2> kappa_y{};
  std::array<complex, 2> gamma_y{};

  static constexpr int Index(Side side) { return side == Side::Top ? 1 : 0; }
  complex &Kappa(Side side) { return kappa_y[Index(side)]; }
  complex &Gamma(Side side) { return gamma_y[Index(side)]; }
  complex Kappa(Side side) const { return kappa_y[Index(side)]; }
  complex Gamma(Side side) const { return gamma_y[Index(side)]; }
};

//
// Nonlinear eigenvalue problem
//   (-k^2 Ebar0 + i k Ebar1 - Ebar2 + w^2 Mbar + R(k)) v = 0
// for a layered plate with up to two half-spaces. v holds the plate DOFs,
// then the bottom half-space DOFs, then the top half-space DOFs.
//
struct CoupledSystem
{
  double omega = 0.0;
  LayerStack stack;
  Eigen::MatrixXd Ebar0, Ebar1, Ebar2, Mbar;
  std::vector<RTerm> r_terms;
  std::vector<CouplingSide> sides;  // bottom before top
  int plate_dofs = 0;
  double length_scale = 1.0;

  static CoupledSystem FromPlate(const LayerStack &stack, const FemMatrices &fem, double omega);

  Eigen::Index Size() const { return Mbar.rows(); }
  const CouplingSide *Find(Side side) const;

  // Coefficient of each R-term for a given k and vertical wavenumbers.
  complex RCoefficient(const RTerm &term, complex k, const VerticalWavenumbers &w) const;

  Eigen::MatrixXcd Evaluate(complex k, const VerticalWavenumbers &w) const;
};

// Append a fluid half-space: one pressure DOF.
CoupledSystem AttachFluid(CoupledSystem sys, Side side, const FluidMaterial &fluid);

// Append a solid half-space: amplitudes (a, b, c), or (a, b) in-plane.
CoupledSystem AttachSolid(CoupledSystem sys, Side side, const IsotropicSolid &solid);

// Assemble, clamp nothing, and attach every non-vacuum half-space.
CoupledSystem BuildCoupledSystem(const LayerStack &stack, double omega,
                                 std::span<const HalfSpaceSpec> half_spaces);

//
// Diagonal row/column scaling that balances the coupled matrices once every
// parameter is measured in units of the length scale.
//
struct Equilibration
{
  Eigen::VectorXd row, col;
};

Equilibration Equilibrate(const CoupledSystem &sys);

// Ruiz scaling (powers of two) of the entrywise sum of |A_t|.
Equilibration EquilibrateMatrices(std::span<const Eigen::MatrixXd> terms);

//
// Normwise backward error of (k, w, v) on the equilibrated problem:
// ||Dr T(k) v|| / (max_t |c_t| ||Dr T_t Dc|| * ||Dc^-1 v||).
//
double NlevpResidual(const CoupledSystem &sys, complex k, const VerticalWavenumbers &w,
                     const Eigen::VectorXcd &v);
double NlevpResidual(const CoupledSystem &sys, complex k, const VerticalWavenumbers &w,
                     const Eigen::VectorXcd &v, const Equilibration &e);

}  // namespace leaky

#endif  // LEAKY_COUPLING_HPP
