// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_MATERIALS_HPP
#define LEAKY_MATERIALS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace leaky
{

//
// Linear isotropic elastic solid. All quantities are SI: kg/m^3, Pa, m/s.
//
// The record keeps both the Lamé form (lambda, mu) and the wave-speed form
// (c_l, c_t); the factories derive one from the other so both are always
// consistent.
//
class IsotropicSolid
{
public:
  static IsotropicSolid FromSpeeds(double rho, double c_l, double c_t);
  static IsotropicSolid FromLame(double rho, double lambda, double mu);

  double Density() const { return rho; }
  double Lambda() const { return lambda; }
  double Mu() const { return mu; }
  double LongitudinalSpeed() const { return c_l; }
  double TransverseSpeed() const { return c_t; }

private:
  IsotropicSolid(double rho, double lambda, double mu, double c_l, double c_t)
    : rho(rho), lambda(lambda), mu(mu), c_l(c_l), c_t(c_t)
  {
  }

  double rho, lambda, mu, c_l, c_t;
};

// Inviscid acoustic fluid.
struct FluidMaterial
{
  double rho;  // kg/m^3
  double c;    // m/s

  static FluidMaterial Make(double rho, double c);
};

//
// 3x3 blocks of the stiffness tensor used by the thickness-direction model,
// ordered (x, y, z) with y the thickness direction.
//
//   traction on a y-plane:  tau = Cxy * du/dx + Cyy * du/dy
//   traction on an x-plane: t_x = Cxx * du/dx + Cyx * du/dy
//
// For an isotropic medium Cxy = [[0, mu, 0], [lambda, 0, 0], [0, 0, 0]].
//
struct AnisotropicBlocks
{
  Eigen::Matrix3d Cxx, Cyy, Cxy, Cyx;

  // Throws DomainError unless Cxx, Cyy are SPD and Cyx == Cxy^T exactly.
  void Validate() const;
};

// Anisotropic plate-layer material (half-spaces are always isotropic).
struct AnisotropicSolid
{
  AnisotropicBlocks blocks;
  double rho;
};

AnisotropicBlocks StiffnessBlocks(const IsotropicSolid &mat);

struct BulkWavenumbers
{
  double kappa;                 // longitudinal (solid) or acoustic (fluid)
  std::optional<double> gamma;  // transverse, solids only
};

BulkWavenumbers BulkWavenumbersOf(const IsotropicSolid &mat, double omega);
BulkWavenumbers BulkWavenumbersOf(const FluidMaterial &mat, double omega);

using NamedMaterial = std::variant<IsotropicSolid, FluidMaterial>;

// Built-in material table: brass, teflon, titanium, water, oil.
std::optional<NamedMaterial> LookupMaterial(std::string_view name);
std::vector<std::string> MaterialNames();

}  // namespace leaky

#endif  // LEAKY_MATERIALS_HPP
