// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/materials.hpp"

#include <cmath>

#include "leaky/errors.hpp"

namespace leaky
{

namespace
{

void RequirePositive(double value, const char *what)
{
  if (!(value > 0.0) || !std::isfinite(value))
  {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

}  // namespace

IsotropicSolid IsotropicSolid::FromSpeeds(double rho, double c_l, double c_t)
{
  RequirePositive(rho, "density");
  RequirePositive(c_l, "longitudinal speed");
  RequirePositive(c_t, "transverse speed");
  if (!(c_l > c_t))
  {
    throw DomainError("longitudinal speed must exceed transverse speed");
  }
  const double mu = rho * c_t * c_t;
  const double lambda = rho * (c_l * c_l - 2.0 * c_t * c_t);
  return IsotropicSolid(rho, lambda, mu, c_l, c_t);
}

IsotropicSolid IsotropicSolid::FromLame(double rho, double lambda, double mu)
{
  RequirePositive(rho, "density");
  RequirePositive(mu, "shear modulus");
  if (!(lambda + 2.0 * mu > 0.0) || !std::isfinite(lambda))
  {
    throw DomainError("lambda + 2 mu must be positive");
  }
  return IsotropicSolid(rho, lambda, mu, std::sqrt((lambda + 2.0 * mu) / rho),
                        std::sqrt(mu / rho));
}

FluidMaterial FluidMaterial::Make(double rho, double c)
{
  RequirePositive(rho, "fluid density");
  RequirePositive(c, "sound speed");
  return {rho, c};
}

void AnisotropicBlocks::Validate() const
{
  if (Cyx != Cxy.transpose())
  {
    throw DomainError("Cyx must equal transpose(Cxy)");
  }
  for (const auto *block : {&Cxx, &Cyy})
  {
    if (*block != block->transpose())
    {
      throw DomainError("Cxx and Cyy must be symmetric");
    }
    Eigen::LLT<Eigen::Matrix3d> llt(*block);
    if (llt.info() != Eigen::Success)
    {
      throw DomainError("Cxx and Cyy must be positive definite");
    }
  }
}

AnisotropicBlocks StiffnessBlocks(const IsotropicSolid &mat)
{
  const double l = mat.Lambda(), m = mat.Mu();
  AnisotropicBlocks c;
  c.Cxx = Eigen::Vector3d(l + 2.0 * m, m, m).asDiagonal();
  c.Cyy = Eigen::Vector3d(m, l + 2.0 * m, m).asDiagonal();
  c.Cxy.setZero();
  c.Cxy(0, 1) = m;
  c.Cxy(1, 0) = l;
  c.Cyx = c.Cxy.transpose();
  return c;
}

BulkWavenumbers BulkWavenumbersOf(const IsotropicSolid &mat, double omega)
{
  RequirePositive(omega, "angular frequency");
  return {omega / mat.LongitudinalSpeed(), omega / mat.TransverseSpeed()};
}

BulkWavenumbers BulkWavenumbersOf(const FluidMaterial &mat, double omega)
{
  RequirePositive(omega, "angular frequency");
  return {omega / mat.c, std::nullopt};
}

std::optional<NamedMaterial> LookupMaterial(std::string_view name)
{
  if (name == "brass")
  {
    return IsotropicSolid::FromSpeeds(8400.0, 4400.0, 2200.0);
  }
  if (name == "teflon")
  {
    return IsotropicSolid::FromSpeeds(2200.0, 1350.0, 550.0);
  }
  if (name == "titanium")
  {
    return IsotropicSolid::FromSpeeds(4460.0, 6060.0, 3230.0);
  }
  if (name == "water")
  {
    return FluidMaterial::Make(1000.0, 1480.0);
  }
  if (name == "oil")
  {
    return FluidMaterial::Make(870.0, 1740.0);
  }
  return std::nullopt;
}

std::vector<std::string> MaterialNames()
{
  return {"brass", "teflon", "titanium", "water", "oil"};
}

}  // namespace leaky
