// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/oracle.hpp"

#include <vector>

#include "leaky/errors.hpp"

namespace leaky
{

namespace
{

using Eigen::MatrixXcd;

const complex I(0.0, 1.0);

// Displacement and y-plane traction of a plane wave, evaluated at one height.
struct Wave
{
  complex ux = 0.0, uy = 0.0, uz = 0.0;
  complex tx = 0.0, ty = 0.0, tz = 0.0;
};

// u = d exp(i(k x + q (y - y0))) in an isotropic solid.
Wave SolidWave(double lam, double mu, complex k, complex q, complex dx, complex dy, complex dz, double dy0)
{
  const complex ph = std::exp(I * q * dy0);
  Wave w;
  w.ux = dx * ph;
  w.uy = dy * ph;
  w.uz = dz * ph;
  w.tx = I * mu * (k * dy + q * dx) * ph;
  w.ty = I * (lam * k * dx + (lam + 2.0 * mu) * q * dy) * ph;
  w.tz = I * mu * q * dz * ph;
  return w;
}

complex Root(complex a)
{
  return std::sqrt(a);
}

double Normalized(MatrixXcd M)
{
  for (Eigen::Index j = 0; j < M.cols(); j++)
  {
    const double n = M.col(j).norm();
    if (n > 0.0)
    {
      M.col(j) /= n;
    }
  }
  double rows = 1.0;
  for (Eigen::Index i = 0; i < M.rows(); i++)
  {
    const double n = M.row(i).norm();
    if (n == 0.0)
    {
      return 0.0;
    }
    rows *= n;
  }
  return std::abs(M.fullPivLu().determinant()) / rows;
}

struct Interface
{
  Side side;
  double y;
  const HalfSpaceSpec *spec;
};

}  // namespace

double CharacteristicResidual(const LayerStack &stack, std::span<const HalfSpaceSpec> half_spaces, double omega,
                              complex k, const VerticalWavenumbers &w)
{
  if (stack.Layers().size() != 1 || !stack.Layers().front().IsIsotropic())
  {
    throw UnsupportedError("characteristic residual needs a single isotropic layer");
  }
  if (stack.IsClamped(Side::Bottom) || stack.IsClamped(Side::Top))
  {
    throw UnsupportedError("characteristic residual does not support clamped surfaces");
  }
  const auto &mat = std::get<IsotropicSolid>(stack.Layers().front().material);
  const double lam = mat.Lambda(), mu = mat.Mu();
  const double kl = omega / mat.LongitudinalSpeed(), kt = omega / mat.TransverseSpeed();
  const complex p = Root(kl * kl - k * k), q = Root(kt * kt - k * k);
  const double ym = 0.5 * (stack.YBottom() + stack.YTop());

  std::vector<Interface> faces;
  for (Side side : {Side::Bottom, Side::Top})
  {
    const HalfSpaceSpec *spec = nullptr;
    for (const auto &h : half_spaces)
    {
      if (h.side == side && !std::holds_alternative<Vacuum>(h.medium))
      {
        spec = &h;
      }
    }
    faces.push_back({side, side == Side::Top ? stack.YTop() : stack.YBottom(), spec});
  }

  // In-plane problem. Unknowns: layer P+, P-, SV+, SV-, then half-space waves.
  // Rows per face: tau_x, tau_y, then u_y (fluid) or u_x, u_y (solid).
  {
    int extra = 0, rows = 0;
    for (const auto &f : faces)
    {
      const bool fluid = f.spec && std::holds_alternative<FluidMaterial>(f.spec->medium);
      const bool solid = f.spec && std::holds_alternative<IsotropicSolid>(f.spec->medium);
      extra += fluid ? 1 : (solid ? 2 : 0);
      rows += fluid ? 3 : (solid ? 4 : 2);
    }
    MatrixXcd M = MatrixXcd::Zero(rows, 4 + extra);
    int row = 0, col = 4;
    for (const auto &f : faces)
    {
      const double dy = f.y - ym;
      const Wave layer[4] = {SolidWave(lam, mu, k, p, k, p, 0.0, dy), SolidWave(lam, mu, k, -p, k, -p, 0.0, dy),
                             SolidWave(lam, mu, k, q, q, -k, 0.0, dy), SolidWave(lam, mu, k, -q, -q, -k, 0.0, dy)};
      const bool fluid = f.spec && std::holds_alternative<FluidMaterial>(f.spec->medium);
      const bool solid = f.spec && std::holds_alternative<IsotropicSolid>(f.spec->medium);
      for (int j = 0; j < 4; j++)
      {
        M(row, j) = layer[j].tx;
        M(row + 1, j) = layer[j].ty;
        if (fluid)
        {
          M(row + 2, j) = layer[j].uy;
        }
        if (solid)
        {
          M(row + 2, j) = layer[j].ux;
          M(row + 3, j) = layer[j].uy;
        }
      }
      if (fluid)
      {
        // Pressure wave p_s exp(i kappa_y (y - y_s)): tau = -p e_y, u_y = i kappa_y p / (w^2 rho).
        const auto &fl = std::get<FluidMaterial>(f.spec->medium);
        const complex ky = w.Kappa(f.side);
        M(row + 1, col) = 1.0;
        M(row + 2, col) = -I * ky / (omega * omega * fl.rho);
        col += 1;
      }
      if (solid)
      {
        const auto &hs = std::get<IsotropicSolid>(f.spec->medium);
        const complex ky = w.Kappa(f.side), gy = w.Gamma(f.side);
        const Wave P = SolidWave(hs.Lambda(), hs.Mu(), k, ky, k, ky, 0.0, 0.0);
        const Wave S = SolidWave(hs.Lambda(), hs.Mu(), k, gy, gy, -k, 0.0, 0.0);
        const Wave hw[2] = {P, S};
        for (int j = 0; j < 2; j++)
        {
          M(row, col + j) = -hw[j].tx;
          M(row + 1, col + j) = -hw[j].ty;
          M(row + 2, col + j) = -hw[j].ux;
          M(row + 3, col + j) = -hw[j].uy;
        }
        col += 2;
      }
      row += fluid ? 3 : (solid ? 4 : 2);
    }
    const double inplane = Normalized(M);
    if (stack.Mode() == DofMode::InPlane)
    {
      return inplane;
    }

    // Shear-horizontal problem: tau_z free at vacuum and fluid faces, u_z and tau_z continuous at solids.
    int sh_extra = 0, sh_rows = 0;
    for (const auto &f : faces)
    {
      const bool solid = f.spec && std::holds_alternative<IsotropicSolid>(f.spec->medium);
      sh_extra += solid ? 1 : 0;
      sh_rows += solid ? 2 : 1;
    }
    MatrixXcd S = MatrixXcd::Zero(sh_rows, 2 + sh_extra);
    row = 0;
    col = 2;
    for (const auto &f : faces)
    {
      const double dy = f.y - ym;
      const Wave up = SolidWave(lam, mu, k, q, 0.0, 0.0, 1.0, dy), down = SolidWave(lam, mu, k, -q, 0.0, 0.0, 1.0, dy);
      const bool solid = f.spec && std::holds_alternative<IsotropicSolid>(f.spec->medium);
      S(row, 0) = up.tz;
      S(row, 1) = down.tz;
      if (solid)
      {
        const auto &hs = std::get<IsotropicSolid>(f.spec->medium);
        const Wave h = SolidWave(hs.Lambda(), hs.Mu(), k, w.Gamma(f.side), 0.0, 0.0, 1.0, 0.0);
        S(row, col) = -h.tz;
        S(row + 1, 0) = up.uz;
        S(row + 1, 1) = down.uz;
        S(row + 1, col) = -h.uz;
        col++;
      }
      row += solid ? 2 : 1;
    }
    return std::min(inplane, Normalized(S));
  }
}

}  // namespace leaky
