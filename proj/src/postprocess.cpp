// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/postprocess.hpp"

#include <numbers>
#include <string>

#include "leaky/errors.hpp"

namespace leaky
{

std::string_view ToString(ModeClass c)
{
  switch (c)
  {
    case ModeClass::Outgoing:
      return "outgoing";
    case ModeClass::Incoming:
      return "incoming";
    case ModeClass::Trapped:
      return "trapped";
    case ModeClass::Evanescent:
      return "evanescent";
  }
  return "unknown";
}

ModeClass ClassifyMode(complex k, const VerticalWavenumbers &w, const CoupledSystem &sys,
                       const ClassifyOptions &options)
{
  if (std::abs(k.real()) < options.tol_evan * std::abs(k.imag()))
  {
    return ModeClass::Evanescent;
  }
  const bool small_leak = std::abs(k.imag()) * 1e-3 < options.tol_trapped;
  if (sys.sides.empty())
  {
    return small_leak ? ModeClass::Trapped : ModeClass::Evanescent;
  }

  std::vector<std::pair<complex, double>> waves;
  for (const auto &s : sys.sides)
  {
    waves.emplace_back(w.Kappa(s.side), OutwardSign(s.side));
    if (s.IsSolid())
    {
      waves.emplace_back(w.Gamma(s.side), OutwardSign(s.side));
    }
  }
  bool all_decay = true, all_outward = true;
  for (const auto &[q, sigma] : waves)
  {
    const bool decays = q.imag() * sigma > 0.0;
    const bool radiates = q.real() * sigma > 0.0;
    all_decay = all_decay && decays;
    all_outward = all_outward && (decays || radiates);
  }
  if (all_decay && small_leak)
  {
    return ModeClass::Trapped;
  }
  return all_outward ? ModeClass::Outgoing : ModeClass::Incoming;
}

ModeSolution MakeModeSolution(const EigenTuple &t, const CoupledSystem &sys, const ClassifyOptions &options)
{
  ModeSolution m;
  m.omega = sys.omega;
  m.frequency = sys.omega / (2.0 * std::numbers::pi);
  m.k = t.k;
  m.w = t.w;
  m.classification = ClassifyMode(t.k, t.w, sys, options);
  m.v = t.v;
  m.residual = t.residual;
  m.multiplicity = t.multiplicity;
  return m;
}

namespace
{

complex Propagator(const ModeSolution &mode, double x, double t)
{
  return std::exp(complex(0.0, 1.0) * (mode.k * x - mode.omega * t));
}

}  // namespace

FieldSample EvaluatePlate(const ModeSolution &mode, const CoupledSystem &sys, double x, double y, double t)
{
  const LayerStack &stack = sys.stack;
  if (y < stack.YBottom() || y > stack.YTop())
  {
    throw DomainError("y = " + std::to_string(y) + " m is outside the plate");
  }
  const auto shape = stack.Shape(y);
  const int nc = stack.Components();
  Eigen::Vector3cd u = Eigen::Vector3cd::Zero(), du = Eigen::Vector3cd::Zero();
  for (size_t a = 0; a < shape.nodes.size(); a++)
  {
    for (int c = 0; c < nc; c++)
    {
      const int d = stack.Dof(shape.nodes[a], c);
      if (d >= 0)
      {
        u(c) += shape.values(a) * mode.v(d);
        du(c) += shape.derivatives(a) * mode.v(d);
      }
    }
  }
  const AnisotropicBlocks C = stack.Layers()[shape.layer].Blocks();
  const complex ik = complex(0.0, 1.0) * mode.k;
  const complex e = Propagator(mode, x, t);
  FieldSample s;
  s.x = x;
  s.y = y;
  s.region = Region::Plate;
  s.u = u * e;
  s.traction = (C.Cxy.cast<complex>() * (ik * u) + C.Cyy.cast<complex>() * du) * e;
  return s;
}

FieldSample EvaluateHalfSpace(const ModeSolution &mode, const CoupledSystem &sys, Side side, double x, double y,
                              double t)
{
  const CouplingSide *hs = sys.Find(side);
  if (!hs)
  {
    throw DomainError(std::string("no half-space on the ") + std::string(ToString(side)) + " side");
  }
  const complex I(0.0, 1.0);
  const double ys = side == Side::Top ? sys.stack.YTop() : sys.stack.YBottom();
  const complex e = Propagator(mode, x, t);
  const complex k = mode.k;
  FieldSample s;
  s.x = x;
  s.y = y;
  s.side = side;
  if (hs->IsFluid())
  {
    const auto &fluid = std::get<FluidMaterial>(hs->medium);
    const complex ky = mode.w.Kappa(side);
    const complex p = mode.v(hs->first_dof) * std::exp(I * ky * (y - ys)) * e;
    const double w2rho = mode.omega * mode.omega * fluid.rho;
    s.region = Region::Fluid;
    s.pressure = p;
    s.u << I * k * p / w2rho, I * ky * p / w2rho, 0.0;
    s.traction << 0.0, -p, 0.0;
    return s;
  }

  // Longitudinal amplitude a travels with kappa_y, shear amplitudes b, c with gamma_y.
  const auto &solid = std::get<IsotropicSolid>(hs->medium);
  const complex ky = mode.w.Kappa(side), gy = mode.w.Gamma(side);
  const double lam = solid.Lambda(), mu = solid.Mu();
  s.region = Region::Solid;
  const int n = hs->dof_count;
  for (int j = 0; j < n; j++)
  {
    const complex q = j == 0 ? ky : gy;
    Eigen::Vector3cd d;
    if (j == 0)
    {
      d << I * k, I * ky, 0.0;
    }
    else if (j == 1)
    {
      d << I * gy, -I * k, 0.0;
    }
    else
    {
      d << 0.0, 0.0, I * k;
    }
    const complex amp = mode.v(hs->first_dof + j) * std::exp(I * q * (y - ys)) * e;
    const Eigen::Vector3cd uj = d * amp;
    s.u += uj;
    // Traction on a y-plane of a plane wave exp(i(k x + q y)).
    s.traction(0) += I * mu * (k * uj(1) + q * uj(0));
    s.traction(1) += I * (lam * k * uj(0) + (lam + 2.0 * mu) * q * uj(1));
    s.traction(2) += I * mu * q * uj(2);
  }
  return s;
}

FieldGrid EvaluateFields(const ModeSolution &mode, const CoupledSystem &sys, const GridSpec &grid)
{
  FieldGrid out;
  const double yb = sys.stack.YBottom(), yt = sys.stack.YTop();
  for (double y : grid.y)
  {
    for (double x : grid.x)
    {
      if (y >= yb && y <= yt)
      {
        out.samples.push_back(EvaluatePlate(mode, sys, x, y, grid.t));
      }
      else
      {
        out.samples.push_back(EvaluateHalfSpace(mode, sys, y > yt ? Side::Top : Side::Bottom, x, y, grid.t));
      }
    }
  }
  return out;
}

}  // namespace leaky
