// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "support.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace leaky::test
{

IsotropicSolid Solid(const char *name)
{
  return std::get<IsotropicSolid>(*LookupMaterial(name));
}

FluidMaterial Fluid(const char *name)
{
  return std::get<FluidMaterial>(*LookupMaterial(name));
}

double Omega(double f_hz)
{
  return 2.0 * std::numbers::pi * f_hz;
}

namespace
{

// sin(x d)/x and cos(x d), x = sqrt(x2), both even in x and real for real x2.
double SinOver(double x2, double d)
{
  if (x2 > 0)
  {
    const double x = std::sqrt(x2);
    return std::sin(x * d) / x;
  }
  if (x2 < 0)
  {
    const double x = std::sqrt(-x2);
    return std::sinh(x * d) / x;
  }
  return d;
}

double Cos(double x2, double d)
{
  return x2 >= 0 ? std::cos(std::sqrt(x2) * d) : std::cosh(std::sqrt(-x2) * d);
}

// x sin(x d) = x^2 * sin(x d)/x
double XSin(double x2, double d)
{
  return x2 * SinOver(x2, d);
}

}  // namespace

double RayleighLambSymmetric(const IsotropicSolid &m, double h, double omega, double k)
{
  const double d = h / 2, p2 = std::pow(omega / m.LongitudinalSpeed(), 2) - k * k,
               q2 = std::pow(omega / m.TransverseSpeed(), 2) - k * k;
  const double a = std::pow(k * k - q2, 2) * Cos(p2, d) * SinOver(q2, d);
  const double b = 4 * k * k * XSin(p2, d) * Cos(q2, d);
  return (a + b) / (std::abs(a) + std::abs(b) + 1e-300);
}

double RayleighLambAntisymmetric(const IsotropicSolid &m, double h, double omega, double k)
{
  const double d = h / 2, p2 = std::pow(omega / m.LongitudinalSpeed(), 2) - k * k,
               q2 = std::pow(omega / m.TransverseSpeed(), 2) - k * k;
  const double a = std::pow(k * k - q2, 2) * SinOver(p2, d) * Cos(q2, d);
  const double b = 4 * k * k * Cos(p2, d) * XSin(q2, d);
  return (a + b) / (std::abs(a) + std::abs(b) + 1e-300);
}

std::vector<double> RayleighLambRoots(const IsotropicSolid &m, double h, double omega, double k_max, int n)
{
  std::vector<double> roots;
  for (auto *f : {&RayleighLambSymmetric, &RayleighLambAntisymmetric})
  {
    auto g = [&](double k) { return f(m, h, omega, k); };
    double k0 = k_max * 1e-6, g0 = g(k0);
    for (int i = 1; i <= n; i++)
    {
      const double k1 = k_max * i / n, g1 = g(k1);
      if (g0 * g1 < 0)
      {
        double lo = k0, hi = k1, glo = g0;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; it++)
        {
          const double mid = 0.5 * (lo + hi), gm = g(mid);
          if (gm * glo <= 0)
          {
            hi = mid;
          }
          else
          {
            lo = mid;
            glo = gm;
          }
        }
        const double r = 0.5 * (lo + hi);
        // The normalised functions also change sign across the poles of the
        // unnormalised form at q or p = 0; a true root has a tiny value nearby.
        if (std::abs(g(r)) < 1e-6)
        {
          roots.push_back(r);
        }
      }
      k0 = k1;
      g0 = g1;
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

double Hausdorff(const std::vector<complex> &a, const std::vector<complex> &b, double scale)
{
  auto one = [&](const std::vector<complex> &x, const std::vector<complex> &y) {
    double worst = 0.0;
    for (const auto &p : x)
    {
      double best = std::numeric_limits<double>::infinity();
      for (const auto &q : y)
      {
        best = std::min(best, std::abs(p - q));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one(a, b), one(b, a)) / scale;
}

double MatchOneToOne(std::vector<complex> a, std::vector<complex> b)
{
  if (a.size() != b.size())
  {
    return std::numeric_limits<double>::infinity();
  }
  double worst = 0.0;
  for (const auto &p : a)
  {
    auto it = std::min_element(b.begin(), b.end(),
                               [&](const complex &x, const complex &y) { return std::abs(x - p) < std::abs(y - p); });
    worst = std::max(worst, std::abs(*it - p) / std::max(std::abs(p), 1e-300));
    b.erase(it);
  }
  return worst;
}

std::vector<complex> Wavenumbers(const std::vector<EigenTuple> &t)
{
  std::vector<complex> k;
  for (const auto &x : t)
  {
    k.push_back(x.k);
  }
  return k;
}

std::vector<EigenTuple> SolveGeneral(const CoupledSystem &sys, std::uint64_t seed, bool merge)
{
  SolveOptions o;
  o.isotropic_fluid_path = false;
  o.mep.merge_identical_fluids = merge;
  o.shift.seed = seed;
  return SolveCoupled(sys, o);
}

WaveguideModel SingleLayer(const IsotropicSolid &m, double h, int order, DofMode mode,
                           std::vector<HalfSpaceSpec> half_spaces)
{
  WaveguideModel model;
  model.layers.push_back(Layer{m, h, order});
  model.mode = mode;
  model.half_spaces = std::move(half_spaces);
  return model;
}

}  // namespace leaky::test
