// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_TESTS_SUPPORT_HPP
#define LEAKY_TESTS_SUPPORT_HPP

#include <vector>

#include "leaky/coupling.hpp"
#include "leaky/materials.hpp"
#include "leaky/mep.hpp"
#include "leaky/sweep.hpp"

namespace leaky::test
{

IsotropicSolid Solid(const char *name);
FluidMaterial Fluid(const char *name);

double Omega(double f_hz);

//
// Rayleigh-Lamb functions of a free plate of thickness h, written so that they
// are real for every real k (the odd factors of p and q are divided out):
//   symmetric:      (k^2 - q^2)^2 cos(p d) sin(q d)/q + 4 k^2 p sin(p d) cos(q d)
//   antisymmetric:  (k^2 - q^2)^2 sin(p d)/p cos(q d) + 4 k^2 q cos(p d) sin(q d)
// with d = h/2, p^2 = (w/c_l)^2 - k^2, q^2 = (w/c_t)^2 - k^2.
//
double RayleighLambSymmetric(const IsotropicSolid &m, double h, double omega, double k);
double RayleighLambAntisymmetric(const IsotropicSolid &m, double h, double omega, double k);

// Real roots in (0, k_max) by sign-change bracketing on n intervals and bisection.
std::vector<double> RayleighLambRoots(const IsotropicSolid &m, double h, double omega, double k_max, int n = 20000);

// Largest distance from a point of a to the nearest point of b, and back, relative to scale.
double Hausdorff(const std::vector<complex> &a, const std::vector<complex> &b, double scale);

// Greedy one-to-one matching; returns the worst relative distance, or infinity on a size mismatch.
double MatchOneToOne(std::vector<complex> a, std::vector<complex> b);

std::vector<complex> Wavenumbers(const std::vector<EigenTuple> &t);

// Certified tuples at one frequency via the general path (isotropic fluid path off).
std::vector<EigenTuple> SolveGeneral(const CoupledSystem &sys, std::uint64_t seed = 0, bool merge = true);

// Single-layer model helper.
WaveguideModel SingleLayer(const IsotropicSolid &m, double h, int order, DofMode mode,
                           std::vector<HalfSpaceSpec> half_spaces);

}  // namespace leaky::test

#endif  // LEAKY_TESTS_SUPPORT_HPP
