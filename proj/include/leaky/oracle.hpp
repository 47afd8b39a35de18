// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_ORACLE_HPP
#define LEAKY_ORACLE_HPP

#include <span>

#include "leaky/coupling.hpp"
#include "leaky/fem.hpp"

namespace leaky
{

//
// Boundary-condition determinant of a single isotropic layer built from exact
// plane-wave solutions (no discretisation). The layer carries P and SV waves
// travelling up and down (plus SH waves in Full mode); fluid half-spaces add a
// pressure wave and solid half-spaces a P and an SV wave (and an SH wave),
// each with the vertical wavenumbers in `w`. Columns are scaled to unit norm,
// and the result is |det| divided by the product of row norms, a number in
// [0, 1] that vanishes at a mode. In Full mode the smaller of the in-plane and
// shear-horizontal values is returned.
//
// Throws UnsupportedError unless the stack is one isotropic, unclamped layer.
//
double CharacteristicResidual(const LayerStack &stack, std::span<const HalfSpaceSpec> half_spaces,
                              double omega, complex k, const VerticalWavenumbers &w = {});

}  // namespace leaky

#endif  // LEAKY_ORACLE_HPP
