// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_TYPES_HPP
#define LEAKY_TYPES_HPP

#include <complex>
#include <string_view>

namespace leaky
{

using complex = std::complex<double>;

// Displacement components carried per node.
enum class DofMode
{
  InPlane,  // u_x, u_y (Lamb-type waves)
  Full      // u_x, u_y, u_z (adds shear-horizontal waves)
};

constexpr int ComponentsPerNode(DofMode mode)
{
  return mode == DofMode::InPlane ? 2 : 3;
}

// Plate surface. The thickness coordinate y increases from Bottom to Top.
enum class Side
{
  Bottom,
  Top
};

// Outward normal direction of a surface, +1 for Top and -1 for Bottom.
constexpr double OutwardSign(Side side)
{
  return side == Side::Top ? 1.0 : -1.0;
}

constexpr std::string_view ToString(Side side)
{
  return side == Side::Top ? "top" : "bottom";
}

}  // namespace leaky

#endif  // LEAKY_TYPES_HPP
