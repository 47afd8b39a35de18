// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "leaky/errors.hpp"
#include "leaky/sweep.hpp"
#include "support.hpp"

using namespace leaky;
using namespace leaky::test;

namespace
{

WaveguideModel Plate(const char *material, int p, std::vector<HalfSpaceSpec> sides, DofMode mode = DofMode::InPlane)
{
  WaveguideModel m;
  m.layers = {Layer{Solid(material), 1e-3, p}};
  m.mode = mode;
  m.half_spaces = std::move(sides);
  return m;
}

}  // namespace

TEST(DispersionSweep, RejectsBadFrequencyLists)
{
  const auto model = Plate("brass", 5, {});
  EXPECT_THROW(DispersionSweep(model, {}), UsageError);
  EXPECT_THROW(DispersionSweep(model, {2e6, 1e6}), UsageError);
  EXPECT_THROW(DispersionSweep(model, {-1e6, 1e6}), UsageError);
}

TEST(DispersionSweep, SingleFrequencyMatchesSolveFrequency)
{
  const auto model = Plate("brass", 9, {HalfSpaceSpec{Side::Top, Fluid("water")}});
  const auto a = DispersionSweep(model, {1e6});
  const auto b = SolveFrequency(model, 1e6, {});
  ASSERT_EQ(a.size(), 1u);
  ASSERT_EQ(a[0].modes.size(), b.modes.size());
  for (size_t i = 0; i < b.modes.size(); i++)
  {
    EXPECT_EQ(a[0].modes[i].k, b.modes[i].k);
  }
  for (const auto &m : b.modes)
  {
    EXPECT_TRUE(m.k.real() > 0 || (m.k.real() == 0 && m.k.imag() > 0)) << m.k;
  }
}

TEST(DispersionSweep, ThreadCountDoesNotChangeResults)
{
  const auto model =
    Plate("brass", 9, {HalfSpaceSpec{Side::Bottom, Fluid("water")}, HalfSpaceSpec{Side::Top, Fluid("water")}});
  const std::vector<double> f = {0.5e6, 1e6, 1.5e6, 2e6, 2.5e6};
  SweepOptions one, three;
  three.threads = 3;
  const auto a = DispersionSweep(model, f, one), b = DispersionSweep(model, f, three);
  ASSERT_EQ(a.size(), b.size());
  for (size_t i = 0; i < a.size(); i++)
  {
    EXPECT_EQ(a[i].frequency, f[i]);
    ASSERT_EQ(a[i].modes.size(), b[i].modes.size());
    for (size_t j = 0; j < a[i].modes.size(); j++)
    {
      EXPECT_EQ(a[i].modes[j].k, b[i].modes[j].k);
      EXPECT_EQ(a[i].modes[j].classification, b[i].modes[j].classification);
    }
  }
}

TEST(DispersionSweep, FailuresAreCapturedPerFrequency)
{
  const auto model = Plate("brass", 9, {HalfSpaceSpec{Side::Top, Solid("teflon")}});
  SweepOptions o;
  o.solve.max_size = 10;
  const auto r = DispersionSweep(model, {1e6, 2e6}, o);
  ASSERT_EQ(r.size(), 2u);
  for (const auto &x : r)
  {
    ASSERT_TRUE(x.error);
    EXPECT_TRUE(x.modes.empty());
  }
}
