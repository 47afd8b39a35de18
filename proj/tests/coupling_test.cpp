// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "leaky/coupling.hpp"
#include "leaky/errors.hpp"
#include "support.hpp"

using namespace leaky;
using namespace leaky::test;
using Eigen::Matrix3d;

namespace
{

const double kH = 1e-3;

LayerStack Brass(int p, DofMode mode = DofMode::InPlane)
{
  return LayerStack({Layer{Solid("brass"), kH, p}}, mode);
}

}  // namespace

TEST(SolidCoupling, Identities)
{
  for (const char *n : {"brass", "teflon", "titanium"})
  {
    const auto s = MakeSolidCoupling(Solid(n));
    EXPECT_EQ(s.A0, Eigen::Vector3d(1, -1, 1).asDiagonal().toDenseMatrix());
    EXPECT_EQ((s.A1 * s.D2).norm(), 0.0);
    EXPECT_EQ((s.A2 * s.D1).norm(), 0.0);
    EXPECT_EQ(s.A1 * s.D1, s.A1);
    EXPECT_EQ(s.A2 * s.D2, s.A2);
    EXPECT_EQ(s.A0 * s.D1, s.D1);
    // A0 D2 = -D2 holds on the in-plane block; the shear-horizontal entry is +1.
    const Matrix3d a0d2 = s.A0 * s.D2;
    EXPECT_EQ(Matrix3d(a0d2).topLeftCorner(2, 2).eval(), Matrix3d(-s.D2).topLeftCorner(2, 2).eval());
    EXPECT_EQ(a0d2(2, 2), 1.0);
  }
}

TEST(SolidCoupling, TractionMatrices)
{
  const auto m = Solid("teflon");
  const auto s = MakeSolidCoupling(m);
  const double l2m = m.Lambda() + 2 * m.Mu();
  EXPECT_DOUBLE_EQ(s.R3(1, 0), -l2m);
  EXPECT_EQ(s.R3.cwiseAbs().sum(), l2m);
  EXPECT_DOUBLE_EQ(s.R4(0, 1), -m.Mu());
  EXPECT_EQ(s.R4.cwiseAbs().sum(), m.Mu());
  const auto C = StiffnessBlocks(m);
  const Matrix3d r2_inplane = -(C.Cxy * s.A2 - C.Cyy * s.D2);
  EXPECT_EQ(s.R2.topLeftCorner(2, 2).eval(), r2_inplane.topLeftCorner(2, 2).eval());
  EXPECT_EQ(s.R0, (-(C.Cxy * s.A0 - C.Cyy * s.A1 - C.Cyy * s.A2)).eval());
  EXPECT_EQ(s.R1, (-(C.Cxy * s.A1 + C.Cyy * s.D1)).eval());
}

TEST(CoupledSystem, SizesOfWorkedExamples)
{
  const double w = Omega(1e6);
  const HalfSpaceSpec water_b{Side::Bottom, Fluid("water")}, water_t{Side::Top, Fluid("water")};
  EXPECT_EQ(BuildCoupledSystem(Brass(9), w, std::vector{water_b, water_t}).Size(), 22);
  const HalfSpaceSpec teflon_b{Side::Bottom, Solid("teflon")};
  EXPECT_EQ(BuildCoupledSystem(Brass(13, DofMode::Full), w, std::vector{teflon_b}).Size(), 45);
  LayerStack tri({Layer{Solid("titanium"), kH, 6}, Layer{Solid("brass"), kH, 8}, Layer{Solid("titanium"), kH, 6}},
                 DofMode::InPlane);
  const auto sys = BuildCoupledSystem(tri, w, std::vector{teflon_b, HalfSpaceSpec{Side::Top, Fluid("oil")}});
  EXPECT_EQ(sys.Size(), 45);
  EXPECT_EQ(sys.plate_dofs, 42);
  ASSERT_EQ(sys.sides.size(), 2u);
  EXPECT_EQ(sys.sides[0].side, Side::Bottom);
  EXPECT_EQ(sys.sides[0].first_dof, 42);
  EXPECT_EQ(sys.sides[0].dof_count, 2);
  EXPECT_EQ(sys.sides[1].first_dof, 44);
}

TEST(CoupledSystem, SixParameterConfiguration)
{
  const auto sys = BuildCoupledSystem(
    Brass(13), Omega(1e6),
    std::vector{HalfSpaceSpec{Side::Bottom, Solid("teflon")}, HalfSpaceSpec{Side::Top, Solid("brass")}});
  EXPECT_EQ(sys.r_terms.size(), 4u);
  EXPECT_EQ(sys.Size(), 28 + 4);
}

TEST(CoupledSystem, VacuumIsFreePlate)
{
  const auto stack = Brass(7);
  const auto fem = AssembleStack(stack);
  const auto sys = BuildCoupledSystem(stack, Omega(1e6), std::vector{HalfSpaceSpec{Side::Top, Vacuum{}}});
  EXPECT_TRUE(sys.r_terms.empty());
  EXPECT_EQ(sys.Ebar0, fem.E0);
  EXPECT_EQ(sys.Ebar1, fem.E1);
  EXPECT_EQ(sys.Ebar2, fem.E2);
  EXPECT_EQ(sys.Mbar, fem.M);
}

TEST(CoupledSystem, FluidEntriesAndSideSigns)
{
  const auto stack = Brass(5);
  const auto water = Fluid("water");
  const auto top = BuildCoupledSystem(stack, Omega(1e6), std::vector{HalfSpaceSpec{Side::Top, water}});
  const auto bot = BuildCoupledSystem(stack, Omega(1e6), std::vector{HalfSpaceSpec{Side::Bottom, water}});
  const auto &st = top.sides[0], &sb = bot.sides[0];
  const int ft = st.first_dof, fb = sb.first_dof;
  EXPECT_EQ(top.Ebar2(st.normal_dof, ft), 1.0);
  EXPECT_EQ(top.Mbar(ft, st.normal_dof), water.rho);
  EXPECT_EQ(bot.Ebar2(sb.normal_dof, fb), -1.0);
  EXPECT_EQ(bot.Mbar(fb, sb.normal_dof), -water.rho);
  ASSERT_EQ(top.r_terms.size(), 1u);
  EXPECT_EQ(top.r_terms[0].term, CouplingTerm::IKappa);
  EXPECT_EQ(top.r_terms[0].matrix(ft, ft), 1.0);
  EXPECT_EQ(top.r_terms[0].matrix.cwiseAbs().sum(), 1.0);
  // Only the two coupling entries differ in sign, the rest of the pressure row/column is zero.
  EXPECT_EQ(top.Ebar2.col(ft).cwiseAbs().sum(), 1.0);
  EXPECT_EQ(top.Mbar.row(ft).cwiseAbs().sum(), water.rho);
  EXPECT_EQ(top.Ebar0.row(ft).norm() + top.Ebar1.row(ft).norm(), 0.0);
}

TEST(CoupledSystem, CouplingASideTwiceIsAnError)
{
  auto sys = BuildCoupledSystem(Brass(3), Omega(1e6), std::vector{HalfSpaceSpec{Side::Top, Fluid("water")}});
  EXPECT_THROW(AttachFluid(sys, Side::Top, Fluid("water")), UsageError);
  EXPECT_THROW(AttachSolid(sys, Side::Top, Solid("teflon")), UsageError);
  EXPECT_THROW(BuildCoupledSystem(Brass(3), Omega(1e6),
                                  std::vector{HalfSpaceSpec{Side::Top, Fluid("water")},
                                              HalfSpaceSpec{Side::Top, Fluid("oil")}}),
               UsageError);
  auto clamped = Brass(3);
  clamped.Clamp(Side::Top);
  EXPECT_THROW(BuildCoupledSystem(clamped, Omega(1e6), std::vector{HalfSpaceSpec{Side::Top, Fluid("water")}}),
               UsageError);
}

TEST(CoupledSystem, SolidBlocks)
{
  const auto teflon = Solid("teflon");
  const auto sys =
    BuildCoupledSystem(Brass(4, DofMode::Full), Omega(1e6), std::vector{HalfSpaceSpec{Side::Top, teflon}});
  const auto &s = sys.sides[0];
  const auto c = MakeSolidCoupling(teflon);
  const int q = s.first_dof;
  ASSERT_EQ(s.dof_count, 3);
  ASSERT_EQ(s.surface_dofs.size(), 3u);
  const int p = s.surface_dofs[0];
  EXPECT_EQ(sys.Ebar0.block(q, q, 3, 3), c.A0);
  EXPECT_EQ(sys.Ebar0.block(p, q, 3, 3), -c.R0);
  EXPECT_EQ(sys.Ebar1.block(q, p, 3, 3), -Matrix3d::Identity());
  const Matrix3d e2 = -(s.kappa * s.kappa * c.R3 + s.gamma * s.gamma * c.R4);
  EXPECT_LT((sys.Ebar2.block(p, q, 3, 3) - e2).norm(), 1e-15 * e2.norm());
  for (const auto &t : sys.r_terms)
  {
    const Matrix3d pq = t.matrix.block(p, q, 3, 3), qq = t.matrix.block(q, q, 3, 3);
    if (t.term == CouplingTerm::KKappa)
    {
      EXPECT_EQ(pq, c.R1);
      EXPECT_EQ(qq, -c.A1);
    }
    else
    {
      EXPECT_EQ(t.term, CouplingTerm::KGamma);
      EXPECT_EQ(pq, c.R2);
      EXPECT_EQ(qq, -c.A2);
    }
  }
  // In-plane drops the third amplitude and the third rows/columns.
  const auto ip = BuildCoupledSystem(Brass(4), Omega(1e6), std::vector{HalfSpaceSpec{Side::Bottom, teflon}});
  EXPECT_EQ(ip.sides[0].dof_count, 2);
  EXPECT_EQ(ip.Size(), 10 + 2);
}

TEST(CoupledSystem, FluidSchurComplementIsNeumannTractionProperty)
{
  // Eliminating the pressure adds i sigma rho w^2 / kappa_y to the normal
  // surface entry, kappa_y the physical vertical wavenumber.
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.1, 3.0);
  const auto water = Fluid("water");
  const auto stack = Brass(4);
  const auto fem = AssembleStack(stack);
  int samples = 0;
  while (samples < 10)
  {
    const double w = Omega(u(rng) * 1e6);
    const complex k(u(rng) * w / 1480.0, 0.1 * u(rng) * w / 1480.0);
    const double kappa = w / water.c;
    if (std::abs(std::abs(k) - kappa) < 1e-3 * kappa)
    {
      continue;
    }
    for (Side side : {Side::Top, Side::Bottom})
    {
      const auto sys = BuildCoupledSystem(stack, w, std::vector{HalfSpaceSpec{side, water}});
      VerticalWavenumbers vw;
      vw.Kappa(side) = std::sqrt(complex(kappa * kappa) - k * k);
      const Eigen::MatrixXcd T = sys.Evaluate(k, vw);
      const int n = sys.plate_dofs, f = sys.sides[0].first_dof;
      const Eigen::MatrixXcd S =
        T.topLeftCorner(n, n) - T.block(0, f, n, 1) * T.block(f, 0, 1, n) / T(f, f);
      const complex I(0, 1);
      Eigen::MatrixXcd expect = -k * k * fem.E0.cast<complex>() + I * k * fem.E1.cast<complex>() -
                                fem.E2.cast<complex>() + w * w * fem.M.cast<complex>();
      const int s = sys.sides[0].normal_dof;
      expect(s, s) += I * OutwardSign(side) * water.rho * w * w / vw.Kappa(side);
      EXPECT_LT((S - expect).norm(), 1e-10 * expect.norm());
    }
    samples++;
  }
}

TEST(CoupledSystem, MatricesAreReal)
{
  const auto sys = BuildCoupledSystem(
    Brass(6), Omega(2e6), std::vector{HalfSpaceSpec{Side::Bottom, Solid("teflon")}, HalfSpaceSpec{Side::Top, Fluid("oil")}});
  EXPECT_TRUE(sys.Ebar0.allFinite() && sys.Ebar1.allFinite() && sys.Ebar2.allFinite() && sys.Mbar.allFinite());
  for (const auto &t : sys.r_terms)
  {
    EXPECT_TRUE(t.matrix.allFinite());
  }
}

TEST(NlevpResidual, FreePlateSolutionsAndRandomVectors)
{
  const auto stack = Brass(9);
  const double w = Omega(1.5e6);
  const auto sys = BuildCoupledSystem(stack, w, std::vector<HalfSpaceSpec>{});
  for (const auto &m : SolveFreePlate(AssembleStack(stack), w))
  {
    if (std::abs(m.k) * kH < 50)
    {
      EXPECT_LT(NlevpResidual(sys, m.k, {}, m.u), 1e-10);
    }
  }
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n;
  for (int i = 0; i < 10; i++)
  {
    Eigen::VectorXcd v(sys.Size());
    for (Eigen::Index j = 0; j < v.size(); j++)
    {
      v(j) = {n(rng), n(rng)};
    }
    EXPECT_GT(NlevpResidual(sys, complex(1000 * n(rng), 100 * n(rng)), {}, v), 1e-3);
  }
}
