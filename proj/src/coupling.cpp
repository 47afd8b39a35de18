// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "leaky/errors.hpp"

namespace leaky
{

SolidCouplingMatrices MakeSolidCoupling(const IsotropicSolid &mat)
{
  SolidCouplingMatrices s;
  s.A0 = Eigen::Vector3d(1.0, -1.0, 1.0).asDiagonal();
  s.A1.setZero();
  s.A1(1, 0) = 1.0;
  s.A2.setZero();
  s.A2(0, 1) = 1.0;
  s.D1 = Eigen::Vector3d(1.0, 0.0, 0.0).asDiagonal();
  s.D2 = Eigen::Vector3d(0.0, 1.0, 1.0).asDiagonal();

  const AnisotropicBlocks C = StiffnessBlocks(mat);
  s.R0 = -(C.Cxy * s.A0 - C.Cyy * s.A1 - C.Cyy * s.A2);
  s.R1 = -(C.Cxy * s.A1 + C.Cyy * s.D1);
  // A0 D2 = diag(0, -1, 1): the shear-horizontal entry keeps its sign.
  s.R2 = -(C.Cxy * s.A2 + C.Cyy * s.A0 * s.D2);
  s.R3 = -C.Cyy * s.A1;
  s.R4 = -C.Cyy * s.A2;
  return s;
}

CoupledSystem CoupledSystem::FromPlate(const LayerStack &stack, const FemMatrices &fem, double omega)
{
  if (!(omega > 0.0))
  {
    throw DomainError("coupled system requires omega > 0");
  }
  if (fem.Size() != stack.DofCount())
  {
    throw UsageError("FEM matrices do not match the layer stack");
  }
  return CoupledSystem{.omega = omega,
                       .stack = stack,
                       .Ebar0 = fem.E0,
                       .Ebar1 = fem.E1,
                       .Ebar2 = fem.E2,
                       .Mbar = fem.M,
                       .r_terms = {},
                       .sides = {},
                       .plate_dofs = static_cast<int>(fem.Size()),
                       .length_scale = fem.length_scale};
}

const CouplingSide *CoupledSystem::Find(Side side) const
{
  for (const auto &s : sides)
  {
    if (s.side == side)
    {
      return &s;
    }
  }
  return nullptr;
}

complex CoupledSystem::RCoefficient(const RTerm &term, complex k, const VerticalWavenumbers &w) const
{
  const CouplingSide *side = Find(term.side);
  switch (term.term)
  {
    case CouplingTerm::IKappa:
      return complex(0.0, 1.0) * side->ParameterSign() * w.Kappa(term.side);
    case CouplingTerm::KKappa:
      return k * w.Kappa(term.side);
    case CouplingTerm::KGamma:
      return k * w.Gamma(term.side);
  }
  return 0.0;
}

Eigen::MatrixXcd CoupledSystem::Evaluate(complex k, const VerticalWavenumbers &w) const
{
  Eigen::MatrixXcd T = (-k * k) * Ebar0.cast<complex>() + (complex(0.0, 1.0) * k) * Ebar1.cast<complex>() -
                       Ebar2.cast<complex>() + (omega * omega) * Mbar.cast<complex>();
  for (const auto &term : r_terms)
  {
    T += RCoefficient(term, k, w) * term.matrix.cast<complex>();
  }
  return T;
}

namespace
{

Eigen::MatrixXd InsertDofs(const Eigen::MatrixXd &A, int pos, int count)
{
  const Eigen::Index n = A.rows();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(n + count, n + count);
  const Eigen::Index tail = n - pos;
  B.topLeftCorner(pos, pos) = A.topLeftCorner(pos, pos);
  B.topRightCorner(pos, tail) = A.topRightCorner(pos, tail);
  B.bottomLeftCorner(tail, pos) = A.bottomLeftCorner(tail, pos);
  B.bottomRightCorner(tail, tail) = A.bottomRightCorner(tail, tail);
  return B;
}

// Make room for `count` new DOFs of `side` and return their first index.
int ReserveDofs(CoupledSystem &sys, Side side, int count)
{
  if (sys.Find(side))
  {
    throw UsageError(std::string("the ") + std::string(ToString(side)) + " surface is already coupled");
  }
  if (sys.stack.IsClamped(side))
  {
    throw UsageError("a clamped surface cannot be coupled to a half-space");
  }
  int pos = static_cast<int>(sys.Size());
  if (side == Side::Bottom)
  {
    pos = sys.plate_dofs;
  }
  for (auto *m : {&sys.Ebar0, &sys.Ebar1, &sys.Ebar2, &sys.Mbar})
  {
    *m = InsertDofs(*m, pos, count);
  }
  for (auto &t : sys.r_terms)
  {
    t.matrix = InsertDofs(t.matrix, pos, count);
  }
  for (auto &s : sys.sides)
  {
    if (s.first_dof >= pos)
    {
      s.first_dof += count;
    }
  }
  return pos;
}

CouplingSide MakeSide(const CoupledSystem &sys, Side side)
{
  CouplingSide s{};
  s.side = side;
  const int node = sys.stack.SurfaceNode(side);
  for (int c = 0; c < sys.stack.Components(); c++)
  {
    s.surface_dofs.push_back(sys.stack.Dof(node, c));
  }
  s.normal_dof = sys.stack.Dof(node, 1);
  return s;
}

void SortSides(CoupledSystem &sys)
{
  std::sort(sys.sides.begin(), sys.sides.end(),
            [](const CouplingSide &a, const CouplingSide &b) { return a.side == Side::Bottom && b.side == Side::Top; });
}

}  // namespace

CoupledSystem AttachFluid(CoupledSystem sys, Side side, const FluidMaterial &fluid)
{
  const int f = ReserveDofs(sys, side, 1);
  CouplingSide s = MakeSide(sys, side);
  s.medium = fluid;
  s.kappa = BulkWavenumbersOf(fluid, sys.omega).kappa;
  s.first_dof = f;
  s.dof_count = 1;

  const double sigma = OutwardSign(side);
  sys.Ebar2(s.normal_dof, f) = sigma;
  sys.Mbar(f, s.normal_dof) = sigma * fluid.rho;
  RTerm term{CouplingTerm::IKappa, side, Eigen::MatrixXd::Zero(sys.Size(), sys.Size())};
  term.matrix(f, f) = 1.0;
  sys.r_terms.push_back(std::move(term));
  sys.sides.push_back(std::move(s));
  SortSides(sys);
  return sys;
}

CoupledSystem AttachSolid(CoupledSystem sys, Side side, const IsotropicSolid &solid)
{
  const int nc = sys.stack.Components();
  const int q = ReserveDofs(sys, side, nc);
  CouplingSide s = MakeSide(sys, side);
  s.medium = solid;
  const BulkWavenumbers bulk = BulkWavenumbersOf(solid, sys.omega);
  s.kappa = bulk.kappa;
  s.gamma = *bulk.gamma;
  s.first_dof = q;
  s.dof_count = nc;

  // In-plane problems drop the shear-horizontal amplitude c and the z rows.
  const SolidCouplingMatrices m = MakeSolidCoupling(solid);
  auto cut = [nc](const Eigen::Matrix3d &A) { return Eigen::MatrixXd(A.topLeftCorner(nc, nc)); };
  const double sigma = OutwardSign(side);
  const int n = static_cast<int>(sys.Size());

  auto put = [&](Eigen::MatrixXd &target, bool plate_rows, int col0, const Eigen::MatrixXd &blk) {
    for (int i = 0; i < nc; i++)
    {
      const int row = plate_rows ? s.surface_dofs[i] : q + i;
      for (int j = 0; j < nc; j++)
      {
        const int col = col0 < 0 ? s.surface_dofs[j] : col0 + j;
        target(row, col) += blk(i, j);
      }
    }
  };

  put(sys.Ebar0, false, q, cut(m.A0));
  put(sys.Ebar0, true, q, -sigma * cut(m.R0));
  put(sys.Ebar1, false, -1, -Eigen::MatrixXd::Identity(nc, nc));
  put(sys.Ebar2, true, q, -sigma * (s.kappa * s.kappa * cut(m.R3) + s.gamma * s.gamma * cut(m.R4)));

  RTerm r1{CouplingTerm::KKappa, side, Eigen::MatrixXd::Zero(n, n)};
  put(r1.matrix, true, q, sigma * cut(m.R1));
  put(r1.matrix, false, q, -cut(m.A1));
  RTerm r2{CouplingTerm::KGamma, side, Eigen::MatrixXd::Zero(n, n)};
  put(r2.matrix, true, q, sigma * cut(m.R2));
  put(r2.matrix, false, q, -cut(m.A2));
  sys.r_terms.push_back(std::move(r1));
  sys.r_terms.push_back(std::move(r2));
  sys.sides.push_back(std::move(s));
  SortSides(sys);
  return sys;
}

CoupledSystem BuildCoupledSystem(const LayerStack &stack, double omega,
                                 std::span<const HalfSpaceSpec> half_spaces)
{
  CoupledSystem sys = CoupledSystem::FromPlate(stack, AssembleStack(stack), omega);
  bool seen[2] = {false, false};
  for (const auto &hs : half_spaces)
  {
    bool &flag = seen[VerticalWavenumbers::Index(hs.side)];
    if (flag)
    {
      throw UsageError("at most one half-space per side");
    }
    flag = true;
    if (const auto *fluid = std::get_if<FluidMaterial>(&hs.medium))
    {
      sys = AttachFluid(std::move(sys), hs.side, *fluid);
    }
    else if (const auto *solid = std::get_if<IsotropicSolid>(&hs.medium))
    {
      sys = AttachSolid(std::move(sys), hs.side, *solid);
    }
  }
  return sys;
}

namespace
{

double PowerOfTwo(double x)
{
  return std::exp2(std::round(std::log2(x)));
}

}  // namespace

Equilibration EquilibrateMatrices(std::span<const Eigen::MatrixXd> terms)
{
  Eigen::MatrixXd P = Eigen::MatrixXd::Zero(terms[0].rows(), terms[0].cols());
  for (const auto &t : terms)
  {
    P += t.cwiseAbs();
  }
  const Eigen::Index n = P.rows();
  Equilibration e{Eigen::VectorXd::Ones(n), Eigen::VectorXd::Ones(n)};
  for (int sweep = 0; sweep < 20; sweep++)
  {
    for (Eigen::Index i = 0; i < n; i++)
    {
      const double r = P.row(i).maxCoeff();
      if (r > 0.0)
      {
        const double f = PowerOfTwo(1.0 / std::sqrt(r));
        e.row(i) *= f;
        P.row(i) *= f;
      }
    }
    for (Eigen::Index j = 0; j < n; j++)
    {
      const double c = P.col(j).maxCoeff();
      if (c > 0.0)
      {
        const double f = PowerOfTwo(1.0 / std::sqrt(c));
        e.col(j) *= f;
        P.col(j) *= f;
      }
    }
  }
  return e;
}

// Parameters are measured in units of the length scale: ik L, xi0 L^2,
// i kappa L for fluids and k kappa L^2 for solids.
Equilibration Equilibrate(const CoupledSystem &sys)
{
  const double L = sys.length_scale;
  std::vector<Eigen::MatrixXd> terms = {sys.Ebar0 / (L * L), sys.Ebar1 / L, sys.Ebar2,
                                        (sys.omega * sys.omega) * sys.Mbar};
  for (const auto &t : sys.r_terms)
  {
    terms.push_back(t.matrix / (t.term == CouplingTerm::IKappa ? L : L * L));
  }
  return EquilibrateMatrices(terms);
}

double NlevpResidual(const CoupledSystem &sys, complex k, const VerticalWavenumbers &w,
                     const Eigen::VectorXcd &v)
{
  return NlevpResidual(sys, k, w, v, Equilibrate(sys));
}

double NlevpResidual(const CoupledSystem &sys, complex k, const VerticalWavenumbers &w,
                     const Eigen::VectorXcd &v, const Equilibration &e)
{
  const Eigen::VectorXd &Dr = e.row, &Dc = e.col;
  auto scaled_norm = [&](const Eigen::MatrixXd &A) {
    return (Dr.asDiagonal() * A * Dc.asDiagonal()).norm();
  };
  double scale = std::max({std::norm(k) * scaled_norm(sys.Ebar0), std::abs(k) * scaled_norm(sys.Ebar1),
                           scaled_norm(sys.Ebar2), sys.omega * sys.omega * scaled_norm(sys.Mbar)});
  for (const auto &t : sys.r_terms)
  {
    scale = std::max(scale, std::abs(sys.RCoefficient(t, k, w)) * scaled_norm(t.matrix));
  }
  const Eigen::VectorXcd r = Dr.cast<complex>().asDiagonal() * (sys.Evaluate(k, w) * v);
  const double vn = (Dc.cast<complex>().asDiagonal().inverse() * v).norm();
  return r.norm() / (scale * vn);
}

}  // namespace leaky
