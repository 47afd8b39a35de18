// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_MEP_HPP
#define LEAKY_MEP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "leaky/coupling.hpp"

namespace leaky
{

enum class ParamKind
{
  IK,        // i k
  IKappa,    // i kappa_r of a fluid (one side, or both when merged)
  XiKappa,   // k kappa_y of a solid
  XiGamma,   // k gamma_y of a solid
  Xi0        // -k^2
};

// Spectral parameter, stored dimensionless: ik L, i kappa_r L, xi L^2, xi0 L^2.
struct MepParameter
{
  ParamKind kind;
  std::vector<Side> sides;  // empty for IK / Xi0
};

//
// One pencil (A_0 + sum_j lambda_j A_j) x = 0. Matrices are indexed 0..r with
// A[j] multiplying parameter j-1.
//
struct MepEquation
{
  std::string label;
  std::vector<Eigen::MatrixXd> A;

  Eigen::Index Size() const { return A.front().rows(); }
};

//
// Linear r-parameter eigenvalue problem built from a coupled system. The first
// equation carries the (equilibrated) physical problem, the others are 2x2
// pencils tying parameters together. The eigenvector of the main equation is
// col_scale .* y in the DOF order given by `dofs` (identity unless the
// isotropic fluid path permuted and transformed the unknowns).
//
struct MepSystem
{
  std::vector<MepEquation> equations;
  std::vector<MepParameter> params;
  bool isotropic_fluid_path = false;
  Eigen::VectorXd row_scale, col_scale;
  std::vector<int> dofs;  // main-equation position -> CoupledSystem DOF
  int transformed_from = 0;  // positions >= this carry ik L times the DOF (isotropic path)
  double length_scale = 1.0;

  int Parameters() const { return static_cast<int>(params.size()); }
  Eigen::Index MainSize() const { return equations.front().Size(); }
  Eigen::Index DeterminantSize() const;
  // Position of a parameter, or -1.
  int Find(ParamKind kind, Side side) const;
  int Find(ParamKind kind) const;
};

struct MepOptions
{
  // Share one kappa parameter when the same fluid loads both faces.
  bool merge_identical_fluids = true;
};

MepSystem BuildMep(const CoupledSystem &sys, const MepOptions &options = {});

// True when every layer is isotropic, every coupled side is a fluid and the
// problem is in-plane.
bool IsotropicFluidPathApplicable(const CoupledSystem &sys);

//
// Linear problem in (i kappa_r per fluid parameter, xi0) without an ik
// parameter, obtained by scaling the u_y and pressure rows and unknowns by ik.
// Throws StructureError if the matrices lack the required block pattern.
//
MepSystem BuildMepIsotropicFluid(const CoupledSystem &sys, const MepOptions &options = {});

// Delta_0 .. Delta_r; throws SizeError if prod n_i exceeds max_size.
std::vector<Eigen::MatrixXd> OperatorDeterminants(const MepSystem &mep,
                                                  Eigen::Index max_size = 20000);

struct ShiftOptions
{
  std::uint64_t seed = 0;  // 0: deterministic default shift
  double cluster_tol = 1e-8;
  double infinite_tol = 1e-10;
  int max_retries = 3;
};

struct RawTuple
{
  Eigen::VectorXcd lambda;  // back-mapped parameters, same order as MepSystem::params
  Eigen::VectorXcd z;       // eigenvector of the Delta problem
  int multiplicity = 1;
};

struct ShiftedSolution
{
  std::vector<RawTuple> tuples;
  double shift = 0.0;
  int discarded_infinite = 0;
};

//
// Solves the shifted Delta problems and maps the parameters back. The last
// determinant is the xi0 one. Throws BackendError if every shift leaves
// Delta_0 + s Delta_r singular.
//
ShiftedSolution SolveShifted(const std::vector<Eigen::MatrixXd> &delta,
                             const ShiftOptions &options = {});

struct EigenTuple
{
  complex k;    // rad/m
  complex xi0;  // 1/m^2
  VerticalWavenumbers w;
  Eigen::VectorXcd v;  // CoupledSystem DOFs, unit norm
  std::vector<double> certificates;  // per MEP equation
  double residual = 0.0;             // NlevpResidual
  double xi0_error = 0.0;            // |xi0 + k^2| / max(1, |k|^2), dimensionless
  double identity_error = 0.0;       // worst |kappa_y^2 + k^2 - kappa^2| / kappa^2
  int multiplicity = 1;
};

struct CertifyOptions
{
  double residual_tol = 1e-6;
  double certificate_tol = 1e-6;
  double identity_tol = 1e-8;
  double xi0_tol = 1e-8;
};

// Recover physical tuples and keep those passing every certificate.
std::vector<EigenTuple> ExtractModes(const ShiftedSolution &raw, const MepSystem &mep,
                                     const CoupledSystem &sys, const CertifyOptions &options = {});

// Unfiltered variant: every finite tuple with its certificate values filled in.
std::vector<EigenTuple> RecoverTuples(const ShiftedSolution &raw, const MepSystem &mep,
                                      const CoupledSystem &sys);

bool PassesCertificates(const EigenTuple &t, const CertifyOptions &options);

struct SolveOptions
{
  MepOptions mep;
  ShiftOptions shift;
  CertifyOptions certify;
  bool isotropic_fluid_path = true;  // use it when applicable
  Eigen::Index max_size = 20000;
};

std::vector<EigenTuple> SolveCoupled(const CoupledSystem &sys, const SolveOptions &options = {});

}  // namespace leaky

#endif  // LEAKY_MEP_HPP
