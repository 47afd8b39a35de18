// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/mep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "leaky/errors.hpp"
#include "leaky/linalg.hpp"

namespace leaky
{

Eigen::Index MepSystem::DeterminantSize() const
{
  Eigen::Index n = 1;
  for (const auto &eq : equations)
  {
    n *= eq.Size();
  }
  return n;
}

int MepSystem::Find(ParamKind kind, Side side) const
{
  for (int j = 0; j < Parameters(); j++)
  {
    const auto &s = params[j].sides;
    if (params[j].kind == kind && std::find(s.begin(), s.end(), side) != s.end())
    {
      return j;
    }
  }
  return -1;
}

int MepSystem::Find(ParamKind kind) const
{
  for (int j = 0; j < Parameters(); j++)
  {
    if (params[j].kind == kind)
    {
      return j;
    }
  }
  return -1;
}

namespace
{

using Eigen::Matrix2d;
using Eigen::MatrixXd;

bool SameFluid(const CouplingSide &a, const CouplingSide &b)
{
  const auto &fa = std::get<FluidMaterial>(a.medium);
  const auto &fb = std::get<FluidMaterial>(b.medium);
  return fa.rho == fb.rho && fa.c == fb.c;
}

// Half-space parameters, bottom side first.
std::vector<MepParameter> SideParameters(const CoupledSystem &sys, const MepOptions &options)
{
  std::vector<MepParameter> params;
  const bool merge = options.merge_identical_fluids && sys.sides.size() == 2 && sys.sides[0].IsFluid() &&
                     sys.sides[1].IsFluid() && SameFluid(sys.sides[0], sys.sides[1]);
  if (merge)
  {
    params.push_back({ParamKind::IKappa, {Side::Bottom, Side::Top}});
    return params;
  }
  for (const auto &s : sys.sides)
  {
    if (s.IsFluid())
    {
      params.push_back({ParamKind::IKappa, {s.side}});
    }
    else
    {
      params.push_back({ParamKind::XiKappa, {s.side}});
      params.push_back({ParamKind::XiGamma, {s.side}});
    }
  }
  return params;
}

// Bulk wavenumber (times L) constrained by an auxiliary pencil.
double BulkHat(const CoupledSystem &sys, const MepParameter &p)
{
  const CouplingSide &s = *sys.Find(p.sides.front());
  return (p.kind == ParamKind::XiGamma ? s.gamma : s.kappa) * sys.length_scale;
}

//
// 2x2 pencil whose determinant vanishes exactly when the side parameter and
// xi0 describe a bulk wave: fluid (i kappa_y)^2 + kappa^2 + xi0 = 0, solid
// xi^2 + xi0 (kappa^2 + xi0) = 0.
//
MepEquation AuxiliaryEquation(const CoupledSystem &sys, const std::vector<MepParameter> &params, int j)
{
  const int r = static_cast<int>(params.size());
  MepEquation eq;
  eq.A.assign(r + 1, MatrixXd::Zero(2, 2));
  const double b = BulkHat(sys, params[j]);
  const bool fluid = params[j].kind == ParamKind::IKappa;
  eq.label = fluid ? "fluid" : (params[j].kind == ParamKind::XiKappa ? "solid-kappa" : "solid-gamma");
  eq.A[0] = (Matrix2d() << 0.0, -b * b, fluid ? 1.0 : 0.0, 0.0).finished();
  eq.A[j + 1] = Matrix2d::Identity();
  eq.A[r] = (Matrix2d() << 0.0, -1.0, fluid ? 0.0 : 1.0, 0.0).finished();
  return eq;
}

// det = xi0 - (ik)^2.
MepEquation WavenumberEquation(int r)
{
  MepEquation eq;
  eq.label = "ik-xi0";
  eq.A.assign(r + 1, MatrixXd::Zero(2, 2));
  eq.A[0] = (Matrix2d() << 0.0, 0.0, 0.0, 1.0).finished();
  eq.A[1] = (Matrix2d() << 0.0, 1.0, 1.0, 0.0).finished();
  eq.A[r] = (Matrix2d() << 1.0, 0.0, 0.0, 0.0).finished();
  return eq;
}

void EquilibrateMain(MepSystem &mep)
{
  auto &A = mep.equations.front().A;
  const Equilibration e = EquilibrateMatrices(A);
  for (auto &m : A)
  {
    m = e.row.asDiagonal() * m * e.col.asDiagonal();
  }
  mep.row_scale = e.row;
  mep.col_scale = e.col;
}

int ParameterOf(const MepSystem &mep, const RTerm &t)
{
  switch (t.term)
  {
    case CouplingTerm::IKappa:
      return mep.Find(ParamKind::IKappa, t.side);
    case CouplingTerm::KKappa:
      return mep.Find(ParamKind::XiKappa, t.side);
    case CouplingTerm::KGamma:
      return mep.Find(ParamKind::XiGamma, t.side);
  }
  return -1;
}

}  // namespace

MepSystem BuildMep(const CoupledSystem &sys, const MepOptions &options)
{
  const double L = sys.length_scale;
  MepSystem mep;
  mep.length_scale = L;
  mep.params.push_back({ParamKind::IK, {}});
  for (auto &p : SideParameters(sys, options))
  {
    mep.params.push_back(p);
  }
  mep.params.push_back({ParamKind::Xi0, {}});
  const int r = mep.Parameters();

  MepEquation main;
  main.label = "main";
  const Eigen::Index n = sys.Size();
  main.A.assign(r + 1, MatrixXd::Zero(n, n));
  main.A[0] = -sys.Ebar2 + (sys.omega * sys.omega) * sys.Mbar;
  main.A[1] = sys.Ebar1 / L;
  main.A[r] = sys.Ebar0 / (L * L);
  for (const auto &t : sys.r_terms)
  {
    const int j = ParameterOf(mep, t);
    main.A[j + 1] += t.matrix / (t.term == CouplingTerm::IKappa ? L : L * L);
  }
  mep.equations.push_back(std::move(main));
  for (int j = 1; j + 1 < r; j++)
  {
    mep.equations.push_back(AuxiliaryEquation(sys, mep.params, j));
  }
  mep.equations.push_back(WavenumberEquation(r));

  mep.dofs.resize(n);
  std::iota(mep.dofs.begin(), mep.dofs.end(), 0);
  mep.transformed_from = static_cast<int>(n);
  EquilibrateMain(mep);
  return mep;
}

bool IsotropicFluidPathApplicable(const CoupledSystem &sys)
{
  if (sys.stack.Mode() != DofMode::InPlane)
  {
    return false;
  }
  for (const auto &l : sys.stack.Layers())
  {
    if (!l.IsIsotropic())
    {
      return false;
    }
  }
  return std::all_of(sys.sides.begin(), sys.sides.end(), [](const CouplingSide &s) { return s.IsFluid(); });
}

namespace
{

MatrixXd Block(const MatrixXd &A, const std::vector<int> &rows, const std::vector<int> &cols)
{
  MatrixXd B(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); i++)
  {
    for (size_t j = 0; j < cols.size(); j++)
    {
      B(i, j) = A(rows[i], cols[j]);
    }
  }
  return B;
}

void RequireZero(const MatrixXd &A, const std::vector<int> &rows, const std::vector<int> &cols,
                 const char *what)
{
  if (rows.empty() || cols.empty())
  {
    return;
  }
  if (!(Block(A, rows, cols).array() == 0.0).all())
  {
    throw StructureError(std::string("isotropic fluid path: block ") + what + " is not zero");
  }
}

}  // namespace

MepSystem BuildMepIsotropicFluid(const CoupledSystem &sys, const MepOptions &options)
{
  if (sys.stack.Mode() != DofMode::InPlane)
  {
    throw UsageError("isotropic fluid path requires in-plane DOFs");
  }
  if (!std::all_of(sys.sides.begin(), sys.sides.end(), [](const CouplingSide &s) { return s.IsFluid(); }))
  {
    throw UsageError("isotropic fluid path requires fluid half-spaces only");
  }

  std::vector<int> X, Y, P;
  for (int node = 0; node < sys.stack.NodeCount(); node++)
  {
    if (int d = sys.stack.Dof(node, 0); d >= 0)
    {
      X.push_back(d);
    }
    if (int d = sys.stack.Dof(node, 1); d >= 0)
    {
      Y.push_back(d);
    }
  }
  for (const auto &s : sys.sides)
  {
    P.push_back(s.first_dof);
  }

  RequireZero(sys.Ebar0, X, Y, "E0 xy");
  RequireZero(sys.Ebar0, Y, X, "E0 yx");
  RequireZero(sys.Ebar1, X, X, "E1 xx");
  RequireZero(sys.Ebar1, Y, Y, "E1 yy");
  RequireZero(sys.Ebar2, X, Y, "E2 xy");
  RequireZero(sys.Ebar2, Y, X, "E2 yx");
  RequireZero(sys.Mbar, X, Y, "M xy");
  RequireZero(sys.Mbar, Y, X, "M yx");
  std::vector<int> all = X;
  all.insert(all.end(), Y.begin(), Y.end());
  all.insert(all.end(), P.begin(), P.end());
  std::vector<int> XY = X;
  XY.insert(XY.end(), Y.begin(), Y.end());
  RequireZero(sys.Ebar0, P, all, "E0 p*");
  RequireZero(sys.Ebar0, all, P, "E0 *p");
  RequireZero(sys.Ebar1, P, all, "E1 p*");
  RequireZero(sys.Ebar1, all, P, "E1 *p");
  RequireZero(sys.Ebar2, P, all, "E2 p*");
  RequireZero(sys.Ebar2, X, P, "E2 xp");
  RequireZero(sys.Mbar, all, P, "M *p");
  RequireZero(sys.Mbar, P, X, "M px");
  for (const auto &t : sys.r_terms)
  {
    RequireZero(t.matrix, XY, all, "R u*");
    RequireZero(t.matrix, P, XY, "R pu");
  }

  const double L = sys.length_scale;
  MepSystem mep;
  mep.length_scale = L;
  mep.isotropic_fluid_path = true;
  mep.params = SideParameters(sys, options);
  mep.params.push_back({ParamKind::Xi0, {}});
  const int r = mep.Parameters();

  const int nx = static_cast<int>(X.size());
  const int ny = static_cast<int>(Y.size());
  const int np = static_cast<int>(P.size());
  const int n = nx + ny + np;
  std::vector<int> YP = Y;
  YP.insert(YP.end(), P.begin(), P.end());

  MepEquation main;
  main.label = "main";
  main.A.assign(r + 1, MatrixXd::Zero(n, n));
  // The y and p rows are multiplied by ik L, the y and p unknowns replaced by ik L times themselves.
  MatrixXd A0 = (sys.omega * sys.omega) * Block(sys.Mbar, all, all);
  A0.topLeftCorner(nx, nx) -= Block(sys.Ebar2, X, X);
  A0.block(0, nx, nx, ny) += Block(sys.Ebar1, X, Y) / L;
  A0.block(nx, nx, ny, ny + np) -= Block(sys.Ebar2, Y, YP);
  main.A[0] = A0;
  MatrixXd &Ax = main.A[r];
  Ax.topLeftCorner(nx, nx) = Block(sys.Ebar0, X, X) / (L * L);
  Ax.block(nx, 0, ny, nx) = Block(sys.Ebar1, Y, X) / L;
  Ax.block(nx, nx, ny, ny) = Block(sys.Ebar0, Y, Y) / (L * L);
  for (const auto &t : sys.r_terms)
  {
    const int j = ParameterOf(mep, t);
    main.A[j + 1] += Block(t.matrix, all, all) / L;
  }
  mep.equations.push_back(std::move(main));
  for (int j = 0; j + 1 < r; j++)
  {
    mep.equations.push_back(AuxiliaryEquation(sys, mep.params, j));
  }
  mep.dofs = all;
  mep.transformed_from = nx;
  EquilibrateMain(mep);
  return mep;
}

namespace
{

bool IsZero(const MatrixXd &A)
{
  return (A.array() == 0.0).all();
}

// out += a * (A kron B)
void AddKronecker(MatrixXd &out, double a, const MatrixXd &A, const MatrixXd &B)
{
  const Eigen::Index m = B.rows();
  for (Eigen::Index j = 0; j < A.cols(); j++)
  {
    for (Eigen::Index i = 0; i < A.rows(); i++)
    {
      if (A(i, j) != 0.0)
      {
        out.block(i * m, j * m, m, m).noalias() += (a * A(i, j)) * B;
      }
    }
  }
}

//
// Kronecker determinant of rows `row..r-1` against the unused column
// positions, expanded along the first remaining row. `column` maps a
// position to the matrix index within each equation.
//
class KroneckerDeterminant
{
public:
  KroneckerDeterminant(const MepSystem &mep, std::vector<int> column) : mep(mep), column(std::move(column)) {}

  const MatrixXd &Minor(int row, unsigned used)
  {
    auto it = memo.find(used);
    if (it != memo.end())
    {
      return it->second;
    }
    const int r = mep.Parameters();
    Eigen::Index size = 1;
    for (int i = row; i < r; i++)
    {
      size *= mep.equations[i].Size();
    }
    MatrixXd D = MatrixXd::Zero(size, size);
    if (row == r)
    {
      D(0, 0) = 1.0;
    }
    else
    {
      int free_before = 0;
      for (int pos = 0; pos < r; pos++)
      {
        if (used & (1u << pos))
        {
          continue;
        }
        const double sign = (free_before++ % 2 == 0) ? 1.0 : -1.0;
        const MatrixXd &A = mep.equations[row].A[column[pos]];
        if (IsZero(A))
        {
          continue;
        }
        const MatrixXd &sub = Minor(row + 1, used | (1u << pos));
        if (IsZero(sub))
        {
          continue;
        }
        AddKronecker(D, sign, A, sub);
      }
    }
    return memo.emplace(used, std::move(D)).first->second;
  }

private:
  const MepSystem &mep;
  std::vector<int> column;
  std::map<unsigned, MatrixXd> memo;
};

}  // namespace

std::vector<MatrixXd> OperatorDeterminants(const MepSystem &mep, Eigen::Index max_size)
{
  const int r = mep.Parameters();
  const Eigen::Index N = mep.DeterminantSize();
  if (N > max_size)
  {
    throw SizeError("operator determinants of size " + std::to_string(N) + " exceed the limit " +
                    std::to_string(max_size));
  }
  std::vector<MatrixXd> delta;
  for (int d = 0; d <= r; d++)
  {
    std::vector<int> column(r);
    std::iota(column.begin(), column.end(), 1);
    if (d > 0)
    {
      column[d - 1] = 0;
    }
    KroneckerDeterminant det(mep, column);
    delta.push_back(d == 0 ? det.Minor(0, 0u) : MatrixXd(-det.Minor(0, 0u)));
  }
  return delta;
}

namespace
{

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Real matrix times complex matrix without promoting the real one.
MatrixXcd Times(const MatrixXd &A, const MatrixXcd &Z)
{
  MatrixXcd out(A.rows(), Z.cols());
  out.real() = A * Z.real();
  out.imag() = A * Z.imag();
  return out;
}

std::vector<std::vector<Eigen::Index>> Clusters(const VectorXcd &mu, const std::vector<Eigen::Index> &finite,
                                                double tol)
{
  double scale = 1.0;
  for (auto i : finite)
  {
    scale = std::max(scale, std::abs(mu(i)));
  }
  std::vector<Eigen::Index> order = finite;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return mu(a).real() < mu(b).real(); });
  std::vector<int> parent(order.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int i) {
    while (parent[i] != i)
    {
      i = parent[i] = parent[parent[i]];
    }
    return i;
  };
  for (size_t a = 0; a < order.size(); a++)
  {
    for (size_t b = a + 1; b < order.size(); b++)
    {
      if (mu(order[b]).real() - mu(order[a]).real() > tol * scale)
      {
        break;
      }
      if (std::abs(mu(order[b]) - mu(order[a])) <= tol * scale)
      {
        parent[root(static_cast<int>(b))] = root(static_cast<int>(a));
      }
    }
  }
  std::map<int, std::vector<Eigen::Index>> groups;
  for (size_t a = 0; a < order.size(); a++)
  {
    groups[root(static_cast<int>(a))].push_back(order[a]);
  }
  std::vector<std::vector<Eigen::Index>> out;
  for (auto &g : groups)
  {
    std::sort(g.second.begin(), g.second.end());
    out.push_back(std::move(g.second));
  }
  return out;
}

}  // namespace

ShiftedSolution SolveShifted(const std::vector<MatrixXd> &delta, const ShiftOptions &options)
{
  const int r = static_cast<int>(delta.size()) - 1;
  if (r < 1)
  {
    throw UsageError("SolveShifted needs Delta_0 and at least one more determinant");
  }
  const Eigen::Index N = delta[0].rows();
  std::mt19937_64 rng(options.seed == 0 ? 0x9e3779b97f4a7c15ull : options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const double norm0 = delta[0].norm();
  const double normr = delta[r].norm();
  const double base = normr > 0.0 ? (norm0 > 0.0 ? norm0 / normr : 1.0) : 0.0;
  if (base == 0.0)
  {
    throw BackendError("SolveShifted: the last operator determinant is zero");
  }

  double s = 0.0;
  MatrixXd B;
  bool ok = false;
  for (int attempt = 0; attempt <= options.max_retries && !ok; attempt++)
  {
    double factor = 1.0;
    if (options.seed != 0 || attempt > 0)
    {
      factor = std::exp2(2.0 * uniform(rng) - 1.0);
    }
    s = factor * base;
    B = delta[0] + s * delta[r];
    ok = linalg::ReciprocalCondition(B) > 1e-13;
  }
  if (!ok)
  {
    throw BackendError("SolveShifted: Delta_0 + s Delta_r is singular for every shift tried");
  }

  // A generic combination separates eigenvalues that coincide in xi0 alone.
  const double normB = B.norm();
  MatrixXd C = MatrixXd::Zero(N, N);
  for (int i = 1; i <= r; i++)
  {
    const double ni = delta[i].norm();
    const double c = 0.5 + uniform(rng);
    if (ni > 0.0)
    {
      C += (c * normB / ni) * delta[i];
    }
  }
  const linalg::GeneralizedEigen ge = linalg::GeneralizedEig(C, B, true);

  std::vector<Eigen::Index> finite;
  for (Eigen::Index j = 0; j < N; j++)
  {
    if (!ge.IsInfinite(j, 1e-13))
    {
      finite.push_back(j);
    }
  }
  VectorXcd mu = VectorXcd::Zero(N);
  for (auto j : finite)
  {
    mu(j) = ge.Eigenvalue(j);
  }

  // Delta_i Z and B Z for all right vectors at once.
  std::vector<MatrixXcd> DZ;
  for (int i = 1; i <= r; i++)
  {
    DZ.push_back(Times(delta[i], ge.right));
  }
  const MatrixXcd BZ = Times(B, ge.right);

  ShiftedSolution out;
  out.shift = s;
  auto emit = [&](VectorXcd lt, VectorXcd z, int multiplicity) {
    const complex den = 1.0 - s * lt(r - 1);
    if (std::abs(den) < options.infinite_tol)
    {
      out.discarded_infinite++;
      return;
    }
    out.tuples.push_back({lt / den, std::move(z), multiplicity});
  };

  for (const auto &cluster : Clusters(mu, finite, options.cluster_tol))
  {
    const int m = static_cast<int>(cluster.size());
    if (m == 1)
    {
      const Eigen::Index j = cluster.front();
      const VectorXcd w = ge.left.col(j);
      complex den = w.dot(BZ.col(j));
      const bool use_left = std::abs(den) > 1e-12 * normB;
      if (!use_left)
      {
        den = BZ.col(j).squaredNorm();
      }
      VectorXcd lt(r);
      for (int i = 0; i < r; i++)
      {
        lt(i) = (use_left ? w.dot(DZ[i].col(j)) : BZ.col(j).dot(DZ[i].col(j))) / den;
      }
      emit(lt, ge.right.col(j), 1);
      continue;
    }
    // Project onto the cluster and diagonalise a fresh combination there.
    MatrixXcd W(N, m), Z(N, m), G(m, m);
    for (int a = 0; a < m; a++)
    {
      W.col(a) = ge.left.col(cluster[a]);
      Z.col(a) = ge.right.col(cluster[a]);
    }
    for (int a = 0; a < m; a++)
    {
      for (int b = 0; b < m; b++)
      {
        G(a, b) = W.col(a).dot(BZ.col(cluster[b]));
      }
    }
    const auto Ginv = G.completeOrthogonalDecomposition();
    std::vector<MatrixXcd> Mi;
    MatrixXcd H = MatrixXcd::Zero(m, m);
    for (int i = 0; i < r; i++)
    {
      MatrixXcd WD(m, m);
      for (int a = 0; a < m; a++)
      {
        for (int b = 0; b < m; b++)
        {
          WD(a, b) = W.col(a).dot(DZ[i].col(cluster[b]));
        }
      }
      Mi.push_back(Ginv.solve(WD));
      H += (0.5 + uniform(rng)) * Mi.back();
    }
    Eigen::ComplexEigenSolver<MatrixXcd> es(H);
    const MatrixXcd Y = es.eigenvectors();
    const auto Yinv = Y.fullPivLu();
    for (int a = 0; a < m; a++)
    {
      VectorXcd lt(r);
      for (int i = 0; i < r; i++)
      {
        lt(i) = Yinv.solve(Mi[i] * Y.col(a))(a);
      }
      emit(lt, Z * Y.col(a), m);
    }
  }
  return out;
}

namespace
{

double Certificate(const MepEquation &eq, const VectorXcd &lambda)
{
  MatrixXcd T = eq.A[0].cast<complex>();
  double scale = eq.A[0].norm();
  for (Eigen::Index j = 0; j < lambda.size(); j++)
  {
    const MatrixXd &A = eq.A[j + 1];
    if (IsZero(A))
    {
      continue;
    }
    T += lambda(j) * A.cast<complex>();
    scale = std::max(scale, std::abs(lambda(j)) * A.norm());
  }
  return scale > 0.0 ? linalg::SmallestSingularValue(T) / scale : 0.0;
}

// Main-equation block of z with the largest norm, in CoupledSystem DOF order.
VectorXcd MainVector(const MepSystem &mep, const VectorXcd &z, complex ikL)
{
  const Eigen::Index n = mep.MainSize();
  const Eigen::Index m = z.size() / n;
  Eigen::Map<const Eigen::Matrix<complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> Z(z.data(), n, m);
  Eigen::Index best = 0;
  Z.colwise().norm().maxCoeff(&best);
  VectorXcd y = Z.col(best);
  VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; i++)
  {
    complex x = mep.col_scale(i) * y(i);
    if (i >= mep.transformed_from)
    {
      x /= ikL;
    }
    v(mep.dofs[i]) = x;
  }
  // Fix the phase so the largest entry is real and positive.
  Eigen::Index imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (std::abs(v(imax)) > 0.0)
  {
    v *= std::abs(v(imax)) / v(imax);
  }
  return v.normalized();
}

EigenTuple Recover(const RawTuple &t, const MepSystem &mep, const CoupledSystem &sys, const Equilibration &eq,
                   complex k)
{
  const double L = mep.length_scale;
  const complex I(0.0, 1.0);
  EigenTuple e;
  e.k = k;
  e.multiplicity = t.multiplicity;
  const int r = mep.Parameters();
  const complex xi0_hat = t.lambda(r - 1);
  e.xi0 = xi0_hat / (L * L);
  const complex kL = k * L;
  e.xi0_error = std::abs(xi0_hat + kL * kL) / std::max(1.0, std::norm(kL));

  for (int j = 0; j < r; j++)
  {
    const MepParameter &p = mep.params[j];
    for (Side side : p.sides)
    {
      const CouplingSide &s = *sys.Find(side);
      if (p.kind == ParamKind::IKappa)
      {
        e.w.Kappa(side) = s.ParameterSign() * (-I * t.lambda(j) / L);
      }
      else if (p.kind == ParamKind::XiKappa)
      {
        e.w.Kappa(side) = t.lambda(j) / (kL * L);
      }
      else if (p.kind == ParamKind::XiGamma)
      {
        e.w.Gamma(side) = t.lambda(j) / (kL * L);
      }
    }
  }
  double worst = 0.0;
  for (const auto &s : sys.sides)
  {
    const complex ky = e.w.Kappa(s.side);
    worst = std::max(worst, std::abs(ky * ky + k * k - s.kappa * s.kappa) / (s.kappa * s.kappa));
    if (s.IsSolid())
    {
      const complex gy = e.w.Gamma(s.side);
      worst = std::max(worst, std::abs(gy * gy + k * k - s.gamma * s.gamma) / (s.gamma * s.gamma));
    }
  }
  e.identity_error = std::isfinite(worst) ? worst : std::numeric_limits<double>::infinity();

  for (const auto &eq : mep.equations)
  {
    e.certificates.push_back(Certificate(eq, t.lambda));
  }
  e.v = MainVector(mep, t.z, I * kL);
  e.residual = NlevpResidual(sys, k, e.w, e.v, eq);
  if (!std::isfinite(e.residual))
  {
    e.residual = std::numeric_limits<double>::infinity();
  }
  return e;
}

}  // namespace

std::vector<EigenTuple> RecoverTuples(const ShiftedSolution &raw, const MepSystem &mep, const CoupledSystem &sys)
{
  const double L = mep.length_scale;
  const complex I(0.0, 1.0);
  const int r = mep.Parameters();
  const Equilibration eq = Equilibrate(sys);
  std::vector<EigenTuple> out;
  for (const auto &t : raw.tuples)
  {
    if (!t.lambda.allFinite())
    {
      continue;
    }
    if (mep.isotropic_fluid_path)
    {
      // Only k^2 is known: both signs of k are modes.
      const complex k = std::sqrt(-t.lambda(r - 1)) / L;
      out.push_back(Recover(t, mep, sys, eq, k));
      out.push_back(Recover(t, mep, sys, eq, -k));
    }
    else
    {
      out.push_back(Recover(t, mep, sys, eq, -I * t.lambda(mep.Find(ParamKind::IK)) / L));
    }
  }
  return out;
}

bool PassesCertificates(const EigenTuple &t, const CertifyOptions &options)
{
  if (!(t.residual <= options.residual_tol && t.xi0_error <= options.xi0_tol &&
        t.identity_error <= options.identity_tol))
  {
    return false;
  }
  return std::all_of(t.certificates.begin(), t.certificates.end(),
                     [&](double c) { return c <= options.certificate_tol; });
}

std::vector<EigenTuple> ExtractModes(const ShiftedSolution &raw, const MepSystem &mep, const CoupledSystem &sys,
                                     const CertifyOptions &options)
{
  std::vector<EigenTuple> all = RecoverTuples(raw, mep, sys);
  std::vector<EigenTuple> out;
  for (auto &t : all)
  {
    if (PassesCertificates(t, options))
    {
      out.push_back(std::move(t));
    }
  }
  return out;
}

std::vector<EigenTuple> SolveCoupled(const CoupledSystem &sys, const SolveOptions &options)
{
  const MepSystem mep = options.isotropic_fluid_path && IsotropicFluidPathApplicable(sys)
                            ? BuildMepIsotropicFluid(sys, options.mep)
                            : BuildMep(sys, options.mep);
  const auto delta = OperatorDeterminants(mep, options.max_size);
  return ExtractModes(SolveShifted(delta, options.shift), mep, sys, options.certify);
}

}  // namespace leaky
