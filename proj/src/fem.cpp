// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/fem.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "leaky/errors.hpp"
#include "leaky/linalg.hpp"

namespace leaky
{

namespace
{

// Legendre P_n(x) and P_{n-1}(x) by the three-term recurrence.
std::pair<double, double> Legendre(int n, double x)
{
  double p0 = 1.0, p1 = x;
  if (n == 0)
  {
    return {1.0, 0.0};
  }
  for (int k = 2; k <= n; k++)
  {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, p0};
}

}  // namespace

std::vector<double> GaussLobattoNodes(int p)
{
  if (p < 1)
  {
    throw DomainError("Gauss-Lobatto nodes require degree p >= 1");
  }
  const int n = p + 1;
  std::vector<double> x(n);
  for (int i = 0; i < n; i++)
  {
    // Chebyshev-Gauss-Lobatto initial guess.
    double xi = -std::cos(std::numbers::pi * i / p);
    if (i > 0 && i < p)
    {
      for (int it = 0; it < 100; it++)
      {
        // Newton on (1 - x^2) P_p'(x) = p (P_{p-1} - x P_p).
        const auto [pn, pm] = Legendre(p, xi);
        const double f = pm - xi * pn;
        const double df = -(p + 1.0) * pn;
        const double dx = f / df;
        xi -= dx;
        if (std::abs(dx) < 1e-16)
        {
          break;
        }
      }
    }
    x[i] = xi;
  }
  std::sort(x.begin(), x.end());
  for (int i = 0; i < n / 2; i++)
  {
    const double s = 0.5 * (x[n - 1 - i] - x[i]);
    x[i] = -s;
    x[n - 1 - i] = s;
  }
  if (n % 2 == 1)
  {
    x[n / 2] = 0.0;
  }
  return x;
}

Quadrature GaussLegendre(int n)
{
  if (n < 1)
  {
    throw DomainError("Gauss-Legendre rule requires n >= 1");
  }
  Quadrature q;
  q.points.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; i++)
  {
    double x = -std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; it++)
    {
      const auto [pn, pm] = Legendre(n, x);
      dp = n * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
      {
        break;
      }
    }
    const auto [pn, pm] = Legendre(n, x);
    dp = n * (x * pn - pm) / (x * x - 1.0);
    q.points[i] = x;
    q.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

LagrangeBasis::LagrangeBasis(std::vector<double> nodes_) : nodes(std::move(nodes_))
{
  const int n = Size();
  weights.assign(n, 1.0);
  for (int j = 0; j < n; j++)
  {
    for (int k = 0; k < n; k++)
    {
      if (k != j)
      {
        weights[j] /= (nodes[j] - nodes[k]);
      }
    }
  }
}

Eigen::VectorXd LagrangeBasis::Values(double x) const
{
  const int n = Size();
  Eigen::VectorXd l(n);
  for (int j = 0; j < n; j++)
  {
    if (x == nodes[j])
    {
      l.setZero();
      l(j) = 1.0;
      return l;
    }
  }
  double sum = 0.0;
  for (int j = 0; j < n; j++)
  {
    l(j) = weights[j] / (x - nodes[j]);
    sum += l(j);
  }
  return l / sum;
}

Eigen::VectorXd LagrangeBasis::Derivatives(double x) const
{
  // l_j'(x) = l_j(x) * sum_{k != j} 1 / (x - x_k), with the node case handled
  // through the differentiation matrix D_ij = (w_j / w_i) / (x_i - x_j).
  const int n = Size();
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; i++)
  {
    if (x == nodes[i])
    {
      double diag = 0.0;
      for (int j = 0; j < n; j++)
      {
        if (j != i)
        {
          d(j) = (weights[j] / weights[i]) / (nodes[i] - nodes[j]);
          diag -= d(j);
        }
      }
      d(i) = diag;
      return d;
    }
  }
  const Eigen::VectorXd l = Values(x);
  for (int j = 0; j < n; j++)
  {
    double s = 0.0;
    for (int k = 0; k < n; k++)
    {
      if (k != j)
      {
        s += 1.0 / (x - nodes[k]);
      }
    }
    d(j) = l(j) * s;
  }
  return d;
}

double Layer::Density() const
{
  if (const auto *iso = std::get_if<IsotropicSolid>(&material))
  {
    return iso->Density();
  }
  return std::get<AnisotropicSolid>(material).rho;
}

AnisotropicBlocks Layer::Blocks() const
{
  if (const auto *iso = std::get_if<IsotropicSolid>(&material))
  {
    return StiffnessBlocks(*iso);
  }
  return std::get<AnisotropicSolid>(material).blocks;
}

LayerStack::LayerStack(std::vector<Layer> layers_, DofMode mode_, double y_bottom)
  : layers(std::move(layers_)), mode(mode_)
{
  if (layers.empty())
  {
    throw DomainError("layer stack needs at least one layer");
  }
  y.push_back(y_bottom);
  double y0 = y_bottom;
  for (const auto &layer : layers)
  {
    if (!(layer.thickness > 0.0))
    {
      throw DomainError("layer thickness must be positive");
    }
    if (layer.order < 1)
    {
      throw DomainError("layer order must be >= 1");
    }
    if (const auto *aniso = std::get_if<AnisotropicSolid>(&layer.material))
    {
      aniso->blocks.Validate();
      if (!(aniso->rho > 0.0))
      {
        throw DomainError("layer density must be positive");
      }
    }
    first_node.push_back(static_cast<int>(y.size()) - 1);
    const auto xi = GaussLobattoNodes(layer.order);
    for (int i = 1; i <= layer.order; i++)
    {
      y.push_back(y0 + 0.5 * (xi[i] + 1.0) * layer.thickness);
    }
    y0 += layer.thickness;
    y.back() = y0;
  }
  Number();
}

LayerStack &LayerStack::Clamp(Side side)
{
  (side == Side::Top ? clamp_top : clamp_bottom) = true;
  Number();
  return *this;
}

void LayerStack::Number()
{
  const int nc = Components();
  dof.assign(y.size() * nc, -1);
  dof_count = 0;
  for (int node = 0; node < NodeCount(); node++)
  {
    const bool clamped = (node == 0 && clamp_bottom) || (node == NodeCount() - 1 && clamp_top);
    for (int c = 0; c < nc; c++)
    {
      if (!clamped)
      {
        dof[node * nc + c] = dof_count++;
      }
    }
  }
}

int LayerStack::LayerAt(double yq) const
{
  const double tol = 1e-12 * Thickness();
  if (yq < YBottom() - tol || yq > YTop() + tol)
  {
    return -1;
  }
  for (int l = static_cast<int>(layers.size()) - 1; l >= 0; l--)
  {
    if (yq >= y[first_node[l]] - tol)
    {
      return l;
    }
  }
  return 0;
}

LayerStack::ShapeEval LayerStack::Shape(double yq) const
{
  const int l = LayerAt(yq);
  if (l < 0)
  {
    throw DomainError("point lies outside the plate");
  }
  const auto &layer = layers[l];
  const double ya = y[first_node[l]];
  const double xi = std::clamp(2.0 * (yq - ya) / layer.thickness - 1.0, -1.0, 1.0);
  LagrangeBasis basis(GaussLobattoNodes(layer.order));
  ShapeEval out;
  out.layer = l;
  for (int i = 0; i <= layer.order; i++)
  {
    out.nodes.push_back(first_node[l] + i);
  }
  out.values = basis.Values(xi);
  out.derivatives = basis.Derivatives(xi) * (2.0 / layer.thickness);
  return out;
}

FemMatrices ElementMatrices(const Layer &layer, DofMode mode)
{
  const int nc = ComponentsPerNode(mode);
  const int nn = layer.order + 1;
  const AnisotropicBlocks C = layer.Blocks();
  const Eigen::MatrixXd Cxx = C.Cxx.topLeftCorner(nc, nc), Cyy = C.Cyy.topLeftCorner(nc, nc),
                        Cxy = C.Cxy.topLeftCorner(nc, nc), Cyx = C.Cyx.topLeftCorner(nc, nc);
  const double rho = layer.Density();
  const double jac = 0.5 * layer.thickness;

  LagrangeBasis basis(GaussLobattoNodes(layer.order));
  const Quadrature quad = GaussLegendre(nn);

  FemMatrices e;
  const int n = nn * nc;
  e.E0 = e.E1 = e.E2 = e.M = Eigen::MatrixXd::Zero(n, n);
  e.length_scale = layer.thickness;
  for (int q = 0; q < nn; q++)
  {
    const Eigen::VectorXd N = basis.Values(quad.points[q]);
    const Eigen::VectorXd dN = basis.Derivatives(quad.points[q]) / jac;
    const double w = quad.weights[q] * jac;
    for (int a = 0; a < nn; a++)
    {
      for (int b = 0; b < nn; b++)
      {
        auto blk = [&](Eigen::MatrixXd &m) { return m.block(a * nc, b * nc, nc, nc); };
        blk(e.E0) += w * N(a) * N(b) * Cxx;
        blk(e.E1) += w * (N(a) * dN(b) * Cyx - dN(a) * N(b) * Cxy);
        blk(e.E2) += w * dN(a) * dN(b) * Cyy;
        blk(e.M).diagonal().array() += w * rho * N(a) * N(b);
      }
    }
  }
  // Remove round-off asymmetry so the symmetry holds exactly.
  e.E0 = 0.5 * (e.E0 + e.E0.transpose()).eval();
  e.E1 = 0.5 * (e.E1 - e.E1.transpose()).eval();
  e.E2 = 0.5 * (e.E2 + e.E2.transpose()).eval();
  e.M = 0.5 * (e.M + e.M.transpose()).eval();
  return e;
}

FemMatrices AssembleStack(const LayerStack &stack)
{
  const int n = stack.DofCount();
  const int nc = stack.Components();
  FemMatrices g;
  g.E0 = g.E1 = g.E2 = g.M = Eigen::MatrixXd::Zero(n, n);
  g.length_scale = stack.Thickness();
  const auto &layers = stack.Layers();
  for (std::size_t l = 0; l < layers.size(); l++)
  {
    const FemMatrices e = ElementMatrices(layers[l], stack.Mode());
    const int nn = layers[l].order + 1;
    std::vector<int> map(nn * nc);
    for (int a = 0; a < nn; a++)
    {
      for (int c = 0; c < nc; c++)
      {
        map[a * nc + c] = stack.Dof(stack.FirstNode(static_cast<int>(l)) + a, c);
      }
    }
    for (int i = 0; i < nn * nc; i++)
    {
      if (map[i] < 0)
      {
        continue;
      }
      for (int j = 0; j < nn * nc; j++)
      {
        if (map[j] < 0)
        {
          continue;
        }
        g.E0(map[i], map[j]) += e.E0(i, j);
        g.E1(map[i], map[j]) += e.E1(i, j);
        g.E2(map[i], map[j]) += e.E2(i, j);
        g.M(map[i], map[j]) += e.M(i, j);
      }
    }
  }
  return g;
}

int ChooseOrder(const IsotropicSolid &mat, double thickness, double omega_max)
{
  if (!(thickness > 0.0) || !(omega_max > 0.0))
  {
    throw DomainError("ChooseOrder requires positive thickness and frequency");
  }
  const double a0 = thickness * omega_max / mat.TransverseSpeed();
  return static_cast<int>(std::ceil(a0 / 2.0 + 3.0));
}

std::vector<FreeMode> SolveFreePlate(const FemMatrices &fem, double omega)
{
  if (!(omega > 0.0))
  {
    throw DomainError("SolveFreePlate requires omega > 0");
  }
  // Work with lambda = i k L so all three coefficient matrices are O(|E2|).
  const double L = fem.length_scale;
  const Eigen::Index n = fem.Size();
  const Eigen::MatrixXd Q2 = fem.E0 / (L * L);
  const Eigen::MatrixXd Q1 = fem.E1 / L;
  const Eigen::MatrixXd Q0 = omega * omega * fem.M - fem.E2;
  const double alpha = Q2.norm();

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n), B = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  A.topRightCorner(n, n) = alpha * Eigen::MatrixXd::Identity(n, n);
  A.bottomLeftCorner(n, n) = -Q0;
  A.bottomRightCorner(n, n) = -Q1;
  B.topLeftCorner(n, n) = alpha * Eigen::MatrixXd::Identity(n, n);
  B.bottomRightCorner(n, n) = Q2;

  const auto eig = linalg::GeneralizedEig(A, B, false);
  std::vector<FreeMode> modes;
  modes.reserve(2 * n);
  for (Eigen::Index j = 0; j < eig.Size(); j++)
  {
    if (eig.IsInfinite(j, 1e-14))
    {
      continue;
    }
    const complex lambda = eig.Eigenvalue(j);
    // Take whichever companion block is better conditioned as the eigenvector.
    Eigen::VectorXcd u = std::abs(lambda) > 1.0 ? Eigen::VectorXcd(eig.right.col(j).tail(n))
                                                : Eigen::VectorXcd(eig.right.col(j).head(n));
    u.normalize();
    modes.push_back({complex(0.0, -1.0) * lambda / L, u});
  }
  return modes;
}

double FreePlateResidual(const FemMatrices &fem, double omega, complex k, const Eigen::VectorXcd &u)
{
  const complex ik = complex(0.0, 1.0) * k;
  const Eigen::VectorXcd r = (-k * k) * (fem.E0.cast<complex>() * u) +
                             ik * (fem.E1.cast<complex>() * u) -
                             fem.E2.cast<complex>() * u + (omega * omega) * (fem.M.cast<complex>() * u);
  return r.norm() / ((omega * omega) * fem.M.norm() * u.norm());
}

}  // namespace leaky
