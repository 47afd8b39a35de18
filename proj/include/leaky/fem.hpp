// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_FEM_HPP
#define LEAKY_FEM_HPP

#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "leaky/materials.hpp"
#include "leaky/types.hpp"

namespace leaky
{

//
// Gauss-Lobatto-Legendre points of degree p on [-1, 1]: the endpoints and the
// roots of P_p'. Sorted ascending and symmetric about zero.
//
std::vector<double> GaussLobattoNodes(int p);

struct Quadrature
{
  std::vector<double> points;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1], exact for polynomials of degree 2n-1.
Quadrature GaussLegendre(int n);

//
// Lagrange polynomials on an arbitrary set of distinct nodes, evaluated in
// barycentric form.
//
class LagrangeBasis
{
public:
  explicit LagrangeBasis(std::vector<double> nodes);

  int Size() const { return static_cast<int>(nodes.size()); }
  const std::vector<double> &Nodes() const { return nodes; }

  Eigen::VectorXd Values(double x) const;
  Eigen::VectorXd Derivatives(double x) const;

private:
  std::vector<double> nodes;
  std::vector<double> weights;
};

struct Layer
{
  std::variant<IsotropicSolid, AnisotropicSolid> material;
  double thickness;  // m
  int order;         // polynomial degree of the single element spanning the layer

  double Density() const;
  AnisotropicBlocks Blocks() const;
  bool IsIsotropic() const { return std::holds_alternative<IsotropicSolid>(material); }
};

//
// Layers ordered bottom to top, each discretised by one spectral element with
// nodes at the mapped Gauss-Lobatto points. Interface nodes are shared, so the
// displacement is continuous across layers. Nodal DOFs are numbered node by node
// (bottom to top), components (u_x, u_y[, u_z]) within a node. Clamped surfaces
// drop their DOFs from the numbering.
//
class LayerStack
{
public:
  LayerStack(std::vector<Layer> layers, DofMode mode, double y_bottom = 0.0);

  // Homogeneous Dirichlet condition on a surface (default is traction free).
  LayerStack &Clamp(Side side);

  const std::vector<Layer> &Layers() const { return layers; }
  DofMode Mode() const { return mode; }
  int Components() const { return ComponentsPerNode(mode); }
  bool IsClamped(Side side) const { return side == Side::Top ? clamp_top : clamp_bottom; }

  int NodeCount() const { return static_cast<int>(y.size()); }
  const std::vector<double> &NodeCoordinates() const { return y; }
  double YBottom() const { return y.front(); }
  double YTop() const { return y.back(); }
  double Thickness() const { return y.back() - y.front(); }

  // Global node index of the first node of layer l.
  int FirstNode(int l) const { return first_node[l]; }
  int SurfaceNode(Side side) const { return side == Side::Top ? NodeCount() - 1 : 0; }

  int DofCount() const { return dof_count; }
  // Global DOF index of (node, component), or -1 for a clamped DOF.
  int Dof(int node, int component) const { return dof[node * Components() + component]; }

  // Layer containing y (interfaces belong to the layer above), -1 if outside.
  int LayerAt(double y) const;

  // Shape function values / y-derivatives of layer l at y, with node indices.
  struct ShapeEval
  {
    int layer;
    std::vector<int> nodes;
    Eigen::VectorXd values;
    Eigen::VectorXd derivatives;
  };
  ShapeEval Shape(double y) const;

private:
  void Number();

  std::vector<Layer> layers;
  DofMode mode;
  std::vector<double> y;
  std::vector<int> first_node;
  std::vector<int> dof;
  int dof_count = 0;
  bool clamp_bottom = false, clamp_top = false;
};

//
// Matrices of the free-plate pencil (-k^2 E0 + i k E1 - E2 + w^2 M) u = 0.
// All are real; E1 is skew-symmetric.
//
struct FemMatrices
{
  Eigen::MatrixXd E0, E1, E2, M;
  double length_scale = 1.0;  // characteristic length (m) used for scaling solves

  Eigen::Index Size() const { return M.rows(); }
};

// Element matrices of a single layer on its own interval (no clamping).
FemMatrices ElementMatrices(const Layer &layer, DofMode mode);

FemMatrices AssembleStack(const LayerStack &stack);

// Recommended element degree for frequencies up to omega_max.
int ChooseOrder(const IsotropicSolid &mat, double thickness, double omega_max);

struct FreeMode
{
  complex k;           // rad/m
  Eigen::VectorXcd u;  // unit-norm nodal displacement
};

// All 2 n_u wavenumbers of the free-plate quadratic pencil at omega.
std::vector<FreeMode> SolveFreePlate(const FemMatrices &fem, double omega);

// ||(-k^2 E0 + i k E1 - E2 + w^2 M) u|| / (||w^2 M|| ||u||).
double FreePlateResidual(const FemMatrices &fem, double omega, complex k,
                         const Eigen::VectorXcd &u);

}  // namespace leaky

#endif  // LEAKY_FEM_HPP
