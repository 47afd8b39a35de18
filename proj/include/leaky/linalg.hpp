// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef LEAKY_LINALG_HPP
#define LEAKY_LINALG_HPP

#include <complex>

#include <Eigen/Dense>

namespace leaky::linalg
{

using complex = std::complex<double>;

// The LAPACK backend keeps no global state and may be called concurrently.
inline constexpr bool kBackendReentrant = true;

//
// Result of a dense generalized eigendecomposition A v = lambda B v.
//
// Eigenvalues are kept in homogeneous form (alpha, beta) so that infinite
// eigenvalues (beta == 0) can be reported without overflow. Right vectors
// satisfy A v = lambda B v, left vectors w^H A = lambda w^H B. Vectors are
// normalised to unit 2-norm.
//
struct GeneralizedEigen
{
  Eigen::VectorXcd alpha;
  Eigen::VectorXcd beta;
  Eigen::MatrixXcd right;
  Eigen::MatrixXcd left;  // empty unless requested

  Eigen::Index Size() const { return alpha.size(); }
  bool IsInfinite(Eigen::Index i, double tol = 0.0) const;
  complex Eigenvalue(Eigen::Index i) const { return alpha(i) / beta(i); }
};

// Real pencil (LAPACK dggev). Complex-conjugate pairs are expanded.
GeneralizedEigen GeneralizedEig(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B,
                                bool want_left);

// Complex pencil (LAPACK zggev).
GeneralizedEigen GeneralizedEig(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B,
                                bool want_left);

double SmallestSingularValue(const Eigen::MatrixXd &A);
double SmallestSingularValue(const Eigen::MatrixXcd &A);

// Dense LU solve; throws BackendError if A is singular to working precision.
Eigen::VectorXd Solve(const Eigen::MatrixXd &A, const Eigen::VectorXd &b);
Eigen::VectorXcd Solve(const Eigen::MatrixXcd &A, const Eigen::VectorXcd &b);

// Reciprocal condition estimate (1-norm) from an LU factorisation.
double ReciprocalCondition(const Eigen::MatrixXd &A);

}  // namespace leaky::linalg

#endif  // LEAKY_LINALG_HPP
