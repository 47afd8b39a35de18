// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include "leaky/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <lapacke.h>

#include "leaky/errors.hpp"

namespace leaky::linalg
{

bool GeneralizedEigen::IsInfinite(Eigen::Index i, double tol) const
{
  return std::abs(beta(i)) <= tol * std::abs(alpha(i));
}

namespace
{

void Normalize(Eigen::MatrixXcd &V)
{
  for (Eigen::Index j = 0; j < V.cols(); j++)
  {
    const double nrm = V.col(j).norm();
    if (nrm > 0.0)
    {
      V.col(j) /= nrm;
    }
  }
}

// dggev stores a complex pair (j, j+1) as re = V(:, j), im = V(:, j+1).
Eigen::MatrixXcd ExpandRealVectors(const Eigen::MatrixXd &V, const Eigen::VectorXd &alphai)
{
  const Eigen::Index n = V.rows();
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index j = 0; j < n; j++)
  {
    if (alphai(j) == 0.0)
    {
      out.col(j) = V.col(j).cast<complex>();
    }
    else
    {
      out.col(j).real() = V.col(j);
      out.col(j).imag() = V.col(j + 1);
      out.col(j + 1) = out.col(j).conjugate();
      j++;
    }
  }
  return out;
}

std::string Diagnostics(const char *routine, lapack_int info, Eigen::Index n, double norm_a,
                        double norm_b)
{
  return std::string(routine) + " failed (info = " + std::to_string(info) +
         ", n = " + std::to_string(n) + ", |A|_F = " + std::to_string(norm_a) +
         ", |B|_F = " + std::to_string(norm_b) + ")";
}

}  // namespace

GeneralizedEigen GeneralizedEig(const Eigen::MatrixXd &A, const Eigen::MatrixXd &B,
                                bool want_left)
{
  const lapack_int n = static_cast<lapack_int>(A.rows());
  if (A.cols() != n || B.rows() != n || B.cols() != n)
  {
    throw UsageError("GeneralizedEig: A and B must be square and of equal size");
  }
  Eigen::MatrixXd a = A, b = B;
  Eigen::VectorXd alphar(n), alphai(n), beta(n);
  Eigen::MatrixXd vl(want_left ? n : 1, want_left ? n : 1), vr(n, n);
  const lapack_int info = LAPACKE_dggev(
      LAPACK_COL_MAJOR, want_left ? 'V' : 'N', 'V', n, a.data(), n, b.data(), n, alphar.data(),
      alphai.data(), beta.data(), vl.data(), want_left ? n : 1, vr.data(), n);
  if (info != 0)
  {
    throw BackendError(Diagnostics("dggev", info, n, A.norm(), B.norm()));
  }
  GeneralizedEigen out;
  out.alpha.resize(n);
  out.alpha.real() = alphar;
  out.alpha.imag() = alphai;
  out.beta = beta.cast<complex>();
  out.right = ExpandRealVectors(vr, alphai);
  Normalize(out.right);
  if (want_left)
  {
    out.left = ExpandRealVectors(vl, alphai);
    Normalize(out.left);
  }
  return out;
}

GeneralizedEigen GeneralizedEig(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B,
                                bool want_left)
{
  const lapack_int n = static_cast<lapack_int>(A.rows());
  if (A.cols() != n || B.rows() != n || B.cols() != n)
  {
    throw UsageError("GeneralizedEig: A and B must be square and of equal size");
  }
  Eigen::MatrixXcd a = A, b = B;
  Eigen::VectorXcd alpha(n), beta(n);
  Eigen::MatrixXcd vl(want_left ? n : 1, want_left ? n : 1), vr(n, n);
  const lapack_int info = LAPACKE_zggev(
      LAPACK_COL_MAJOR, want_left ? 'V' : 'N', 'V', n,
      reinterpret_cast<lapack_complex_double *>(a.data()), n,
      reinterpret_cast<lapack_complex_double *>(b.data()), n,
      reinterpret_cast<lapack_complex_double *>(alpha.data()),
      reinterpret_cast<lapack_complex_double *>(beta.data()),
      reinterpret_cast<lapack_complex_double *>(vl.data()), want_left ? n : 1,
      reinterpret_cast<lapack_complex_double *>(vr.data()), n);
  if (info != 0)
  {
    throw BackendError(Diagnostics("zggev", info, n, A.norm(), B.norm()));
  }
  GeneralizedEigen out;
  out.alpha = alpha;
  out.beta = beta;
  out.right = vr;
  Normalize(out.right);
  if (want_left)
  {
    out.left = vl;
    Normalize(out.left);
  }
  return out;
}

double SmallestSingularValue(const Eigen::MatrixXd &A)
{
  if (A.size() == 0)
  {
    return 0.0;
  }
  Eigen::MatrixXd a = A;
  const lapack_int m = static_cast<lapack_int>(A.rows()), n = static_cast<lapack_int>(A.cols());
  Eigen::VectorXd s(std::min(m, n)), superb(std::max<lapack_int>(1, std::min(m, n) - 1));
  const lapack_int info = LAPACKE_dgesvd(LAPACK_COL_MAJOR, 'N', 'N', m, n, a.data(), m, s.data(), nullptr, 1,
                                         nullptr, 1, superb.data());
  if (info != 0)
  {
    throw BackendError(Diagnostics("dgesvd", info, n, A.norm(), 0.0));
  }
  return s(s.size() - 1);
}

double SmallestSingularValue(const Eigen::MatrixXcd &A)
{
  if (A.size() == 0)
  {
    return 0.0;
  }
  Eigen::MatrixXcd a = A;
  const lapack_int m = static_cast<lapack_int>(A.rows()), n = static_cast<lapack_int>(A.cols());
  Eigen::VectorXd s(std::min(m, n)), superb(std::max<lapack_int>(1, std::min(m, n) - 1));
  const lapack_int info =
      LAPACKE_zgesvd(LAPACK_COL_MAJOR, 'N', 'N', m, n, reinterpret_cast<lapack_complex_double *>(a.data()), m,
                     s.data(), nullptr, 1, nullptr, 1, superb.data());
  if (info != 0)
  {
    throw BackendError(Diagnostics("zgesvd", info, n, A.norm(), 0.0));
  }
  return s(s.size() - 1);
}

namespace
{

template <typename Matrix, typename Vector>
Vector LuSolve(const Matrix &A, const Vector &b)
{
  if (A.rows() != A.cols() || A.rows() != b.size())
  {
    throw UsageError("Solve: dimension mismatch");
  }
  Eigen::PartialPivLU<Matrix> lu(A);
  if (!(lu.rcond() > 1e-15))
  {
    throw BackendError("Solve: matrix is singular to working precision (n = " +
                       std::to_string(A.rows()) + ")");
  }
  return lu.solve(b);
}

}  // namespace

Eigen::VectorXd Solve(const Eigen::MatrixXd &A, const Eigen::VectorXd &b)
{
  return LuSolve(A, b);
}

Eigen::VectorXcd Solve(const Eigen::MatrixXcd &A, const Eigen::VectorXcd &b)
{
  return LuSolve(A, b);
}

double ReciprocalCondition(const Eigen::MatrixXd &A)
{
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
  return lu.rcond();
}

}  // namespace leaky::linalg
