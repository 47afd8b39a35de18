// Copyright (c) 2026 The leaky authors.
// SPDX-License-Identifier: Apache-2.0

#include <random>

#include <gtest/gtest.h>

#include "leaky/errors.hpp"
#include "leaky/linalg.hpp"

using namespace leaky;
using namespace leaky::linalg;

TEST(GeneralizedEig, Diagonal)
{
  Eigen::MatrixXd A = Eigen::Vector2d(1, 2).asDiagonal();
  const auto e = GeneralizedEig(A, Eigen::MatrixXd::Identity(2, 2), false);
  std::vector<double> l = {e.Eigenvalue(0).real(), e.Eigenvalue(1).real()};
  std::sort(l.begin(), l.end());
  EXPECT_NEAR(l[0], 1.0, 1e-15);
  EXPECT_NEAR(l[1], 2.0, 1e-15);
  EXPECT_EQ(e.left.size(), 0);
}

TEST(GeneralizedEig, SingularBGivesOneInfinite)
{
  Eigen::MatrixXd A(2, 2), B(2, 2);
  A << 1, 2, 3, 4;
  B << 1, 0, 0, 0;
  const auto e = GeneralizedEig(A, B, false);
  int inf = 0;
  for (Eigen::Index i = 0; i < e.Size(); i++)
  {
    inf += e.IsInfinite(i, 1e-14);
  }
  EXPECT_EQ(inf, 1);
}

TEST(GeneralizedEig, RandomResidualProperty)
{
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n;
  const int N = 50;
  Eigen::MatrixXd A(N, N), B(N, N);
  for (int i = 0; i < N * N; i++)
  {
    A.data()[i] = n(rng);
    B.data()[i] = n(rng);
  }
  const auto e = GeneralizedEig(A, B, true);
  const double eps = std::numeric_limits<double>::epsilon();
  for (Eigen::Index i = 0; i < e.Size(); i++)
  {
    const complex l = e.Eigenvalue(i);
    const Eigen::VectorXcd v = e.right.col(i), w = e.left.col(i);
    const double bound = 100 * eps * N * (A.norm() + std::abs(l) * B.norm());
    EXPECT_LE((A.cast<complex>() * v - l * (B.cast<complex>() * v)).norm(), bound);
    EXPECT_LE((w.adjoint() * A.cast<complex>() - l * (w.adjoint() * B.cast<complex>())).norm(), bound);
  }
}

TEST(GeneralizedEig, ComplexPencil)
{
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  const int N = 20;
  Eigen::MatrixXcd A(N, N), B(N, N);
  for (int i = 0; i < N * N; i++)
  {
    A.data()[i] = {n(rng), n(rng)};
    B.data()[i] = {n(rng), n(rng)};
  }
  const auto e = GeneralizedEig(A, B, true);
  for (Eigen::Index i = 0; i < e.Size(); i++)
  {
    const complex l = e.Eigenvalue(i);
    EXPECT_LE((A * e.right.col(i) - l * B * e.right.col(i)).norm(), 1e-10 * (A.norm() + std::abs(l) * B.norm()));
  }
}

TEST(Svd, SmallestSingularValue)
{
  EXPECT_NEAR(SmallestSingularValue(Eigen::MatrixXd(Eigen::MatrixXd::Identity(4, 4))), 1.0, 1e-15);
  Eigen::MatrixXd R(2, 2);
  R << 1, 2, 2, 4;
  EXPECT_LE(SmallestSingularValue(R), 1e-15 * R.norm());
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Identity(3, 3) * complex(0, 2);
  EXPECT_NEAR(SmallestSingularValue(C), 2.0, 1e-15);
}

TEST(Solve, RandomSpdProperty)
{
  std::mt19937_64 rng(13);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 10; trial++)
  {
    const int N = 30;
    Eigen::MatrixXd G(N, N);
    for (int i = 0; i < N * N; i++)
    {
      G.data()[i] = n(rng);
    }
    const Eigen::MatrixXd A = G * G.transpose() + Eigen::MatrixXd::Identity(N, N);
    Eigen::VectorXd b(N);
    for (int i = 0; i < N; i++)
    {
      b(i) = n(rng);
    }
    const Eigen::VectorXd x = Solve(A, b);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const double kappa = svd.singularValues()(0) / svd.singularValues()(N - 1);
    EXPECT_LE((A * x - b).norm(), 10 * std::numeric_limits<double>::epsilon() * kappa * b.norm() * N);
    EXPECT_GT(ReciprocalCondition(A), 0.0);
  }
  EXPECT_THROW(Solve(Eigen::MatrixXd(Eigen::MatrixXd::Zero(2, 2)), Eigen::VectorXd(Eigen::VectorXd::Ones(2))), BackendError);
}

TEST(Backend, Reentrant)
{
  EXPECT_TRUE(kBackendReentrant);
}
