// Copyright 2026 The dirac2d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "dirac2d/error.hpp"
#include "dirac2d/tridiagonal.hpp"
#include "oracles.hpp"

namespace dirac2d {
namespace {

TridiagonalMatrix random_matrix(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  TridiagonalMatrix t;
  for (int i = 0; i < n; ++i) t.diagonal.push_back(u(rng));
  for (int i = 0; i + 1 < n; ++i) t.off_diagonal.push_back(u(rng));
  return t;
}

TEST(Sturm, ClosedFormSecondDifference) {
  TridiagonalMatrix t{std::vector<double>(8, 2.0), std::vector<double>(7, -1.0)};
  const auto ev = lowest_eigenvalues(t, 8, 1e-15);
  for (int q = 1; q <= 8; ++q) {
    const double s = std::sin(q * M_PI / 18.0);
    EXPECT_NEAR(ev[q - 1], 4.0 * s * s, 1e-13);
  }
}

TEST(Sturm, DiagonalMatrixGivesSortedEntries) {
  TridiagonalMatrix t{{3.0, -1.0, 2.0, 0.5}, {0.0, 0.0, 0.0}};
  const auto ev = lowest_eigenvalues(t, 4, 1e-15);
  const double expected[] = {-1.0, 0.5, 2.0, 3.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(ev[i], expected[i], 1e-14);
}

TEST(Sturm, CountMatchesEigenvaluesBelowShift) {
  std::mt19937_64 rng(7);
  const auto t = random_matrix(rng, 10);
  const auto ev = oracle::tridiagonal_eigenvalues(t.diagonal, t.off_diagonal);
  for (double shift : {-2.0, -0.5, 0.0, 0.3, 2.5}) {
    const int below = std::count_if(ev.begin(), ev.end(), [&](double x) { return x < shift; });
    EXPECT_EQ(sturm_count(t, shift), below);
  }
}

TEST(Sturm, AgreesWithCharacteristicPolynomialOracle) {
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 12;
    const auto t = random_matrix(rng, n);
    const auto ours = lowest_eigenvalues(t, n);
    const auto ref = oracle::tridiagonal_eigenvalues(t.diagonal, t.off_diagonal);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(ours[i], ref[i], 1e-10);
  }
}

TEST(Sturm, OracleAgreesWithDenseSolver) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 12;
    const auto t = random_matrix(rng, n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) a(i, i) = t.diagonal[i];
    for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = a(i + 1, i) = t.off_diagonal[i];
    const Eigen::VectorXd dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a).eigenvalues();
    const auto ref = oracle::tridiagonal_eigenvalues(t.diagonal, t.off_diagonal);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(ref[i], dense[i], 1e-12);
  }
}

TEST(Sturm, EigenvectorSatisfiesEquation) {
  std::mt19937_64 rng(5);
  const auto t = random_matrix(rng, 12);
  for (int k : {0, 5, 11}) {
    const double lambda = kth_smallest_eigenvalue(t, k);
    const auto v = eigenvector(t, lambda);
    double res = 0.0, norm = 0.0;
    for (int i = 0; i < 12; ++i) {
      double tv = t.diagonal[i] * v[i];
      if (i > 0) tv += t.off_diagonal[i - 1] * v[i - 1];
      if (i < 11) tv += t.off_diagonal[i] * v[i + 1];
      res += (tv - lambda * v[i]) * (tv - lambda * v[i]);
      norm += v[i] * v[i];
    }
    EXPECT_NEAR(norm, 1.0, 1e-12);
    EXPECT_LT(std::sqrt(res), 1e-10);
  }
}

TEST(Sturm, RejectsMalformedInput) {
  TridiagonalMatrix bad{{1.0, 2.0}, {}};
  EXPECT_THROW(bad.validate(), Error);
  TridiagonalMatrix t{{1.0, 2.0}, {0.5}};
  EXPECT_THROW(kth_smallest_eigenvalue(t, 2), Error);
}

}  // namespace
}  // namespace dirac2d
