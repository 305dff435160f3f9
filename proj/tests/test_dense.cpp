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

#include "dirac2d/dense.hpp"
#include "dirac2d/error.hpp"
#include "dirac2d/operators.hpp"
#include "dirac2d/states.hpp"
#include "dirac2d/verifier.hpp"

namespace dirac2d {
namespace {

TEST(Dense, VectorRoundTrip) {
  const Grid2D g(16, 10.0);
  const auto s = random_band_limited_spinor(g, 8);
  const auto back = spinor_from_vector(g, to_vector(s));
  EXPECT_EQ((back - s).norm(), 0.0);
  EXPECT_THROW(scalar_from_vector(g, DenseVector::Zero(10)), Error);
}

TEST(Dense, HamiltonianIsHermitian) {
  const Grid2D g(16, 10.0);
  for (const auto& p : {PhysicalParams::coulomb(1.0, 1.0), PhysicalParams::oscillator(1.0, 0.2)}) {
    const DenseMatrix h = to_dense(build_operator(OperatorKind::kH, p), g);
    EXPECT_LT((h - h.adjoint()).norm() / h.norm(), 1e-14);
  }
}

TEST(Dense, InverseLaplacianDropsZeroMode) {
  const Grid2D g(16, 10.0);
  const DenseMatrix a = to_dense(ops::inverse_p_squared(), g);
  const DenseMatrix b = to_dense(ops::p_squared(), g);
  // (1/p^2) p^2 is the projector off the constant mode.
  DenseMatrix projector = DenseMatrix::Identity(256, 256);
  projector.array() -= 1.0 / 256.0;
  EXPECT_LT((a * b - projector).norm(), 1e-12);
}

TEST(Dense, RejectsLargeGrids) {
  EXPECT_THROW(to_dense(ops::p1(), Grid2D(64, 10.0)), Error);
}

class DenseCrossCheck : public ::testing::TestWithParam<PhysicalParams> {};

TEST_P(DenseCrossCheck, EveryOperatorAgrees) {
  const auto results = dense_crosscheck(GetParam(), 16, 40.0, 42, 20);
  EXPECT_GT(results.size(), 20u);
  for (const auto& r : results) {
    EXPECT_TRUE(r.pass) << r.name << " " << r.residual;
    EXPECT_EQ(r.threshold, kDenseTolerance);
  }
}

INSTANTIATE_TEST_SUITE_P(Potentials, DenseCrossCheck,
                         ::testing::Values(PhysicalParams::coulomb(1.0, 1.0),
                                           PhysicalParams::oscillator(1.0, 0.2)));

}  // namespace
}  // namespace dirac2d
