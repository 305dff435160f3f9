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

#pragma once

// Dense materialization of matrix-free operators for small grids. Fourier
// multipliers use an explicit DFT matrix, so the result is independent of
// the FFT backend used by MatrixFreeOperator::apply.

#include <Eigen/Dense>

#include "dirac2d/grid.hpp"
#include "dirac2d/operator.hpp"

namespace dirac2d {

using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

// Largest grid accepted by to_dense (the spinor matrix has 2 n^2 rows).
inline constexpr int kMaxDenseGrid = 32;

// Matrix of `op` on `grid`: n^2 x n^2 for scalar operators, 2n^2 x 2n^2 for
// spinor operators with the upper component first.
DenseMatrix to_dense(const MatrixFreeOperator& op, const Grid2D& grid);

DenseVector to_vector(const ScalarField& field);
DenseVector to_vector(const SpinorField& field);
ScalarField scalar_from_vector(const Grid2D& grid, const DenseVector& v);
SpinorField spinor_from_vector(const Grid2D& grid, const DenseVector& v);

}  // namespace dirac2d
