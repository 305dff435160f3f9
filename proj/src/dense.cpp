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

#include "dirac2d/dense.hpp"

#include <cmath>
#include <numbers>

#include "dirac2d/error.hpp"

namespace dirac2d {
namespace {

using Kind = MatrixFreeOperator::Kind;

// Forward 2D DFT on row-major (i1, i2) samples, unnormalized.
DenseMatrix dft_2d(int n) {
  DenseMatrix f1(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      f1(j, k) = std::polar(1.0, -2.0 * std::numbers::pi * ((j * k) % n) / n);
  const int size = n * n;
  DenseMatrix f(size, size);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      f.block(a * n, b * n, n, n) = f1(a, b) * f1;
  return f;
}

struct Materializer {
  const Grid2D& grid;
  DenseMatrix forward;
  DenseMatrix backward;

  explicit Materializer(const Grid2D& g) : grid(g), forward(dft_2d(g.n())) {
    backward = forward.adjoint() / static_cast<double>(g.size());
  }

  DenseMatrix scalar(const MatrixFreeOperator& op) const {
    const int size = static_cast<int>(grid.size());
    const int n = grid.n();
    switch (op.kind()) {
      case Kind::kIdentity:
        return DenseMatrix::Identity(size, size);
      case Kind::kFourier: {
        DenseVector symbol(size);
        for (int i1 = 0; i1 < n; ++i1)
          for (int i2 = 0; i2 < n; ++i2)
            symbol(i1 * n + i2) =
                (op.singular_at_zero() && i1 == 0 && i2 == 0)
                    ? Complex{}
                    : op.symbol()(grid.wavenumber(i1), grid.wavenumber(i2));
        return backward * symbol.asDiagonal() * forward;
      }
      case Kind::kPosition: {
        DenseVector diag(size);
        for (int i1 = 0; i1 < n; ++i1)
          for (int i2 = 0; i2 < n; ++i2)
            diag(i1 * n + i2) =
                op.position_function()(grid.coordinate(i1), grid.coordinate(i2));
        return diag.asDiagonal();
      }
      case Kind::kProduct: {
        DenseMatrix out = DenseMatrix::Identity(size, size);
        for (const auto& f : op.factors()) out = out * scalar(f);
        return out;
      }
      case Kind::kSum: {
        DenseMatrix out = DenseMatrix::Zero(size, size);
        for (const auto& t : op.terms()) out += t.coefficient * scalar(t.op);
        return out;
      }
      case Kind::kBlock:
        break;
    }
    fail(ErrorCode::kShapeMismatch, "block operator inside a scalar operator");
  }

  DenseMatrix spinor(const MatrixFreeOperator& op) const {
    const int size = static_cast<int>(grid.size());
    switch (op.kind()) {
      case Kind::kIdentity:
        return DenseMatrix::Identity(2 * size, 2 * size);
      case Kind::kProduct: {
        DenseMatrix out = DenseMatrix::Identity(2 * size, 2 * size);
        for (const auto& f : op.factors()) out = out * spinor(f);
        return out;
      }
      case Kind::kSum: {
        DenseMatrix out = DenseMatrix::Zero(2 * size, 2 * size);
        for (const auto& t : op.terms()) out += t.coefficient * spinor(t.op);
        return out;
      }
      case Kind::kBlock: {
        DenseMatrix out = DenseMatrix::Zero(2 * size, 2 * size);
        for (int row = 0; row < 2; ++row)
          for (int col = 0; col < 2; ++col)
            if (const auto& e = op.block_entry(row, col))
              out.block(row * size, col * size, size, size) = scalar(*e);
        return out;
      }
      case Kind::kFourier:
      case Kind::kPosition:
        break;
    }
    fail(ErrorCode::kShapeMismatch, "scalar operator used as a spinor operator");
  }
};

}  // namespace

DenseMatrix to_dense(const MatrixFreeOperator& op, const Grid2D& grid) {
  require(grid.n() <= kMaxDenseGrid, "grid too large for dense materialization");
  const Materializer m(grid);
  return op.shape() == OperatorShape::kScalar ? m.scalar(op) : m.spinor(op);
}

DenseVector to_vector(const ScalarField& field) {
  DenseVector v(static_cast<Eigen::Index>(field.size()));
  for (std::size_t i = 0; i < field.size(); ++i) v(static_cast<Eigen::Index>(i)) = field[i];
  return v;
}

DenseVector to_vector(const SpinorField& field) {
  const auto size = static_cast<Eigen::Index>(field.upper.size());
  DenseVector v(2 * size);
  v.head(size) = to_vector(field.upper);
  v.tail(size) = to_vector(field.lower);
  return v;
}

ScalarField scalar_from_vector(const Grid2D& grid, const DenseVector& v) {
  require(v.size() == static_cast<Eigen::Index>(grid.size()),
          "vector length does not match the grid");
  return ScalarField(grid, std::vector<Complex>(v.data(), v.data() + v.size()));
}

SpinorField spinor_from_vector(const Grid2D& grid, const DenseVector& v) {
  const auto size = static_cast<Eigen::Index>(grid.size());
  require(v.size() == 2 * size, "vector length does not match the grid");
  return SpinorField(scalar_from_vector(grid, v.head(size)),
                     scalar_from_vector(grid, v.tail(size)));
}

}  // namespace dirac2d
