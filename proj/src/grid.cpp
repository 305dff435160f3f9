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

#include "dirac2d/grid.hpp"

#include <cmath>
#include <numbers>

#include "dirac2d/error.hpp"

namespace dirac2d {

Grid2D::Grid2D(int points_per_axis, double box, bool half_cell_offset)
    : n_(points_per_axis), box_(box), offset_(half_cell_offset) {
  require(n_ >= 2 && (n_ & (n_ - 1)) == 0,
          "grid points per axis must be a power of two");
  require(std::isfinite(box_) && box_ > 0.0, "box length must be positive");
}

double Grid2D::coordinate(int q) const {
  const double shift = offset_ ? 0.5 : 0.0;
  return -0.5 * box_ + (q + shift) * spacing();
}

double Grid2D::wavenumber(int q) const {
  const int signed_q = q < n_ / 2 ? q : q - n_;
  return 2.0 * std::numbers::pi / box_ * signed_q;
}

ScalarField::ScalarField(const Grid2D& grid)
    : grid_(grid), values_(grid.size(), Complex{}) {}

ScalarField::ScalarField(const Grid2D& grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  require(values_.size() == grid_.size(),
          "field sample count does not match the grid");
}

namespace {

void require_same_grid(const Grid2D& a, const Grid2D& b) {
  if (!(a == b)) fail(ErrorCode::kShapeMismatch, "fields live on different grids");
}

}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& other) {
  return axpy(1.0, other);
}

ScalarField& ScalarField::operator-=(const ScalarField& other) {
  return axpy(-1.0, other);
}

ScalarField& ScalarField::operator*=(Complex factor) {
  for (auto& v : values_) v *= factor;
  return *this;
}

ScalarField& ScalarField::axpy(Complex factor, const ScalarField& other) {
  require_same_grid(grid_, other.grid_);
  for (std::size_t i = 0; i < values_.size(); ++i)
    values_[i] += factor * other.values_[i];
  return *this;
}

double ScalarField::squared_norm() const {
  double sum = 0.0;
  for (const auto& v : values_) sum += std::norm(v);
  return sum * grid_.cell_area();
}

double ScalarField::norm() const { return std::sqrt(squared_norm()); }

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(Complex factor, ScalarField a) { return a *= factor; }

Complex inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  Complex sum{};
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::conj(a[i]) * b[i];
  return sum * a.grid().cell_area();
}

SpinorField::SpinorField(ScalarField u, ScalarField l)
    : upper(std::move(u)), lower(std::move(l)) {
  require_same_grid(upper.grid(), lower.grid());
}

SpinorField& SpinorField::operator+=(const SpinorField& other) {
  upper += other.upper;
  lower += other.lower;
  return *this;
}

SpinorField& SpinorField::operator-=(const SpinorField& other) {
  upper -= other.upper;
  lower -= other.lower;
  return *this;
}

SpinorField& SpinorField::operator*=(Complex factor) {
  upper *= factor;
  lower *= factor;
  return *this;
}

SpinorField& SpinorField::axpy(Complex factor, const SpinorField& other) {
  upper.axpy(factor, other.upper);
  lower.axpy(factor, other.lower);
  return *this;
}

double SpinorField::squared_norm() const {
  return upper.squared_norm() + lower.squared_norm();
}

double SpinorField::norm() const { return std::sqrt(squared_norm()); }

SpinorField operator+(SpinorField a, const SpinorField& b) { return a += b; }
SpinorField operator-(SpinorField a, const SpinorField& b) { return a -= b; }
SpinorField operator*(Complex factor, SpinorField a) { return a *= factor; }

Complex inner(const SpinorField& a, const SpinorField& b) {
  return inner(a.upper, b.upper) + inner(a.lower, b.lower);
}

}  // namespace dirac2d
