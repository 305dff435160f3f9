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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dirac2d {

using Complex = std::complex<double>;

// Periodic square grid of side `box` centred on the origin. With the default
// half-cell offset no sample sits at r = 0.
class Grid2D {
 public:
  Grid2D(int points_per_axis, double box, bool half_cell_offset = true);

  int n() const { return n_; }
  double box() const { return box_; }
  bool half_cell_offset() const { return offset_; }
  double spacing() const { return box_ / n_; }
  double cell_area() const { return spacing() * spacing(); }
  std::size_t size() const { return static_cast<std::size_t>(n_) * n_; }

  // Coordinate of sample q along either axis.
  double coordinate(int q) const;
  // Wavenumber attached to FFT index q: (2 pi / box) * {0..N/2-1, -N/2..-1}.
  double wavenumber(int q) const;
  // Flat index; the first axis (x1) is the slow one.
  std::size_t index(int i1, int i2) const {
    return static_cast<std::size_t>(i1) * n_ + i2;
  }

  bool operator==(const Grid2D& other) const = default;

 private:
  int n_;
  double box_;
  bool offset_;
};

class ScalarField {
 public:
  explicit ScalarField(const Grid2D& grid);
  ScalarField(const Grid2D& grid, std::vector<Complex> values);

  const Grid2D& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<Complex> values() { return values_; }
  std::span<const Complex> values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }
  Complex& at(int i1, int i2) { return values_[grid_.index(i1, i2)]; }
  const Complex& at(int i1, int i2) const {
    return values_[grid_.index(i1, i2)];
  }

  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(Complex factor);
  // this += factor * other
  ScalarField& axpy(Complex factor, const ScalarField& other);

  // Sum of |psi|^2 times the cell area.
  double squared_norm() const;
  double norm() const;

 private:
  Grid2D grid_;
  std::vector<Complex> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(Complex factor, ScalarField a);

// <a, b> with the first argument conjugated.
Complex inner(const ScalarField& a, const ScalarField& b);

// Two-component field: upper and lower Dirac components.
struct SpinorField {
  ScalarField upper;
  ScalarField lower;

  explicit SpinorField(const Grid2D& grid) : upper(grid), lower(grid) {}
  SpinorField(ScalarField u, ScalarField l);

  const Grid2D& grid() const { return upper.grid(); }

  SpinorField& operator+=(const SpinorField& other);
  SpinorField& operator-=(const SpinorField& other);
  SpinorField& operator*=(Complex factor);
  SpinorField& axpy(Complex factor, const SpinorField& other);

  double squared_norm() const;
  double norm() const;
};

SpinorField operator+(SpinorField a, const SpinorField& b);
SpinorField operator-(SpinorField a, const SpinorField& b);
SpinorField operator*(Complex factor, SpinorField a);
Complex inner(const SpinorField& a, const SpinorField& b);

}  // namespace dirac2d
