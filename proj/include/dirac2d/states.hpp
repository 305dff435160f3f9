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

// Standard test states: smooth rings localized away from both the origin and
// the periodic boundary, plus seeded random band-limited states under the
// same envelope.

#include <cstdint>
#include <string>
#include <vector>

#include "dirac2d/grid.hpp"

namespace dirac2d {

struct LabeledScalar {
  std::string label;
  ScalarField field;
};

struct LabeledSpinor {
  std::string label;
  SpinorField field;
};

struct RingGeometry {
  double radius = 0.0;
  double width = 0.0;

  // radius = box / 8, width = box / 32.
  static RingGeometry standard(const Grid2D& grid);
};

// Radial ring profile peaked at `radius` with Gaussian width `width` near the
// peak. It is a smooth function of r^2 and vanishes like r^(2a) at the
// origin, with a = radius^2 / (4 width^2).
double ring_profile(double r, const RingGeometry& ring);

// ((x1 + i sgn(m) x2) / radius)^|m| * ring_profile(r); angular dependence
// e^{i m theta}. Unit norm.
ScalarField ring_scalar(const Grid2D& grid, int m, const RingGeometry& ring);

// (a * ring_m, b * ring_{m+1}) with a = 1/sqrt(2), b = i/sqrt(2). The lower
// component carries e^{i (m+1) theta}, matching the sector structure of H, so
// it is B^dag of a localized field for m >= 0. Unit norm.
SpinorField ring_spinor(const Grid2D& grid, int m, const RingGeometry& ring);

// Ring envelope (m = 0) times a sum of random plane waves whose integer
// wave-vector indices lie in [-N/8, N/8] per axis (band N/4). Unit norm.
ScalarField random_band_limited_scalar(const Grid2D& grid, std::uint64_t seed);

// Upper: random band-limited scalar. Lower: B^dag applied to an independent
// random band-limited scalar, rescaled. Unit norm.
SpinorField random_band_limited_spinor(const Grid2D& grid, std::uint64_t seed);

struct StateFamily {
  std::vector<LabeledScalar> scalars;
  std::vector<LabeledSpinor> spinors;
};

inline constexpr int kRingMomenta[] = {0, 1, 2};
inline constexpr int kRandomStateCount = 5;

// Rings with m in {0, 1, 2} followed by 5 random states derived from `seed`.
StateFamily standard_state_family(const Grid2D& grid, std::uint64_t seed);

// Deterministic splitmix64-based generator shared by the state family and
// the tests, so seeds reproduce across standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, 1).
  double uniform();
  // Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);
  // Standard normal via Box-Muller.
  double normal();

 private:
  std::uint64_t state_;
};

}  // namespace dirac2d
