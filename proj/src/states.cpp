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

#include "dirac2d/states.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "dirac2d/error.hpp"
#include "dirac2d/operators.hpp"

namespace dirac2d {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

int SplitMix64::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

double SplitMix64::normal() {
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RingGeometry RingGeometry::standard(const Grid2D& grid) {
  return {grid.box() / 8.0, grid.box() / 32.0};
}

double ring_profile(double r, const RingGeometry& ring) {
  const double u = r * r / (ring.radius * ring.radius);
  const double a = ring.radius * ring.radius / (4.0 * ring.width * ring.width);
  // (u e^{1-u})^a, written in log form to avoid overflow of u^a.
  if (u == 0.0) return 0.0;
  return std::exp(a * (std::log(u) + 1.0 - u));
}

namespace {

void normalize(ScalarField& f) {
  const double n = f.norm();
  require(n > 0.0, "test state has zero norm on this grid");
  f *= 1.0 / n;
}

void normalize(SpinorField& f) {
  const double n = f.norm();
  require(n > 0.0, "test state has zero norm on this grid");
  f *= 1.0 / n;
}

}  // namespace

ScalarField ring_scalar(const Grid2D& grid, int m, const RingGeometry& ring) {
  ScalarField out(grid);
  const int am = std::abs(m);
  const double sign = m >= 0 ? 1.0 : -1.0;
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    const double a = grid.coordinate(i1);
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      const double b = grid.coordinate(i2);
      const Complex z(a / ring.radius, sign * b / ring.radius);
      out.at(i1, i2) = std::pow(z, am) * ring_profile(std::hypot(a, b), ring);
    }
  }
  normalize(out);
  return out;
}

SpinorField ring_spinor(const Grid2D& grid, int m, const RingGeometry& ring) {
  const double h = 1.0 / std::sqrt(2.0);
  SpinorField out(Complex(h) * ring_scalar(grid, m, ring),
                  Complex(0.0, h) * ring_scalar(grid, m + 1, ring));
  normalize(out);
  return out;
}

ScalarField random_band_limited_scalar(const Grid2D& grid, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const RingGeometry ring = RingGeometry::standard(grid);
  const int band = std::max(1, grid.n() / 8);
  constexpr int kWaves = 6;
  struct Wave {
    double q1, q2;
    Complex c;
  };
  std::vector<Wave> waves;
  const double dk = 2.0 * std::numbers::pi / grid.box();
  for (int w = 0; w < kWaves; ++w) {
    Wave wave;
    wave.q1 = dk * rng.uniform_int(-band, band);
    wave.q2 = dk * rng.uniform_int(-band, band);
    wave.c = Complex(rng.normal(), rng.normal());
    waves.push_back(wave);
  }
  ScalarField out(grid);
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    const double a = grid.coordinate(i1);
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      const double b = grid.coordinate(i2);
      Complex mod{};
      for (const auto& w : waves)
        mod += w.c * std::exp(Complex(0.0, w.q1 * a + w.q2 * b));
      out.at(i1, i2) = mod * ring_profile(std::hypot(a, b), ring);
    }
  }
  normalize(out);
  return out;
}

SpinorField random_band_limited_spinor(const Grid2D& grid, std::uint64_t seed) {
  ScalarField upper = random_band_limited_scalar(grid, seed);
  ScalarField lower = ops::ladder_b_dagger().apply(
      random_band_limited_scalar(grid, seed ^ 0xa5a5a5a5a5a5a5a5ULL));
  const double ln = lower.norm();
  if (ln > 0.0) lower *= 1.0 / ln;
  SpinorField out(std::move(upper), std::move(lower));
  normalize(out);
  return out;
}

StateFamily standard_state_family(const Grid2D& grid, std::uint64_t seed) {
  StateFamily family;
  const RingGeometry ring = RingGeometry::standard(grid);
  for (int m : kRingMomenta) {
    const std::string label = "ring_m" + std::to_string(m);
    family.scalars.push_back({label, ring_scalar(grid, m, ring)});
    family.spinors.push_back({label, ring_spinor(grid, m, ring)});
  }
  SplitMix64 seeds(seed);
  for (int i = 0; i < kRandomStateCount; ++i) {
    const std::uint64_t s = seeds.next();
    const std::string label = "random_" + std::to_string(i);
    family.scalars.push_back({label, random_band_limited_scalar(grid, s)});
    family.spinors.push_back({label, random_band_limited_spinor(grid, s)});
  }
  return family;
}

}  // namespace dirac2d
