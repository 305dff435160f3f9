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

#include <cmath>

#include "dirac2d/error.hpp"
#include "dirac2d/operators.hpp"
#include "dirac2d/radial.hpp"

namespace dirac2d {
namespace {

TEST(RadialMatrix, DiskLaplacianBesselZero) {
  // As E -> -M the potential term drops out: the Dirichlet disk Laplacian.
  const auto params = PhysicalParams::coulomb(1.0, 0.5);
  const double j01 = 2.404825557695773;
  double previous = 1.0;
  for (int cells : {500, 1000, 2000}) {
    const RadialGrid grid{cells, 1.0};
    const auto t = build_radial_matrix(params, 0, -1.0 + 1e-13, grid);
    // The Dirichlet node is the ghost at r_max + h / 2.
    const double radius = 1.0 + grid.spacing() / 2;
    const double err = std::abs(kth_smallest_eigenvalue(t, 0, 1e-15) - j01 * j01 / (radius * radius));
    EXPECT_LT(err, previous);
    previous = err;
  }
  EXPECT_LT(previous, 1e-5);
}

TEST(RadialMatrix, TwoDimensionalHydrogenGround) {
  // -Laplacian - kappa / r with kappa = 2 M k at E = M: eps = -kappa^2.
  const auto params = PhysicalParams::coulomb(1.0, 0.2);
  const double kappa = 2.0 * 0.2;
  const RadialGrid coarse{4000, 60.0}, fine{8000, 60.0};
  const double e1 = kth_smallest_eigenvalue(build_radial_matrix(params, 0, 1.0, coarse), 0, 1e-15);
  const double e2 = kth_smallest_eigenvalue(build_radial_matrix(params, 0, 1.0, fine), 0, 1e-15);
  EXPECT_NEAR(richardson(e1, e2), -kappa * kappa, 1e-6);
}

TEST(Richardson, Arithmetic) {
  EXPECT_DOUBLE_EQ(richardson(1.0, 1.0, 2), 1.0);
  EXPECT_DOUBLE_EQ(richardson(1.0, 2.0, 2), 7.0 / 3.0);
}

TEST(SectorSolve, CoulombLevelsAndDegeneracy) {
  const auto params = PhysicalParams::coulomb(1.0, 0.2);
  const auto n1 = solve_sector_extrapolated(params, 0, 0);
  EXPECT_NEAR(*n1.entry.energy_numeric, 0.923076923076923, 1e-9);
  // The extrapolant beats both inputs.
  const double exact = coulomb_energy(1, 0.2, 1.0);
  EXPECT_LT(std::abs(*n1.entry.energy_numeric - exact), std::abs(n1.fine_energy - exact));
  EXPECT_LT(std::abs(*n1.entry.energy_numeric - exact), std::abs(n1.coarse_energy - exact));
  const auto a = solve_sector_extrapolated(params, 1, 0);
  const auto b = solve_sector_extrapolated(params, 0, 1);
  const auto c = solve_sector_extrapolated(params, -1, 0);
  EXPECT_NEAR(*a.entry.energy_numeric, 8.96 / 9.04, 1e-9);
  EXPECT_NEAR(*a.entry.energy_numeric, *b.entry.energy_numeric, 1e-9);
  EXPECT_NEAR(*a.entry.energy_numeric, *c.entry.energy_numeric, 1e-12);
}

TEST(SectorSolve, OscillatorLevels) {
  const auto params = PhysicalParams::oscillator(1.0, 0.1);
  EXPECT_NEAR(*solve_sector_extrapolated(params, 0, 0).entry.energy_numeric, 1.0977, 1e-4);
  EXPECT_NEAR(*solve_sector_extrapolated(params, 1, 0).entry.energy_numeric, 1.1911, 1e-4);
  const auto e = solve_sector_extrapolated(params, 0, 1).entry;
  EXPECT_LT(*e.rel_error, 1e-8);
}

TEST(SectorSolve, ProfileHasNRNodes) {
  const auto params = PhysicalParams::coulomb(1.0, 0.2);
  for (int nr = 0; nr <= 2; ++nr) {
    const RadialGrid grid{2000, default_radial_extent(params, 2 * nr + 1)};
    const auto sol = solve_sector_full(params, 0, nr, grid);
    EXPECT_EQ(count_nodes(sol.pair.profile), nr);
    EXPECT_LE(std::abs(sol.secular_residual), 1e-10);
  }
}

TEST(SectorSolve, RejectsInvalidSectors) {
  const auto params = PhysicalParams::coulomb(1.0, 0.2);
  EXPECT_THROW(solve_sector_extrapolated(params, 0, -1), Error);
  EXPECT_THROW(solve_sector_extrapolated(params, 0, 0, 0), Error);
}

TEST(SectorSolve, ParallelMatchesSerial) {
  const auto params = PhysicalParams::coulomb(1.0, 0.2);
  const auto sectors = enumerate_sectors(params, 1, 1);
  const auto serial = solve_sectors(params, sectors, 2000, 0.0, 1);
  const auto parallel = solve_sectors(params, sectors, 2000, 0.0, 4);
  ASSERT_EQ(serial.size(), parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i)
    EXPECT_EQ(*serial[i].energy_numeric, *parallel[i].energy_numeric);
}

TEST(Lift, AngularStructureAndNorm) {
  const auto params = PhysicalParams::oscillator(1.0, 0.2);
  const Grid2D grid(128, 40.0);
  const auto l = build_operator(OperatorKind::kL, params);
  for (int m : {-1, 0, 2}) {
    const RadialGrid rg{8000, default_radial_extent(params, std::abs(m))};
    const auto sol = solve_sector_full(params, m, 0, rg);
    LiftDiagnostics diag;
    const auto psi = lift_to_grid(sol.pair, sol.energy, params, grid, &diag);
    EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
    EXPECT_FALSE(diag.truncated);
    EXPECT_LT((l.apply(psi) - double(m) * psi).norm(), 1e-6) << m;
  }
}

TEST(Lift, LiftedStateSatisfiesDiracEquation) {
  const auto params = PhysicalParams::oscillator(1.0, 0.2);
  const Grid2D grid(128, 40.0);
  const RadialGrid rg{16000, default_radial_extent(params, 1)};
  const auto sol = solve_sector_full(params, 1, 0, rg);
  const auto psi = lift_to_grid(sol.pair, sol.energy, params, grid);
  const auto h = build_operator(OperatorKind::kH, params);
  EXPECT_LT((h.apply(psi) - sol.energy * psi).norm(), 1e-5);
}

TEST(Lift, TruncationIsReported) {
  const auto params = PhysicalParams::coulomb(1.0, 0.05);
  const RadialGrid rg{2000, default_radial_extent(params, 1)};
  const auto sol = solve_sector_full(params, 0, 0, rg);
  LiftDiagnostics diag;
  lift_to_grid(sol.pair, sol.energy, params, Grid2D(64, 20.0), &diag);
  EXPECT_TRUE(diag.truncated);
  EXPECT_GT(diag.outside_fraction, 1e-3);
}

TEST(Lift, LowerComponentShrinksWithCoupling) {
  double previous = 1.0;
  for (double k : {0.4, 0.2, 0.1}) {
    const auto params = PhysicalParams::coulomb(1.0, k);
    const RadialGrid rg{2000, default_radial_extent(params, 1)};
    const auto sol = solve_sector_full(params, 0, 0, rg);
    const double ratio = lower_to_upper_ratio(sol.pair, sol.energy, params);
    EXPECT_LT(ratio, previous);
    // F ~ exp(-2 M k r) gives |G|/|F| -> |F'|/(2M |F|) = k as k -> 0.
    EXPECT_NEAR(ratio / k, 1.0, 1e-3);
    previous = ratio;
  }
}

}  // namespace
}  // namespace dirac2d
