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

// Independent spectrum route: per angular sector the 2D eigenproblem
// H psi = E psi with psi = (F(r) e^{i m theta}, G(r) e^{i (m+1) theta}) and
// G = -i (F' - m F / r) / (E + M) reduces to
//
//   -F'' - F'/r + m^2 F / r^2 + (E + M) V(r) F = (E^2 - M^2) F,
//
// an energy-dependent radial problem solved by an outer root-find in E
// around a symmetric tridiagonal eigenproblem.

#include <optional>
#include <vector>

#include "dirac2d/grid.hpp"
#include "dirac2d/spectra.hpp"
#include "dirac2d/tridiagonal.hpp"

namespace dirac2d {

// Cell-centred nodes r_j = (j + 1/2) h, h = r_max / cells. Zero flux at the
// origin, Dirichlet closure at the ghost node r_max + h / 2.
struct RadialGrid {
  int cells = 2000;
  double r_max = 1.0;

  double spacing() const { return r_max / cells; }
  double node(int j) const { return (j + 0.5) * spacing(); }
  void validate() const;
};

// Coulomb: (n^2 + 40 n) / (2 M k). Oscillator:
// 12 sqrt((n+1) / (M omega sqrt(1 + (n+1) omega / M))).
double default_radial_extent(const PhysicalParams& params, int n);

// Finite-volume discretization of -(1/r) d/dr (r d/dr) + m^2/r^2 + (E+M) V,
// symmetrized by the sqrt(r) similarity scaling.
TridiagonalMatrix build_radial_matrix(const PhysicalParams& params, int m,
                                      double energy, const RadialGrid& grid);

struct RadialEigenpair {
  double epsilon = 0.0;
  // F(r_j), normalized so that sum |F_j|^2 r_j h = 1.
  std::vector<double> profile;
  int m = 0;
  int n_r = 0;
  RadialGrid grid;
};

// eps_{n_r}(E) - (E^2 - M^2).
double secular_function(const PhysicalParams& params, int m, int n_r,
                        double energy, const RadialGrid& grid);

RadialEigenpair radial_eigenpair(const PhysicalParams& params, int m, int n_r,
                                 double energy, const RadialGrid& grid);

// Number of sign changes of the profile, ignoring samples below
// `relative_floor` of its maximum magnitude.
int count_nodes(const std::vector<double>& profile, double relative_floor = 1e-10);

struct SectorSolution {
  SpectrumEntry entry;
  RadialEigenpair pair;
  double energy = 0.0;
  double secular_residual = 0.0;
  int evaluations = 0;
};

inline constexpr double kDefaultSectorTolerance = 1e-12;

// Root of the secular function, bracketed around the non-relativistic
// estimate and refined by Illinois regula falsi with a bisection fallback.
// Converged when |phi| <= tol M^2 or the bracket reaches rounding width.
SectorSolution solve_sector_full(const PhysicalParams& params, int m, int n_r,
                                 const RadialGrid& grid,
                                 double tol = kDefaultSectorTolerance);

SpectrumEntry solve_sector(const PhysicalParams& params, int m, int n_r,
                           const RadialGrid& grid,
                           double tol = kDefaultSectorTolerance);

// (2^order v_h2 - v_h) / (2^order - 1).
double richardson(double value_h, double value_h2, int order = 2);

struct ExtrapolatedSolve {
  SpectrumEntry entry;
  double coarse_energy = 0.0;
  double fine_energy = 0.0;
  RadialGrid coarse_grid;
};

// Solves on `cells` and 2 * `cells` with the same extent and Richardson
// extrapolates. r_max <= 0 selects default_radial_extent.
ExtrapolatedSolve solve_sector_extrapolated(const PhysicalParams& params, int m,
                                            int n_r, int cells = 2000,
                                            double r_max = 0.0);

// Runs solve_sector_extrapolated on every entry's sector, using up to
// `threads` workers (0 picks the hardware concurrency). Output order matches
// input order.
std::vector<SpectrumEntry> solve_sectors(const PhysicalParams& params,
                                         const std::vector<SpectrumEntry>& sectors,
                                         int cells = 2000, double r_max = 0.0,
                                         int threads = 0);

struct LiftDiagnostics {
  // Fraction of the radial norm lying outside the inscribed disc of the box.
  double outside_fraction = 0.0;
  bool truncated = false;
};

// Builds (F e^{i m theta}, G e^{i (m+1) theta}) on the 2D grid: F by cubic
// interpolation from the radial nodes (extended through the origin by the
// parity (-1)^m), and the lower component as B^dag(upper) / (E + M), which is
// -i (F' - m F / r) e^{i (m+1) theta} / (E + M). Unit norm on the grid.
SpinorField lift_to_grid(const RadialEigenpair& pair, double energy,
                         const PhysicalParams& params, const Grid2D& grid,
                         LiftDiagnostics* diagnostics = nullptr);

// Cubic interpolation of the radial profile at radius r >= 0.
double interpolate_profile(const RadialEigenpair& pair, double r);

// ||G|| / ||F|| in the radial measure, G = -i (F' - m F / r) / (E + M).
double lower_to_upper_ratio(const RadialEigenpair& pair, double energy,
                            const PhysicalParams& params);

}  // namespace dirac2d
