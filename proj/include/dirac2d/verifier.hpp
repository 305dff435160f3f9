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

// Named residual checks for every conserved quantity and identity, with
// calibrated thresholds, grid-convergence studies, the dense cross-check and
// non-relativistic sweeps.

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirac2d/fixtures.hpp"
#include "dirac2d/grid.hpp"
#include "dirac2d/operator.hpp"
#include "dirac2d/spectra.hpp"
#include "dirac2d/states.hpp"

namespace dirac2d {

// A raw residual before grading.
struct Residual {
  std::string name;
  std::string state;
  int grid = 0;
  double value = 0.0;
  // False for residuals measured on lifted eigenstates.
  bool fixed_state = true;
  // Residual reachable by rounding alone (see rounding_response); 0 when not
  // measured.
  double rounding_level = 0.0;
};

// pass <=> residual <= threshold.
struct CheckResult {
  std::string name;
  std::string state;
  int grid = 0;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

// A relation checked in two forms: as printed and as corrected. Reported
// separately; never gating.
struct Discrepancy {
  std::string name;
  std::string state;
  int grid = 0;
  double residual_as_printed = 0.0;
  double residual_corrected = 0.0;
  std::string note;
};

// A bound state lifted from the radial solver onto the 2D grid.
struct Eigenstate {
  std::string label;
  int n = 0;
  int m = 0;
  int n_r = 0;
  double energy = 0.0;
  SpinorField field;
  // Share of the radial norm outside the inscribed disc of the box.
  double outside_fraction = 0.0;
  bool truncated = false;
};

inline constexpr int kLiftRadialCells = 32000;

// Solves sector (m, n_r) on {2000, 4000} cells with Richardson extrapolation
// for the energy, then takes the profile on `radial_cells` cells at that
// energy and lifts it.
Eigenstate lift_eigenstate(const PhysicalParams& params, int m, int n_r,
                           const Grid2D& grid,
                           int radial_cells = kLiftRadialCells);

// Every sector with n <= n_max.
std::vector<Eigenstate> lift_eigenstates(const PhysicalParams& params, int n_max,
                                         const Grid2D& grid,
                                         int radial_cells = kLiftRadialCells);

// Terms c_j O_j of an identity sum_j c_j O_j = 0.
struct RelationTerm {
  Complex coefficient;
  MatrixFreeOperator op;
};

// ||sum_j c_j O_j phi|| / sum_j |c_j| ||O_j phi||; 0 when every term
// vanishes.
double relation_residual(std::span<const RelationTerm> terms, const ScalarField& phi);
double relation_residual(std::span<const RelationTerm> terms, const SpinorField& phi);

// ||[X, H] psi|| / (||X psi|| + ||H psi||).
double conservation_residual(const MatrixFreeOperator& x,
                             const MatrixFreeOperator& h, const SpinorField& psi);

// Residual producers. Standard-family checks use relation_residual;
// eigenstate checks are ||(...) psi|| / ||psi|| in units where the
// generators are normalized (A_i for SO(3); sqrt(w) Q_i and L/2 for SU(2)).
std::vector<Residual> conservation_residuals(const PhysicalParams& params,
                                             const StateFamily& family);
std::vector<Residual> block_condition_residuals(
    const PhysicalParams& params, const StateFamily& family,
    std::vector<Discrepancy>* discrepancies = nullptr);
std::vector<Residual> algebra_residuals(const PhysicalParams& params,
                                        const StateFamily& family,
                                        std::span<const Eigenstate> eigenstates);
std::vector<Residual> casimir_residuals(const PhysicalParams& params,
                                        const StateFamily& family,
                                        std::span<const Eigenstate> eigenstates);

// Casimir eigenvalue on a level: j(j+1), j = (n-1)/2 (Coulomb) or s(s+1),
// s = n/2 (oscillator).
double casimir_target(Potential potential, int n);
// Rayleigh quotient of the Casimir operator on a lifted eigenstate:
// sum_i ||A_i psi||^2 / ||psi||^2 (SO(3)) or
// (w (||Q1 psi||^2 + ||Q3 psi||^2) + ||L psi||^2 / 4) / ||psi||^2 (SU(2)).
double measured_casimir(const PhysicalParams& params, const Eigenstate& state);

// Grades residuals against the table. Missing thresholds raise
// ErrorCode::kInvalidArgument.
std::vector<CheckResult> grade(std::span<const Residual> residuals,
                               Potential potential, const ThresholdTable& table);

struct VerifyOptions {
  PhysicalParams params;
  int grid = 256;
  double box = 40.0;
  std::uint64_t seed = 42;
  // Highest level whose sectors are lifted for eigenstate checks; < 0 picks
  // 3 (Coulomb) or 2 (oscillator).
  int eigen_n_max = -1;
  int radial_cells = kLiftRadialCells;
  int threads = 0;
};

struct SuiteResiduals {
  std::vector<Residual> residuals;
  std::vector<Discrepancy> discrepancies;
  // One line per lifted eigenstate whose profile is cut by the box.
  std::vector<std::string> warnings;
};

// conservation, block conditions, algebra and Casimir residuals at one grid.
SuiteResiduals run_identity_suite(const VerifyOptions& options);

std::vector<CheckResult> check_conservation(const PhysicalParams& params,
                                            const StateFamily& family,
                                            const ThresholdTable& table);
std::vector<CheckResult> check_block_conditions(const PhysicalParams& params,
                                                const StateFamily& family,
                                                const ThresholdTable& table);
std::vector<CheckResult> check_algebra(const PhysicalParams& params,
                                       const StateFamily& family,
                                       std::span<const Eigenstate> eigenstates,
                                       const ThresholdTable& table);
std::vector<CheckResult> check_casimir(const PhysicalParams& params,
                                       const StateFamily& family,
                                       std::span<const Eigenstate> eigenstates,
                                       const ThresholdTable& table);

// Rounding level of a relation on phi: a first-order error field is carried
// alongside every term. phi starts with uniform noise of norm eps ||phi||;
// each elementary stage adds noise of norm eps times its output norm, and a
// Fourier multiplier also passes forward-transform noise through its symbol.
// The level is kRoundingSafety times the norm of the combined error field,
// normalized like the residual.
inline constexpr double kRoundingSafety = 10.0;
inline constexpr std::uint64_t kRoundingNoiseSeed = 0x2d0c5eedULL;

double rounding_response(std::span<const RelationTerm> terms, const ScalarField& phi);
double rounding_response(std::span<const RelationTerm> terms, const SpinorField& phi);

struct ConvergenceRow {
  int grid = 0;
  double residual = 0.0;
  // residual / previous residual; absent on the first row.
  std::optional<double> ratio;
  double rounding_level = 0.0;
};

struct ConvergenceSeries {
  std::string name;
  std::string state;
  // True when the state is a fixed analytic function (standard family), so
  // rows at different N sample the same continuum quantity.
  bool fixed_state = true;
  std::vector<ConvergenceRow> rows;
  // Every row at or below its rounding level.
  bool at_rounding_level = false;
  // Each row is below its predecessor or at rounding level.
  bool decreasing = false;
};

// Runs the identity suite at each grid size (same box and seed).
std::vector<ConvergenceSeries> convergence_study(const VerifyOptions& options,
                                                 std::span<const int> grids);
// Single check; `state` empty selects the first state that carries it.
std::vector<ConvergenceRow> convergence_study(const std::string& check,
                                              const std::string& state,
                                              const VerifyOptions& options,
                                              std::span<const int> grids);
void classify_series(ConvergenceSeries& series);

// Writes thresholds for every residual of the suite at each grid.
void calibrate(const VerifyOptions& options, std::span<const int> grids,
               ThresholdTable& table);

inline constexpr double kDenseTolerance = 1e-12;

// Dense materialization versus matrix-free action on `states` random states
// for every operator kind of the potential and the scalar building blocks,
// plus commutators with H computed both ways. Residual per operator is the
// worst relative difference over the states.
std::vector<CheckResult> dense_crosscheck(const PhysicalParams& params, int grid,
                                          double box, std::uint64_t seed,
                                          int states = 20);

struct RatioRow {
  double parameter = 0.0;
  double energy = 0.0;
  double ratio = 0.0;
};

// ||G|| / ||F|| of level n along a sweep: Coulomb k strictly decreasing at
// fixed M, oscillator M strictly increasing at fixed stiffness M omega^2.
std::vector<RatioRow> spinor_ratio_sweep(const PhysicalParams& params, int n,
                                         std::span<const double> sweep);

// Sector of level n with the smallest |m| >= 0.
std::pair<int, int> representative_sector(Potential potential, int n);

bool strictly_decreasing(std::span<const double> values);

}  // namespace dirac2d
