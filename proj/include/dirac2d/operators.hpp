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

// Every operator of the 2D equal-scalar-vector Dirac problem as a
// matrix-free grid operator.
//
// Conventions: p = -i grad, B = p1 - i p2, B^dag = p1 + i p2, l = x1 p2 - x2 p1.
// Spinor block operators act on (upper, lower) with the potential only in
// the upper-left entry of H.

#include <optional>
#include <string>

#include "dirac2d/operator.hpp"
#include "dirac2d/spectra.hpp"

namespace dirac2d {

namespace ops {

MatrixFreeOperator p1();
MatrixFreeOperator p2();
MatrixFreeOperator p_squared();
// 1/p^2 with the p = 0 mode set to 0.
MatrixFreeOperator inverse_p_squared();
// B = p1 - i p2.
MatrixFreeOperator ladder_b();
// B^dag = p1 + i p2.
MatrixFreeOperator ladder_b_dagger();

MatrixFreeOperator x1();
MatrixFreeOperator x2();
MatrixFreeOperator orbital_l();
// x_i / r for i in {1, 2}.
MatrixFreeOperator unit_radial(int i);

MatrixFreeOperator coulomb_potential(double k);
MatrixFreeOperator oscillator_potential(double mass, double omega);
MatrixFreeOperator potential(const PhysicalParams& params);

// f_1 = 2 p2 l - i p1, f_2 = -2 p1 l - i p2.
MatrixFreeOperator runge_lenz_f(int i);
// R_i = f_i / (2 M k) - x_i / r.
MatrixFreeOperator runge_lenz(int i, const PhysicalParams& params);
// [rr]_1 = x1 x2, [rr]_3 = (x1^2 - x2^2) / 2.
MatrixFreeOperator tensor_rr(int i);
// [pp]_1 = p1 p2, [pp]_3 = (p1^2 - p2^2) / 2.
MatrixFreeOperator tensor_pp(int i);
// J_i = ([pp]_i / (M omega) + M omega [rr]_i) / 2, i in {1, 3}.
MatrixFreeOperator oscillator_tensor_j(int i, const PhysicalParams& params);

}  // namespace ops

// Scalar entries of a conserved quantity of the form
//   Q = [[Q11, Q12 B], [B^dag Q21, B^dag Q22 B]].
// q22 already carries its 1/p^2 factor, composed as numerator after 1/p^2.
struct ConservedBlocks {
  MatrixFreeOperator q11;
  MatrixFreeOperator q12;
  MatrixFreeOperator q21;
  MatrixFreeOperator q22;
  // Numerator of q22 (q22 = q22_numerator 1/p^2).
  MatrixFreeOperator q22_numerator;
};

// Coulomb solution, i in {1, 2}:
//   Q11 = 2 M R_i + k x_i / r^2, Q12 = Q21 = -x_i / r, Q22 = f_i / (k p^2).
ConservedBlocks coulomb_blocks(int i, const PhysicalParams& params);
// Oscillator solution, i in {1, 3}:
//   Q11 = 4 J_i / omega + [rr]_i V, Q12 = Q21 = [rr]_i,
//   Q22 = 2 [pp]_i / (M omega^2 p^2).
ConservedBlocks oscillator_blocks(int i, const PhysicalParams& params);

MatrixFreeOperator assemble_conserved(const ConservedBlocks& blocks,
                                      std::string label);

enum class OperatorKind {
  kH,
  kL,
  kQh1,
  kQh2,
  kQo1,
  kQo3,
  kA1,
  kA2,
  kA3,
  kCasimirSO3,
  kCasimirSU2,
  kR1,
  kR2,
  kF1,
  kF2,
  kJ1,
  kJ3,
};

std::string to_string(OperatorKind kind);
OperatorKind parse_operator_kind(const std::string& name);
const std::vector<OperatorKind>& all_operator_kinds();
bool requires_energy(OperatorKind kind);
// True if the operator is defined for the potential: Coulomb-only (Qh, A,
// CasimirSO3, R) or oscillator-only (Qo, CasimirSU2, J); H, L, f for both.
bool available_for(OperatorKind kind, Potential potential);

// Builds the operator exactly as defined. Functions of H (the A_i
// normalization and the 1/(H + M) factor of the SU(2) Casimir) are replaced
// by their value at `energy`, so the result is only meaningful on the
// corresponding eigenspace.
MatrixFreeOperator build_operator(OperatorKind kind,
                                  const PhysicalParams& params,
                                  std::optional<double> energy = std::nullopt);

// (-4 (E^2 - M^2) / k^2)^{-1/2}.
double so3_normalization(double energy, const PhysicalParams& params);
// M omega^2 / (8 (E + M)), the weight of (Q^o_1)^2 + (Q^o_3)^2 in the
// SU(2) Casimir.
double su2_casimir_weight(double energy, const PhysicalParams& params);

ScalarField apply_orbital_l(const ScalarField& field);

}  // namespace dirac2d
