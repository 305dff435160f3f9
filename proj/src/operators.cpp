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

#include "dirac2d/operators.hpp"

#include <cmath>

#include "dirac2d/error.hpp"

namespace dirac2d {

namespace ops {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr auto kScalar = OperatorShape::kScalar;

void require_vector_index(int i) {
  require(i == 1 || i == 2, "vector component index must be 1 or 2");
}

void require_tensor_index(int i) {
  require(i == 1 || i == 3, "tensor component index must be 1 or 3");
}

}  // namespace

MatrixFreeOperator p1() {
  return MatrixFreeOperator::fourier("p1", [](double a, double) { return Complex(a); });
}

MatrixFreeOperator p2() {
  return MatrixFreeOperator::fourier("p2", [](double, double b) { return Complex(b); });
}

MatrixFreeOperator p_squared() {
  return MatrixFreeOperator::fourier(
      "p^2", [](double a, double b) { return Complex(a * a + b * b); });
}

MatrixFreeOperator inverse_p_squared() {
  return MatrixFreeOperator::fourier(
      "p^-2", [](double a, double b) { return Complex(1.0 / (a * a + b * b)); },
      /*singular_at_zero=*/true);
}

MatrixFreeOperator ladder_b() {
  return MatrixFreeOperator::fourier(
      "B", [](double a, double b) { return Complex(a, -b); });
}

MatrixFreeOperator ladder_b_dagger() {
  return MatrixFreeOperator::fourier(
      "B+", [](double a, double b) { return Complex(a, b); });
}

MatrixFreeOperator x1() {
  return MatrixFreeOperator::position("x1", [](double a, double) { return Complex(a); });
}

MatrixFreeOperator x2() {
  return MatrixFreeOperator::position("x2", [](double, double b) { return Complex(b); });
}

MatrixFreeOperator orbital_l() {
  return (x1() * p2() - x2() * p1()).with_label("l");
}

MatrixFreeOperator unit_radial(int i) {
  require_vector_index(i);
  return MatrixFreeOperator::position(
      i == 1 ? "x1/r" : "x2/r", [i](double a, double b) {
        return Complex((i == 1 ? a : b) / std::hypot(a, b));
      });
}

MatrixFreeOperator coulomb_potential(double k) {
  return MatrixFreeOperator::position(
      "-k/r", [k](double a, double b) { return Complex(-k / std::hypot(a, b)); });
}

MatrixFreeOperator oscillator_potential(double mass, double omega) {
  const double half_stiffness = 0.5 * mass * omega * omega;
  return MatrixFreeOperator::position(
      "M w^2 r^2/2", [half_stiffness](double a, double b) {
        return Complex(half_stiffness * (a * a + b * b));
      });
}

MatrixFreeOperator potential(const PhysicalParams& params) {
  params.validate();
  if (params.potential == Potential::kCoulomb) return coulomb_potential(params.k);
  return oscillator_potential(params.mass, params.omega);
}

MatrixFreeOperator runge_lenz_f(int i) {
  require_vector_index(i);
  const auto l = orbital_l();
  if (i == 1) return (Complex(2.0) * (p2() * l) - kI * p1()).with_label("f1");
  return (Complex(-2.0) * (p1() * l) - kI * p2()).with_label("f2");
}

MatrixFreeOperator runge_lenz(int i, const PhysicalParams& params) {
  require(params.potential == Potential::kCoulomb && params.k > 0.0,
          "Runge-Lenz vector needs Coulomb parameters");
  const double scale = 1.0 / (2.0 * params.mass * params.k);
  return (Complex(scale) * runge_lenz_f(i) - unit_radial(i))
      .with_label(i == 1 ? "R1" : "R2");
}

MatrixFreeOperator tensor_rr(int i) {
  require_tensor_index(i);
  if (i == 1)
    return MatrixFreeOperator::position("x1x2", [](double a, double b) { return Complex(a * b); });
  return MatrixFreeOperator::position(
      "(x1^2-x2^2)/2", [](double a, double b) { return Complex(0.5 * (a * a - b * b)); });
}

MatrixFreeOperator tensor_pp(int i) {
  require_tensor_index(i);
  if (i == 1)
    return MatrixFreeOperator::fourier("p1p2", [](double a, double b) { return Complex(a * b); });
  return MatrixFreeOperator::fourier(
      "(p1^2-p2^2)/2", [](double a, double b) { return Complex(0.5 * (a * a - b * b)); });
}

MatrixFreeOperator oscillator_tensor_j(int i, const PhysicalParams& params) {
  require(params.potential == Potential::kOscillator && params.omega > 0.0,
          "oscillator tensor needs oscillator parameters");
  const double mw = params.mass * params.omega;
  return (Complex(0.5 / mw) * tensor_pp(i) + Complex(0.5 * mw) * tensor_rr(i))
      .with_label(i == 1 ? "J1" : "J3");
}

}  // namespace ops

namespace {

constexpr auto kScalar = OperatorShape::kScalar;

}  // namespace

ConservedBlocks coulomb_blocks(int i, const PhysicalParams& params) {
  params.validate();
  require(params.potential == Potential::kCoulomb,
          "Coulomb generators need Coulomb parameters");
  require(i == 1 || i == 2, "Coulomb generator index must be 1 or 2");
  const double k = params.k;
  const double mass = params.mass;
  auto k_x_over_r2 = MatrixFreeOperator::position(
      i == 1 ? "k x1/r^2" : "k x2/r^2", [i, k](double a, double b) {
        return Complex(k * (i == 1 ? a : b) / (a * a + b * b));
      });
  auto q11 = Complex(2.0 * mass) * ops::runge_lenz(i, params) + k_x_over_r2;
  auto q12 = Complex(-1.0) * ops::unit_radial(i);
  auto numerator = Complex(1.0 / k) * ops::runge_lenz_f(i);
  auto q22 = numerator * ops::inverse_p_squared();
  return {q11, q12, q12, q22, numerator};
}

ConservedBlocks oscillator_blocks(int i, const PhysicalParams& params) {
  params.validate();
  require(params.potential == Potential::kOscillator,
          "oscillator generators need oscillator parameters");
  require(i == 1 || i == 3, "oscillator generator index must be 1 or 3");
  const double omega = params.omega;
  const double mass = params.mass;
  auto rr = ops::tensor_rr(i);
  auto q11 = Complex(4.0 / omega) * ops::oscillator_tensor_j(i, params) +
             rr * ops::oscillator_potential(mass, omega);
  auto numerator = Complex(2.0 / (mass * omega * omega)) * ops::tensor_pp(i);
  auto q22 = numerator * ops::inverse_p_squared();
  return {q11, rr, rr, q22, numerator};
}

MatrixFreeOperator assemble_conserved(const ConservedBlocks& blocks,
                                      std::string label) {
  const auto b = ops::ladder_b();
  const auto bd = ops::ladder_b_dagger();
  // Lower-right entry applies B, then 1/p^2, then the numerator, then B^dag,
  // so 1/p^2 only ever sees input with a vanishing zero mode.
  return MatrixFreeOperator::block(blocks.q11, blocks.q12 * b, bd * blocks.q21,
                                   bd * blocks.q22 * b, std::move(label));
}

namespace {

MatrixFreeOperator hamiltonian(const PhysicalParams& params) {
  params.validate();
  const auto mass = MatrixFreeOperator::identity(kScalar);
  return MatrixFreeOperator::block(
      Complex(params.mass) * mass + ops::potential(params), ops::ladder_b(),
      ops::ladder_b_dagger(), Complex(-params.mass) * mass,
      params.potential == Potential::kCoulomb ? "H_h" : "H_o");
}

MatrixFreeOperator deformed_l() {
  const auto l = ops::orbital_l();
  return MatrixFreeOperator::block(
      l, std::nullopt, std::nullopt,
      ops::ladder_b_dagger() * l * ops::inverse_p_squared() * ops::ladder_b(), "L");
}

double require_energy(OperatorKind kind, std::optional<double> energy) {
  if (!energy)
    fail(ErrorCode::kInvalidArgument,
         "operator " + to_string(kind) + " needs an eigenvalue E");
  return *energy;
}

}  // namespace

double so3_normalization(double energy, const PhysicalParams& params) {
  require(params.potential == Potential::kCoulomb && params.k > 0.0,
          "SO(3) normalization needs Coulomb parameters");
  const double gap = params.mass * params.mass - energy * energy;
  require(std::isfinite(energy) && gap > 0.0,
          "SO(3) normalization needs |E| < M");
  return params.k / (2.0 * std::sqrt(gap));
}

double su2_casimir_weight(double energy, const PhysicalParams& params) {
  require(params.potential == Potential::kOscillator && params.omega > 0.0,
          "SU(2) Casimir needs oscillator parameters");
  require(std::isfinite(energy) && energy > -params.mass,
          "SU(2) Casimir needs E > -M");
  return params.mass * params.omega * params.omega /
         (8.0 * (energy + params.mass));
}

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::kH: return "H";
    case OperatorKind::kL: return "L";
    case OperatorKind::kQh1: return "Qh1";
    case OperatorKind::kQh2: return "Qh2";
    case OperatorKind::kQo1: return "Qo1";
    case OperatorKind::kQo3: return "Qo3";
    case OperatorKind::kA1: return "A1";
    case OperatorKind::kA2: return "A2";
    case OperatorKind::kA3: return "A3";
    case OperatorKind::kCasimirSO3: return "CasimirSO3";
    case OperatorKind::kCasimirSU2: return "CasimirSU2";
    case OperatorKind::kR1: return "R1";
    case OperatorKind::kR2: return "R2";
    case OperatorKind::kF1: return "f1";
    case OperatorKind::kF2: return "f2";
    case OperatorKind::kJ1: return "J1";
    case OperatorKind::kJ3: return "J3";
  }
  return "?";
}

const std::vector<OperatorKind>& all_operator_kinds() {
  static const std::vector<OperatorKind> kinds = {
      OperatorKind::kH,   OperatorKind::kL,   OperatorKind::kQh1,
      OperatorKind::kQh2, OperatorKind::kQo1, OperatorKind::kQo3,
      OperatorKind::kA1,  OperatorKind::kA2,  OperatorKind::kA3,
      OperatorKind::kCasimirSO3, OperatorKind::kCasimirSU2,
      OperatorKind::kR1,  OperatorKind::kR2,  OperatorKind::kF1,
      OperatorKind::kF2,  OperatorKind::kJ1,  OperatorKind::kJ3};
  return kinds;
}

OperatorKind parse_operator_kind(const std::string& name) {
  for (auto kind : all_operator_kinds())
    if (to_string(kind) == name) return kind;
  fail(ErrorCode::kInvalidArgument, "unknown operator '" + name + "'");
}

bool requires_energy(OperatorKind kind) {
  return kind == OperatorKind::kA1 || kind == OperatorKind::kA2 ||
         kind == OperatorKind::kCasimirSO3 || kind == OperatorKind::kCasimirSU2;
}

bool available_for(OperatorKind kind, Potential potential) {
  switch (kind) {
    case OperatorKind::kQh1:
    case OperatorKind::kQh2:
    case OperatorKind::kA1:
    case OperatorKind::kA2:
    case OperatorKind::kA3:
    case OperatorKind::kCasimirSO3:
    case OperatorKind::kR1:
    case OperatorKind::kR2:
      return potential == Potential::kCoulomb;
    case OperatorKind::kQo1:
    case OperatorKind::kQo3:
    case OperatorKind::kCasimirSU2:
    case OperatorKind::kJ1:
    case OperatorKind::kJ3:
      return potential == Potential::kOscillator;
    default:
      return true;
  }
}

MatrixFreeOperator build_operator(OperatorKind kind,
                                  const PhysicalParams& params,
                                  std::optional<double> energy) {
  params.validate();
  if (!available_for(kind, params.potential))
    fail(ErrorCode::kInvalidArgument,
         "operator " + to_string(kind) + " is not defined for the " +
             to_string(params.potential) + " potential");
  switch (kind) {
    case OperatorKind::kH:
      return hamiltonian(params);
    case OperatorKind::kL:
    case OperatorKind::kA3:
      return deformed_l();
    case OperatorKind::kQh1:
      return assemble_conserved(coulomb_blocks(1, params), "Qh1");
    case OperatorKind::kQh2:
      return assemble_conserved(coulomb_blocks(2, params), "Qh2");
    case OperatorKind::kQo1:
      return assemble_conserved(oscillator_blocks(1, params), "Qo1");
    case OperatorKind::kQo3:
      return assemble_conserved(oscillator_blocks(3, params), "Qo3");
    case OperatorKind::kA1:
    case OperatorKind::kA2: {
      const double s = so3_normalization(require_energy(kind, energy), params);
      const int i = kind == OperatorKind::kA1 ? 1 : 2;
      return (Complex(s) * assemble_conserved(coulomb_blocks(i, params),
                                              i == 1 ? "Qh1" : "Qh2"))
          .with_label(to_string(kind));
    }
    case OperatorKind::kCasimirSO3: {
      const double e = require_energy(kind, energy);
      const auto a1 = build_operator(OperatorKind::kA1, params, e);
      const auto a2 = build_operator(OperatorKind::kA2, params, e);
      const auto a3 = deformed_l();
      return (a1 * a1 + a2 * a2 + a3 * a3).with_label("CasimirSO3");
    }
    case OperatorKind::kCasimirSU2: {
      const double w = su2_casimir_weight(require_energy(kind, energy), params);
      const auto q1 = assemble_conserved(oscillator_blocks(1, params), "Qo1");
      const auto q3 = assemble_conserved(oscillator_blocks(3, params), "Qo3");
      const auto l = deformed_l();
      return (Complex(w) * (q1 * q1 + q3 * q3) + Complex(0.25) * (l * l))
          .with_label("CasimirSU2");
    }
    case OperatorKind::kR1:
      return ops::runge_lenz(1, params);
    case OperatorKind::kR2:
      return ops::runge_lenz(2, params);
    case OperatorKind::kF1:
      return ops::runge_lenz_f(1);
    case OperatorKind::kF2:
      return ops::runge_lenz_f(2);
    case OperatorKind::kJ1:
      return ops::oscillator_tensor_j(1, params);
    case OperatorKind::kJ3:
      return ops::oscillator_tensor_j(3, params);
  }
  fail(ErrorCode::kInvalidArgument, "unhandled operator kind");
}

ScalarField apply_orbital_l(const ScalarField& field) {
  const ScalarField d2 = ops::p2().apply(field);
  const ScalarField d1 = ops::p1().apply(field);
  return ops::x1().apply(d2) - ops::x2().apply(d1);
}

}  // namespace dirac2d
