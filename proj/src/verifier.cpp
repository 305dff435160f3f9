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

#include "dirac2d/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "dirac2d/dense.hpp"
#include "dirac2d/error.hpp"
#include "dirac2d/operators.hpp"
#include "dirac2d/parallel.hpp"
#include "dirac2d/radial.hpp"

namespace dirac2d {
namespace {

using K = OperatorKind;
constexpr Complex kI{0.0, 1.0};

MatrixFreeOperator op(K kind, const PhysicalParams& params,
                      std::optional<double> energy = std::nullopt) {
  return build_operator(kind, params, energy);
}

MatrixFreeOperator spinor_identity() {
  return MatrixFreeOperator::identity(OperatorShape::kSpinor);
}

// Appends the two terms of c [a, b].
void add_commutator(std::vector<RelationTerm>& terms, Complex c,
                    const MatrixFreeOperator& a, const MatrixFreeOperator& b) {
  terms.push_back({c, a * b});
  terms.push_back({-c, b * a});
}

ScalarField white_noise(const Grid2D& grid, SplitMix64& rng) {
  ScalarField f(grid);
  // Rounding errors are uniform within half an ulp.
  for (auto& v : f.values()) v = Complex(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
  f *= 1.0 / f.norm();
  return f;
}

struct Measured {
  double value = 0.0;
  double rounding = 0.0;
};

constexpr double kEps = std::numeric_limits<double>::epsilon();

ScalarField unit_noise(const ScalarField& like, SplitMix64& rng) {
  return white_noise(like.grid(), rng);
}

SpinorField unit_noise(const SpinorField& like, SplitMix64& rng) {
  ScalarField upper = white_noise(like.grid(), rng);
  ScalarField lower = white_noise(like.grid(), rng);
  SpinorField out(std::move(upper), std::move(lower));
  out *= 1.0 / out.norm();
  return out;
}

// A value with a first-order estimate of its accumulated rounding error.
template <typename Field>
struct Tracked {
  Field value;
  Field error;
};

template <typename Field>
void add_stage_rounding(Tracked<Field>& t, SplitMix64& rng) {
  t.error.axpy(kEps * t.value.norm(), unit_noise(t.value, rng));
}

Tracked<ScalarField> apply_tracked(const MatrixFreeOperator& op, const Tracked<ScalarField>& in,
                                   SplitMix64& rng);

Tracked<SpinorField> apply_tracked(const MatrixFreeOperator& op, const Tracked<SpinorField>& in,
                                   SplitMix64& rng);

// Every elementary stage rounds its output to relative eps. A Fourier
// multiplier also rounds its input in the forward transform, and that error
// passes through the symbol.
Tracked<ScalarField> apply_tracked(const MatrixFreeOperator& op, const Tracked<ScalarField>& in,
                                   SplitMix64& rng) {
  using Kind = MatrixFreeOperator::Kind;
  switch (op.kind()) {
    case Kind::kFourier: {
      ScalarField err = in.error;
      err.axpy(kEps * in.value.norm(), unit_noise(in.value, rng));
      Tracked<ScalarField> out{op.apply(in.value), op.apply(err)};
      add_stage_rounding(out, rng);
      return out;
    }
    case Kind::kPosition: {
      Tracked<ScalarField> out{op.apply(in.value), op.apply(in.error)};
      add_stage_rounding(out, rng);
      return out;
    }
    case Kind::kIdentity:
      return in;
    case Kind::kProduct: {
      Tracked<ScalarField> out = in;
      const auto f = op.factors();
      for (auto it = f.rbegin(); it != f.rend(); ++it) out = apply_tracked(*it, out, rng);
      return out;
    }
    case Kind::kSum: {
      Tracked<ScalarField> out{ScalarField(in.value.grid()), ScalarField(in.value.grid())};
      for (const auto& t : op.terms()) {
        const auto part = apply_tracked(t.op, in, rng);
        out.value.axpy(t.coefficient, part.value);
        out.error.axpy(t.coefficient, part.error);
      }
      add_stage_rounding(out, rng);
      return out;
    }
    case Kind::kBlock:
      break;
  }
  fail(ErrorCode::kShapeMismatch, "block operator applied to a scalar field");
}

Tracked<SpinorField> apply_tracked(const MatrixFreeOperator& op, const Tracked<SpinorField>& in,
                                   SplitMix64& rng) {
  using Kind = MatrixFreeOperator::Kind;
  const Grid2D& grid = in.value.grid();
  switch (op.kind()) {
    case Kind::kIdentity:
      return in;
    case Kind::kProduct: {
      Tracked<SpinorField> out = in;
      const auto f = op.factors();
      for (auto it = f.rbegin(); it != f.rend(); ++it) out = apply_tracked(*it, out, rng);
      return out;
    }
    case Kind::kSum: {
      Tracked<SpinorField> out{SpinorField(grid), SpinorField(grid)};
      for (const auto& t : op.terms()) {
        const auto part = apply_tracked(t.op, in, rng);
        out.value.axpy(t.coefficient, part.value);
        out.error.axpy(t.coefficient, part.error);
      }
      add_stage_rounding(out, rng);
      return out;
    }
    case Kind::kBlock: {
      Tracked<SpinorField> out{SpinorField(grid), SpinorField(grid)};
      const Tracked<ScalarField> upper{in.value.upper, in.error.upper};
      const Tracked<ScalarField> lower{in.value.lower, in.error.lower};
      const auto accumulate = [&](int row, int col, const Tracked<ScalarField>& src) {
        const auto& entry = op.block_entry(row, col);
        if (!entry) return;
        const auto part = apply_tracked(*entry, src, rng);
        (row == 0 ? out.value.upper : out.value.lower) += part.value;
        (row == 0 ? out.error.upper : out.error.lower) += part.error;
      };
      accumulate(0, 0, upper);
      accumulate(0, 1, lower);
      accumulate(1, 0, upper);
      accumulate(1, 1, lower);
      add_stage_rounding(out, rng);
      return out;
    }
    default:
      break;
  }
  fail(ErrorCode::kShapeMismatch, "scalar operator applied to a spinor field");
}

// Residual ||sum_j c_j O_j phi|| / sum_j |c_j| ||O_j phi||. The rounding
// level propagates input_error (default: white noise of norm eps ||phi||)
// and per-stage rounding through every term and normalizes the same way.
template <typename Field>
Measured measure(std::span<const RelationTerm> terms, const Field& phi, bool rounding,
                 const Field* input_error = nullptr) {
  Field sum(phi.grid());
  Field error(phi.grid());
  double scale = 0.0;
  if (rounding) {
    SplitMix64 rng(kRoundingNoiseSeed);
    Tracked<Field> in{phi, Field(phi.grid())};
    if (input_error != nullptr) {
      in.error = *input_error;
    } else {
      in.error.axpy(kEps * phi.norm(), unit_noise(phi, rng));
    }
    for (const auto& t : terms) {
      const auto out = apply_tracked(t.op, in, rng);
      scale += std::abs(t.coefficient) * out.value.norm();
      sum.axpy(t.coefficient, out.value);
      error.axpy(t.coefficient, out.error);
    }
  } else {
    for (const auto& t : terms) {
      const Field v = t.op.apply(phi);
      scale += std::abs(t.coefficient) * v.norm();
      sum.axpy(t.coefficient, v);
    }
  }
  if (scale == 0.0) return {};
  return {sum.norm() / scale, rounding ? kRoundingSafety * error.norm() / scale : 0.0};
}

// ||sum_j c_j O_j psi|| / ||psi||.
double absolute_residual(std::span<const RelationTerm> terms,
                         const SpinorField& psi) {
  SpinorField sum(psi.grid());
  for (const auto& t : terms) sum.axpy(t.coefficient, t.op.apply(psi));
  return sum.norm() / psi.norm();
}

ScalarField normalized(ScalarField f) {
  const double n = f.norm();
  require(n > 0.0, "test state vanishes");
  f *= 1.0 / n;
  return f;
}

template <typename Field>
Residual fixed_residual(const std::string& name, const std::string& state,
                        std::span<const RelationTerm> terms, const Field& phi,
                        const Field* input_noise = nullptr) {
  const Measured m = measure(terms, phi, true, input_noise);
  return {name, state, phi.grid().n(), m.value, true, m.rounding};
}

std::string sector_label(int n, int m, int n_r) {
  std::ostringstream s;
  s << "n" << n << "_m" << m << "_nr" << n_r;
  return s.str();
}

struct Relation {
  std::string name;
  std::vector<RelationTerm> terms;
};

// Identities on scalar fields for one conserved-quantity solution.
std::vector<Relation> block_relations(const PhysicalParams& params, int i,
                                      std::vector<Relation>* on_laplacian) {
  const bool coulomb = params.potential == Potential::kCoulomb;
  const auto blocks = coulomb ? coulomb_blocks(i, params) : oscillator_blocks(i, params);
  const std::string tag = (coulomb ? "Qh" : "Qo") + std::to_string(i);
  const auto v = ops::potential(params);
  const auto p2 = ops::p_squared();
  const double mass = params.mass;

  std::vector<Relation> out;
  Relation symmetry{"block.symmetry." + tag, {}};
  symmetry.terms.push_back({1.0, blocks.q12});
  symmetry.terms.push_back({-1.0, blocks.q21});
  out.push_back(std::move(symmetry));

  Relation potential{"block.potential." + tag, {}};
  add_commutator(potential.terms, 1.0, blocks.q11, v);
  add_commutator(potential.terms, 1.0, blocks.q12, p2);
  out.push_back(std::move(potential));

  Relation diagonal{"block.diagonal." + tag, {}};
  diagonal.terms.push_back({1.0, blocks.q11});
  diagonal.terms.push_back({-2.0 * mass, blocks.q12});
  diagonal.terms.push_back({-1.0, blocks.q12 * v});
  diagonal.terms.push_back({-1.0, blocks.q22 * p2});
  out.push_back(std::move(diagonal));

  // q22 carries 1/p^2; this relation is evaluated on p^2 phi so that no
  // zero mode reaches it.
  Relation kinetic{"block.kinetic." + tag, {}};
  add_commutator(kinetic.terms, 1.0, blocks.q12, v);
  add_commutator(kinetic.terms, 1.0, blocks.q22, p2);
  on_laplacian->push_back(std::move(kinetic));

  if (coulomb) {
    const auto f = ops::runge_lenz_f(i);
    const auto xr = Complex(-1.0) * ops::unit_radial(i);
    Relation fp{"helper.f_p2." + std::to_string(i), {}};
    add_commutator(fp.terms, 1.0, f, p2);
    out.push_back(std::move(fp));
    Relation xv{"helper.xr_v." + std::to_string(i), {}};
    add_commutator(xv.terms, 1.0, xr, v);
    out.push_back(std::move(xv));
    Relation rl{"helper.runge_lenz." + std::to_string(i), {}};
    add_commutator(rl.terms, 1.0 / (2.0 * mass * params.k), f, v);
    add_commutator(rl.terms, 1.0 / (2.0 * mass), xr, p2);
    out.push_back(std::move(rl));
  } else {
    const auto pp = ops::tensor_pp(i);
    const auto rr = ops::tensor_rr(i);
    Relation pp2{"helper.pp_p2." + std::to_string(i), {}};
    add_commutator(pp2.terms, 1.0, pp, p2);
    out.push_back(std::move(pp2));
    Relation rv{"helper.rr_v." + std::to_string(i), {}};
    add_commutator(rv.terms, 1.0, rr, v);
    out.push_back(std::move(rv));
    Relation tensor{"helper.tensor." + std::to_string(i), {}};
    add_commutator(tensor.terms, 1.0 / (2.0 * mass * params.omega), pp, v);
    add_commutator(tensor.terms, params.omega / 4.0, rr, p2);
    out.push_back(std::move(tensor));
  }
  return out;
}

// The tensor helper with omega/2 on [[rr]_i, p^2].
std::vector<RelationTerm> tensor_relation_half(const PhysicalParams& params, int i) {
  std::vector<RelationTerm> terms;
  add_commutator(terms, 1.0 / (2.0 * params.mass * params.omega),
                 ops::tensor_pp(i), ops::potential(params));
  add_commutator(terms, params.omega / 2.0, ops::tensor_rr(i), ops::p_squared());
  return terms;
}

std::array<int, 2> generator_indices(Potential potential) {
  return potential == Potential::kCoulomb ? std::array<int, 2>{1, 2}
                                          : std::array<int, 2>{1, 3};
}

std::pair<MatrixFreeOperator, MatrixFreeOperator> generators(
    const PhysicalParams& params) {
  if (params.potential == Potential::kCoulomb)
    return {op(K::kQh1, params), op(K::kQh2, params)};
  return {op(K::kQo1, params), op(K::kQo3, params)};
}

// Algebra relations with the energy either as the operator H (energy empty)
// or as the scalar E. Each relation carries the factor converting it to
// normalized-generator units on an eigenspace.
struct ScaledRelation {
  Relation relation;
  double scale = 1.0;
};

std::vector<ScaledRelation> algebra_relations(const PhysicalParams& params,
                                              std::optional<double> energy) {
  const auto l = op(K::kL, params);
  const auto [q1, q2] = generators(params);
  const auto h = op(K::kH, params);
  const double mass = params.mass;
  const std::string prefix = energy ? "algebra.eigen." : "algebra.";
  std::vector<ScaledRelation> out;
  if (params.potential == Potential::kCoulomb) {
    const double k2 = params.k * params.k;
    const double s = energy ? so3_normalization(*energy, params) : 1.0;
    Relation r1{prefix + "L_Qh1", {}};
    add_commutator(r1.terms, 1.0, l, q1);
    r1.terms.push_back({-kI, q2});
    out.push_back({std::move(r1), s});
    Relation r2{prefix + "L_Qh2", {}};
    add_commutator(r2.terms, 1.0, l, q2);
    r2.terms.push_back({kI, q1});
    out.push_back({std::move(r2), s});
    // [Q1, Q2] + i (4/k^2)(H^2 - M^2) L.
    Relation r3{prefix + "Qh1_Qh2", {}};
    add_commutator(r3.terms, 1.0, q1, q2);
    if (energy) {
      r3.terms.push_back({kI * 4.0 / k2 * (*energy * *energy - mass * mass), l});
    } else {
      r3.terms.push_back({kI * 4.0 / k2, h * h * l});
      r3.terms.push_back({-kI * 4.0 * mass * mass / k2, l});
    }
    out.push_back({std::move(r3), s * s});
    if (energy) {
      const auto a1 = op(K::kA1, params, energy);
      const auto a2 = op(K::kA2, params, energy);
      const auto a3 = op(K::kA3, params, energy);
      const std::array<std::pair<std::string, std::array<MatrixFreeOperator, 3>>, 3>
          cyclic{{{"A1_A2", {a1, a2, a3}}, {"A2_A3", {a2, a3, a1}}, {"A3_A1", {a3, a1, a2}}}};
      for (const auto& [name, t] : cyclic) {
        Relation r{prefix + name, {}};
        add_commutator(r.terms, 1.0, t[0], t[1]);
        r.terms.push_back({-kI, t[2]});
        out.push_back({std::move(r), 1.0});
      }
    }
  } else {
    const double w2 = params.omega * params.omega;
    const double t = energy ? std::sqrt(su2_casimir_weight(*energy, params)) : 1.0;
    Relation r1{prefix + "Qo1_L", {}};
    add_commutator(r1.terms, 1.0, q1, l);
    r1.terms.push_back({-2.0 * kI, q2});
    out.push_back({std::move(r1), 0.5 * t});
    Relation r2{prefix + "L_Qo3", {}};
    add_commutator(r2.terms, 1.0, l, q2);
    r2.terms.push_back({-2.0 * kI, q1});
    out.push_back({std::move(r2), 0.5 * t});
    // [Q3, Q1] - i (4/(M w^2))(H + M) L.
    Relation r3{prefix + "Qo3_Qo1", {}};
    add_commutator(r3.terms, 1.0, q2, q1);
    const Complex c = -kI * 4.0 / (mass * w2);
    if (energy) {
      r3.terms.push_back({c * (*energy + mass), l});
    } else {
      r3.terms.push_back({c, (h + Complex(mass) * spinor_identity()) * l});
    }
    out.push_back({std::move(r3), t * t});
  }
  return out;
}

// (Q1)^2 + (Q2)^2 - ((H^2 - M^2)/k^2)(4 L^2 + 1) - (H + M)^2.
std::vector<RelationTerm> sum_of_squares_terms(const PhysicalParams& params,
                                               std::optional<double> energy) {
  const auto l = op(K::kL, params);
  const auto [q1, q2] = generators(params);
  const auto id = spinor_identity();
  const double mass = params.mass;
  const double k2 = params.k * params.k;
  std::vector<RelationTerm> terms{{1.0, q1 * q1}, {1.0, q2 * q2}};
  if (energy) {
    const double e = *energy;
    const double g = (e * e - mass * mass) / k2;
    terms.push_back({-4.0 * g, l * l});
    terms.push_back({-(g + (e + mass) * (e + mass)), id});
  } else {
    const auto h = op(K::kH, params);
    const auto h2 = h * h;
    terms.push_back({-4.0 / k2, h2 * l * l});
    terms.push_back({-1.0 / k2, h2});
    terms.push_back({4.0 * mass * mass / k2, l * l});
    terms.push_back({mass * mass / k2, id});
    terms.push_back({-1.0, h2});
    terms.push_back({-2.0 * mass, h});
    terms.push_back({-mass * mass, id});
  }
  return terms;
}

// Rounding level matching conservation_residual.
double conservation_rounding(const MatrixFreeOperator& x, const MatrixFreeOperator& h,
                             const SpinorField& psi) {
  SplitMix64 rng(kRoundingNoiseSeed);
  Tracked<SpinorField> in{psi, SpinorField(psi.grid())};
  in.error.axpy(kEps * psi.norm(), unit_noise(psi, rng));
  const auto xpsi = apply_tracked(x, in, rng);
  const auto hpsi = apply_tracked(h, in, rng);
  SpinorField error = apply_tracked(x, hpsi, rng).error;
  error -= apply_tracked(h, xpsi, rng).error;
  const double scale = xpsi.value.norm() + hpsi.value.norm();
  return scale == 0.0 ? 0.0 : kRoundingSafety * error.norm() / scale;
}

}  // namespace

double relation_residual(std::span<const RelationTerm> terms, const ScalarField& phi) {
  return measure(terms, phi, false).value;
}

double relation_residual(std::span<const RelationTerm> terms, const SpinorField& phi) {
  return measure(terms, phi, false).value;
}

double rounding_response(std::span<const RelationTerm> terms, const ScalarField& phi) {
  return measure(terms, phi, true).rounding;
}

double rounding_response(std::span<const RelationTerm> terms, const SpinorField& phi) {
  return measure(terms, phi, true).rounding;
}

double conservation_residual(const MatrixFreeOperator& x,
                             const MatrixFreeOperator& h, const SpinorField& psi) {
  const SpinorField xpsi = x.apply(psi);
  const SpinorField hpsi = h.apply(psi);
  SpinorField c = x.apply(hpsi);
  c -= h.apply(xpsi);
  const double scale = xpsi.norm() + hpsi.norm();
  return scale == 0.0 ? 0.0 : c.norm() / scale;
}

std::pair<int, int> representative_sector(Potential potential, int n) {
  require(is_valid_level(potential, n), "invalid level for this potential");
  if (potential == Potential::kCoulomb) return {0, (n - 1) / 2};
  const int m = n % 2;
  return {m, (n - m) / 2};
}

Eigenstate lift_eigenstate(const PhysicalParams& params, int m, int n_r,
                           const Grid2D& grid, int radial_cells) {
  params.validate();
  const int n = principal_number(params.potential, m, n_r);
  const double extent = default_radial_extent(params, n);
  const auto solve = solve_sector_extrapolated(params, m, n_r, 2000, extent);
  const double energy = *solve.entry.energy_numeric;
  const auto pair =
      radial_eigenpair(params, m, n_r, energy, RadialGrid{radial_cells, extent});
  LiftDiagnostics diag;
  SpinorField field = lift_to_grid(pair, energy, params, grid, &diag);
  return {sector_label(n, m, n_r), n, m, n_r, energy, std::move(field),
          diag.outside_fraction, diag.truncated};
}

std::vector<Eigenstate> lift_eigenstates(const PhysicalParams& params, int n_max,
                                         const Grid2D& grid, int radial_cells) {
  std::vector<Eigenstate> out;
  for (const auto& level : enumerate_levels(params, n_max)) {
    const auto& q = level.quantum_numbers;
    out.push_back(lift_eigenstate(params, q.m, q.n_r, grid, radial_cells));
  }
  return out;
}

std::vector<Residual> conservation_residuals(const PhysicalParams& params,
                                             const StateFamily& family) {
  const auto h = op(K::kH, params);
  std::vector<std::pair<std::string, MatrixFreeOperator>> xs{{"L", op(K::kL, params)}};
  const auto [q1, q2] = generators(params);
  const auto idx = generator_indices(params.potential);
  const std::string tag = params.potential == Potential::kCoulomb ? "Qh" : "Qo";
  xs.emplace_back(tag + std::to_string(idx[0]), q1);
  xs.emplace_back(tag + std::to_string(idx[1]), q2);
  std::vector<Residual> out;
  for (const auto& [name, x] : xs) {
    for (const auto& s : family.spinors)
      out.push_back({"conservation." + name, s.label, s.field.grid().n(),
                     conservation_residual(x, h, s.field), true,
                     conservation_rounding(x, h, s.field)});
  }
  return out;
}

std::vector<Residual> block_condition_residuals(
    const PhysicalParams& params, const StateFamily& family,
    std::vector<Discrepancy>* discrepancies) {
  std::vector<Residual> out;
  const auto p2 = ops::p_squared();
  for (int i : generator_indices(params.potential)) {
    std::vector<Relation> on_laplacian;
    const auto relations = block_relations(params, i, &on_laplacian);
    for (const auto& s : family.scalars) {
      const int n = s.field.grid().n();
      for (const auto& r : relations)
        out.push_back(fixed_residual(r.name, s.label, r.terms, s.field));
      const ScalarField raw = p2.apply(s.field);
      const ScalarField lap = normalized(raw);
      // The rounding of p^2 phi is carried into the relation.
      SplitMix64 rng(kRoundingNoiseSeed);
      Tracked<ScalarField> in{s.field, ScalarField(s.field.grid())};
      in.error.axpy(kEps * s.field.norm(), unit_noise(s.field, rng));
      ScalarField lap_noise = apply_tracked(p2, in, rng).error;
      lap_noise *= 1.0 / raw.norm();
      for (const auto& r : on_laplacian)
        out.push_back(fixed_residual(r.name, s.label, r.terms, lap, &lap_noise));
      if (params.potential == Potential::kOscillator && discrepancies != nullptr) {
        const auto half = tensor_relation_half(params, i);
        const auto it = std::find_if(relations.begin(), relations.end(), [&](const Relation& r) {
          return r.name == "helper.tensor." + std::to_string(i);
        });
        discrepancies->push_back(
            {it->name, s.label, n, relation_residual(half, s.field),
             relation_residual(it->terms, s.field),
             "coefficient omega/2 on [[rr]_i, p^2] leaves a finite residual; "
             "omega/4 closes the identity since [[pp]_i, r^2] = -[[rr]_i, p^2]"});
      }
    }
  }
  std::vector<RelationTerm> l_p2;
  add_commutator(l_p2, 1.0, ops::orbital_l(), p2);
  for (const auto& s : family.scalars)
    out.push_back(fixed_residual("helper.l_p2", s.label, l_p2, s.field));
  return out;
}

std::vector<Residual> algebra_residuals(const PhysicalParams& params,
                                        const StateFamily& family,
                                        std::span<const Eigenstate> eigenstates) {
  std::vector<Residual> out;
  for (const auto& r : algebra_relations(params, std::nullopt))
    for (const auto& s : family.spinors)
      out.push_back(fixed_residual(r.relation.name, s.label, r.relation.terms, s.field));
  for (const auto& e : eigenstates)
    for (const auto& r : algebra_relations(params, e.energy))
      out.push_back({r.relation.name, e.label, e.field.grid().n(),
                     r.scale * absolute_residual(r.relation.terms, e.field), false});
  return out;
}

double casimir_target(Potential potential, int n) {
  require(is_valid_level(potential, n), "invalid level for this potential");
  const double j = potential == Potential::kCoulomb ? (n - 1) / 2.0 : n / 2.0;
  return j * (j + 1.0);
}

double measured_casimir(const PhysicalParams& params, const Eigenstate& state) {
  const auto& psi = state.field;
  const double norm2 = psi.squared_norm();
  const auto l = op(K::kL, params);
  if (params.potential == Potential::kCoulomb) {
    const auto a1 = op(K::kA1, params, state.energy);
    const auto a2 = op(K::kA2, params, state.energy);
    return (a1.apply(psi).squared_norm() + a2.apply(psi).squared_norm() +
            l.apply(psi).squared_norm()) /
           norm2;
  }
  const double w = su2_casimir_weight(state.energy, params);
  const auto [q1, q3] = generators(params);
  return (w * (q1.apply(psi).squared_norm() + q3.apply(psi).squared_norm()) +
          0.25 * l.apply(psi).squared_norm()) /
         norm2;
}

std::vector<Residual> casimir_residuals(const PhysicalParams& params,
                                        const StateFamily& family,
                                        std::span<const Eigenstate> eigenstates) {
  std::vector<Residual> out;
  const bool coulomb = params.potential == Potential::kCoulomb;
  if (coulomb) {
    const auto terms = sum_of_squares_terms(params, std::nullopt);
    for (const auto& s : family.spinors)
      out.push_back(fixed_residual("identity.sum_of_squares", s.label, terms, s.field));
  }
  for (const auto& e : eigenstates) {
    const int n = e.field.grid().n();
    const auto kind = coulomb ? K::kCasimirSO3 : K::kCasimirSU2;
    const std::vector<RelationTerm> cas{
        {1.0, op(kind, params, e.energy)},
        {-casimir_target(params.potential, e.n), spinor_identity()}};
    out.push_back({coulomb ? "casimir.eigen.so3" : "casimir.eigen.su2", e.label, n,
                   absolute_residual(cas, e.field), false});
    if (coulomb) {
      const double s = so3_normalization(e.energy, params);
      out.push_back({"identity.eigen.sum_of_squares", e.label, n,
                     s * s * absolute_residual(sum_of_squares_terms(params, e.energy), e.field),
                     false});
    }
  }
  return out;
}

std::vector<CheckResult> grade(std::span<const Residual> residuals,
                               Potential potential, const ThresholdTable& table) {
  std::vector<CheckResult> out;
  out.reserve(residuals.size());
  for (const auto& r : residuals) {
    const auto t = table.find(potential, r.grid, r.name, r.state);
    if (!t) {
      std::ostringstream msg;
      msg << "no calibrated threshold for " << r.name << " on " << r.state
          << " at N=" << r.grid << " (" << to_string(potential) << ")";
      fail(ErrorCode::kInvalidArgument, msg.str());
    }
    out.push_back({r.name, r.state, r.grid, r.value, *t, r.value <= *t});
  }
  return out;
}

namespace {

int default_eigen_n_max(const VerifyOptions& o) {
  if (o.eigen_n_max >= 0) return o.eigen_n_max;
  return o.params.potential == Potential::kCoulomb ? 3 : 2;
}

}  // namespace

SuiteResiduals run_identity_suite(const VerifyOptions& options) {
  options.params.validate();
  const Grid2D grid(options.grid, options.box);
  const StateFamily family = standard_state_family(grid, options.seed);
  const auto eigenstates = lift_eigenstates(options.params, default_eigen_n_max(options),
                                            grid, options.radial_cells);
  std::array<std::vector<Residual>, 4> parts;
  std::vector<Discrepancy> discrepancies;
  parallel_for(parts.size(), options.threads, [&](std::size_t job) {
    switch (job) {
      case 0: parts[0] = conservation_residuals(options.params, family); break;
      case 1: parts[1] = block_condition_residuals(options.params, family, &discrepancies); break;
      case 2: parts[2] = algebra_residuals(options.params, family, eigenstates); break;
      default: parts[3] = casimir_residuals(options.params, family, eigenstates); break;
    }
  });
  SuiteResiduals out;
  for (auto& p : parts)
    out.residuals.insert(out.residuals.end(), std::make_move_iterator(p.begin()),
                         std::make_move_iterator(p.end()));
  out.discrepancies = std::move(discrepancies);
  for (const auto& e : eigenstates) {
    if (!e.truncated) continue;
    std::ostringstream w;
    w << "eigenstate " << e.label << " is truncated by the box: " << e.outside_fraction
      << " of its norm lies outside r = " << options.box / 2;
    out.warnings.push_back(w.str());
  }
  return out;
}

std::vector<CheckResult> check_conservation(const PhysicalParams& params,
                                            const StateFamily& family,
                                            const ThresholdTable& table) {
  return grade(conservation_residuals(params, family), params.potential, table);
}

std::vector<CheckResult> check_block_conditions(const PhysicalParams& params,
                                                const StateFamily& family,
                                                const ThresholdTable& table) {
  return grade(block_condition_residuals(params, family), params.potential, table);
}

std::vector<CheckResult> check_algebra(const PhysicalParams& params,
                                       const StateFamily& family,
                                       std::span<const Eigenstate> eigenstates,
                                       const ThresholdTable& table) {
  return grade(algebra_residuals(params, family, eigenstates), params.potential, table);
}

std::vector<CheckResult> check_casimir(const PhysicalParams& params,
                                       const StateFamily& family,
                                       std::span<const Eigenstate> eigenstates,
                                       const ThresholdTable& table) {
  return grade(casimir_residuals(params, family, eigenstates), params.potential, table);
}

void classify_series(ConvergenceSeries& series) {
  bool rounding = !series.rows.empty();
  bool decreasing = true;
  for (std::size_t i = 0; i < series.rows.size(); ++i) {
    const auto& row = series.rows[i];
    const bool at_floor = row.residual <= row.rounding_level;
    rounding = rounding && at_floor;
    if (i > 0 && !(row.residual < series.rows[i - 1].residual) && !at_floor)
      decreasing = false;
  }
  series.at_rounding_level = rounding;
  series.decreasing = decreasing;
}

std::vector<ConvergenceSeries> convergence_study(const VerifyOptions& options,
                                                 std::span<const int> grids) {
  require(grids.size() >= 2, "a convergence study needs at least two grids");
  for (std::size_t i = 1; i < grids.size(); ++i)
    require(grids[i] > grids[i - 1], "grid sizes must be strictly increasing");
  std::vector<ConvergenceSeries> series;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  for (int n : grids) {
    VerifyOptions o = options;
    o.grid = n;
    for (const auto& r : run_identity_suite(o).residuals) {
      const auto key = std::make_pair(r.name, r.state);
      auto it = index.find(key);
      if (it == index.end()) {
        it = index.emplace(key, series.size()).first;
        series.push_back({r.name, r.state, r.fixed_state, {}, false, false});
      }
      auto& rows = series[it->second].rows;
      std::optional<double> ratio;
      if (!rows.empty() && rows.back().residual != 0.0)
        ratio = r.value / rows.back().residual;
      rows.push_back({n, r.value, ratio, r.rounding_level});
    }
  }
  for (auto& s : series) classify_series(s);
  return series;
}

std::vector<ConvergenceRow> convergence_study(const std::string& check,
                                              const std::string& state,
                                              const VerifyOptions& options,
                                              std::span<const int> grids) {
  for (const auto& s : convergence_study(options, grids))
    if (s.name == check && (state.empty() || s.state == state)) return s.rows;
  fail(ErrorCode::kInvalidArgument, "unknown check '" + check + "'" +
                                        (state.empty() ? "" : " on state '" + state + "'"));
}

void calibrate(const VerifyOptions& options, std::span<const int> grids,
               ThresholdTable& table) {
  for (int n : grids) {
    VerifyOptions o = options;
    o.grid = n;
    for (const auto& r : run_identity_suite(o).residuals)
      table.calibrate(options.params.potential, n, r.name, r.state, r.value);
  }
  table.set_calibrated_params(options.params, options.box, options.seed);
}

namespace {

double relative_difference(const DenseVector& dense, const DenseVector& free) {
  const double scale = std::max(free.norm(), dense.norm());
  return scale == 0.0 ? 0.0 : (dense - free).norm() / scale;
}

}  // namespace

std::vector<CheckResult> dense_crosscheck(const PhysicalParams& params, int grid_n,
                                          double box, std::uint64_t seed, int states) {
  params.validate();
  require(states >= 1, "dense cross-check needs at least one state");
  const Grid2D grid(grid_n, box);
  SplitMix64 rng(seed);
  std::vector<ScalarField> scalars;
  std::vector<SpinorField> spinors;
  for (int i = 0; i < states; ++i) scalars.push_back(white_noise(grid, rng));
  for (int i = 0; i < states; ++i) {
    SpinorField s(white_noise(grid, rng), white_noise(grid, rng));
    spinors.push_back(std::move(s));
  }
  const int lowest = params.potential == Potential::kCoulomb ? 1 : 0;
  const double energy = analytic_energy(params, lowest);

  std::vector<std::pair<std::string, MatrixFreeOperator>> operators{
      {"p1", ops::p1()},
      {"p2", ops::p2()},
      {"p^2", ops::p_squared()},
      {"p^-2", ops::inverse_p_squared()},
      {"B", ops::ladder_b()},
      {"B^dag", ops::ladder_b_dagger()},
      {"x1", ops::x1()},
      {"x2", ops::x2()},
      {"l", ops::orbital_l()},
      {"x1/r", ops::unit_radial(1)},
      {"x2/r", ops::unit_radial(2)},
      {"V", ops::potential(params)},
      {"[rr]1", ops::tensor_rr(1)},
      {"[rr]3", ops::tensor_rr(3)},
      {"[pp]1", ops::tensor_pp(1)},
      {"[pp]3", ops::tensor_pp(3)},
  };
  for (K kind : all_operator_kinds()) {
    if (!available_for(kind, params.potential)) continue;
    operators.emplace_back(to_string(kind),
                           build_operator(kind, params,
                                          requires_energy(kind) ? std::optional(energy)
                                                                : std::nullopt));
  }

  std::vector<CheckResult> out;
  const std::string label = "random_x" + std::to_string(states);
  for (const auto& [name, o] : operators) {
    const DenseMatrix d = to_dense(o, grid);
    double worst = 0.0;
    if (o.shape() == OperatorShape::kScalar) {
      for (const auto& x : scalars)
        worst = std::max(worst, relative_difference(d * to_vector(x),
                                                    to_vector(o.apply(x))));
    } else {
      for (const auto& x : spinors)
        worst = std::max(worst, relative_difference(d * to_vector(x),
                                                    to_vector(o.apply(x))));
    }
    out.push_back({"dense." + name, label, grid_n, worst, kDenseTolerance,
                   worst <= kDenseTolerance});
  }

  const auto h = op(K::kH, params);
  const DenseMatrix dh = to_dense(h, grid);
  std::vector<std::pair<std::string, MatrixFreeOperator>> conserved{{"L", op(K::kL, params)}};
  const auto [q1, q2] = generators(params);
  const auto idx = generator_indices(params.potential);
  const std::string tag = params.potential == Potential::kCoulomb ? "Qh" : "Qo";
  conserved.emplace_back(tag + std::to_string(idx[0]), q1);
  conserved.emplace_back(tag + std::to_string(idx[1]), q2);
  for (const auto& [name, x] : conserved) {
    const DenseMatrix dx = to_dense(x, grid);
    const auto c = commutator(x, h);
    double worst = 0.0;
    for (const auto& s : spinors) {
      const DenseVector v = to_vector(s);
      const DenseVector xh = dx * (dh * v);
      const DenseVector hx = dh * (dx * v);
      const double scale = xh.norm() + hx.norm();
      worst = std::max(worst, ((xh - hx) - to_vector(c.apply(s))).norm() / scale);
    }
    out.push_back({"dense.commutator.[" + name + ",H]", label, grid_n, worst,
                   kDenseTolerance, worst <= kDenseTolerance});
  }
  return out;
}

bool strictly_decreasing(std::span<const double> values) {
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] < values[i - 1])) return false;
  return true;
}

std::vector<RatioRow> spinor_ratio_sweep(const PhysicalParams& params, int n,
                                         std::span<const double> sweep) {
  params.validate();
  require(!sweep.empty(), "sweep must not be empty");
  const bool coulomb = params.potential == Potential::kCoulomb;
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (coulomb)
      require(sweep[i] < sweep[i - 1], "Coulomb sweeps must decrease k strictly");
    else
      require(sweep[i] > sweep[i - 1], "oscillator sweeps must increase M strictly");
  }
  const auto [m, n_r] = representative_sector(params.potential, n);
  std::vector<RatioRow> out;
  for (double value : sweep) {
    const PhysicalParams p =
        coulomb ? PhysicalParams::coulomb(params.mass, value)
                : PhysicalParams::oscillator_with_stiffness(value, params.stiffness());
    const RadialGrid rg{2000, default_radial_extent(p, n)};
    const auto sol = solve_sector_full(p, m, n_r, rg);
    out.push_back({value, sol.energy, lower_to_upper_ratio(sol.pair, sol.energy, p)});
  }
  return out;
}

}  // namespace dirac2d
