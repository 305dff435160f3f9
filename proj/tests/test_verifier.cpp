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
#include <set>
#include <vector>

#include "dirac2d/error.hpp"
#include "dirac2d/operators.hpp"
#include "dirac2d/verifier.hpp"

namespace dirac2d {
namespace {

const PhysicalParams kCoulomb = PhysicalParams::coulomb(1.0, 1.0);
const PhysicalParams kOscillator = PhysicalParams::oscillator(1.0, 0.2);

std::vector<RelationTerm> commutator_terms(const MatrixFreeOperator& a,
                                           const MatrixFreeOperator& b) {
  return {{1.0, a * b}, {-1.0, b * a}};
}

TEST(RelationResidual, InvariantUnderPhaseAndScale) {
  const Grid2D g(64, 40.0);
  const auto phi = random_band_limited_scalar(g, 7);
  const auto terms = commutator_terms(ops::x1(), ops::p_squared());
  const double base = relation_residual(terms, phi);
  EXPECT_GT(base, 0.1);
  const ScalarField scaled = Complex(-3.0, 4.0) * phi;
  EXPECT_NEAR(relation_residual(terms, scaled), base, 1e-14 * base);
}

TEST(RelationResidual, VanishingTermsGiveZero) {
  const Grid2D g(32, 10.0);
  const ScalarField zero(g);
  EXPECT_EQ(relation_residual(commutator_terms(ops::x1(), ops::p1()), zero), 0.0);
}

TEST(RelationResidual, CommutingMultipliers) {
  const Grid2D g(64, 20.0);
  const auto phi = random_band_limited_scalar(g, 3);
  EXPECT_LT(relation_residual(commutator_terms(ops::p1(), ops::p2()), phi), 1e-15);
  EXPECT_LT(relation_residual(commutator_terms(ops::x1(), ops::x2()), phi), 1e-15);
}

TEST(RoundingResponse, GrowsWithDerivativeOrder) {
  const auto ring_at = [](int n) {
    const Grid2D g(n, 40.0);
    return ring_scalar(g, 1, RingGeometry::standard(g));
  };
  const auto p4 = ops::p_squared() * ops::p_squared();
  const std::vector<RelationTerm> self{{1.0, p4}, {-1.0, p4}};
  const double coarse = rounding_response(self, ring_at(64));
  const double fine = rounding_response(self, ring_at(128));
  EXPECT_GT(coarse, 0.0);
  EXPECT_LT(coarse, 1e-11);
  EXPECT_GT(fine, 4.0 * coarse);
}

TEST(RoundingResponse, DiagonalRelationsSitAtEps) {
  const Grid2D g(64, 40.0);
  const auto phi = ring_scalar(g, 2, RingGeometry::standard(g));
  const double level = rounding_response(commutator_terms(ops::x1(), ops::x2()), phi);
  EXPECT_GT(level, kRoundingSafety * std::numeric_limits<double>::epsilon());
  EXPECT_LT(level, 1e3 * std::numeric_limits<double>::epsilon());
}

TEST(Conservation, AngularMomentumCommutesWithH) {
  const Grid2D g(64, 40.0);
  const auto ring = RingGeometry::standard(g);
  for (const auto& p : {kCoulomb, kOscillator}) {
    const auto h = build_operator(OperatorKind::kH, p);
    const auto l = build_operator(OperatorKind::kL, p);
    for (int m : kRingMomenta) EXPECT_LT(conservation_residual(l, h, ring_spinor(g, m, ring)), 1e-5);
  }
}

TEST(Conservation, DetectsNonConservedOperator) {
  const Grid2D g(64, 40.0);
  const auto psi = ring_spinor(g, 1, RingGeometry::standard(g));
  const auto h = build_operator(OperatorKind::kH, kOscillator);
  const auto x = MatrixFreeOperator::block(ops::x1(), std::nullopt, std::nullopt, ops::x1());
  EXPECT_GT(conservation_residual(x, h, psi), 1e-2);
}

TEST(Residuals, BlockConditionsSmallAtModerateGrid) {
  const Grid2D g(128, 40.0);
  const auto family = standard_state_family(g, 42);
  for (const auto& p : {kCoulomb, kOscillator}) {
    for (const auto& r : block_condition_residuals(p, family)) {
      ASSERT_TRUE(r.fixed_state);
      EXPECT_TRUE(r.value < 1e-6 || r.value <= r.rounding_level)
          << r.name << " " << r.state << " " << r.value;
    }
  }
}

TEST(Residuals, PrintedTensorCoefficientIsADiscrepancy) {
  const Grid2D g(64, 40.0);
  const auto family = standard_state_family(g, 42);
  std::vector<Discrepancy> found;
  block_condition_residuals(kOscillator, family, &found);
  ASSERT_EQ(found.size(), 2 * family.scalars.size());
  for (const auto& d : found) {
    EXPECT_GT(d.residual_as_printed, 1e-3) << d.name << " " << d.state;
    EXPECT_LT(100.0 * d.residual_corrected, d.residual_as_printed) << d.name << " " << d.state;
    EXPECT_FALSE(d.note.empty());
  }
  std::vector<Discrepancy> none;
  block_condition_residuals(kCoulomb, family, &none);
  EXPECT_TRUE(none.empty());
}

TEST(Residuals, SuiteIsDeterministicAndUnique) {
  VerifyOptions o;
  o.params = kOscillator;
  o.grid = 32;
  o.eigen_n_max = 1;
  o.radial_cells = 4000;
  const auto a = run_identity_suite(o);
  const auto b = run_identity_suite(o);
  ASSERT_EQ(a.residuals.size(), b.residuals.size());
  std::set<std::pair<std::string, std::string>> keys;
  bool has_eigen = false;
  for (std::size_t i = 0; i < a.residuals.size(); ++i) {
    EXPECT_EQ(a.residuals[i].value, b.residuals[i].value);
    EXPECT_TRUE(keys.insert({a.residuals[i].name, a.residuals[i].state}).second)
        << a.residuals[i].name << " " << a.residuals[i].state;
    has_eigen = has_eigen || !a.residuals[i].fixed_state;
  }
  EXPECT_TRUE(has_eigen);
}

TEST(Grade, MissingThresholdIsInvalidArgument) {
  const std::vector<Residual> residuals{{"conservation.L", "ring_m0", 64, 1e-12}};
  ThresholdTable table;
  try {
    grade(residuals, Potential::kCoulomb, table);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  table.set(Potential::kCoulomb, 64, "conservation.L", "ring_m0", 2e-12);
  const auto graded = grade(residuals, Potential::kCoulomb, table);
  ASSERT_EQ(graded.size(), 1u);
  EXPECT_TRUE(graded[0].pass);
  table.set(Potential::kCoulomb, 64, "conservation.L", "ring_m0", 5e-13);
  EXPECT_FALSE(grade(residuals, Potential::kCoulomb, table)[0].pass);
}

ConvergenceSeries series_of(std::vector<std::pair<double, double>> rows) {
  ConvergenceSeries s;
  int n = 64;
  for (const auto& [value, level] : rows) {
    s.rows.push_back({n, value, std::nullopt, level});
    n *= 2;
  }
  classify_series(s);
  return s;
}

TEST(ClassifySeries, Rules) {
  auto s = series_of({{1e-6, 1e-14}, {1e-9, 1e-14}, {1e-12, 1e-14}});
  EXPECT_TRUE(s.decreasing);
  EXPECT_FALSE(s.at_rounding_level);

  s = series_of({{1e-6, 1e-14}, {1e-12, 1e-14}, {2e-12, 1e-14}});
  EXPECT_FALSE(s.decreasing);

  // A rise that stays under the rounding level is allowed.
  s = series_of({{1e-6, 1e-14}, {1e-15, 1e-14}, {5e-15, 1e-14}});
  EXPECT_TRUE(s.decreasing);
  EXPECT_FALSE(s.at_rounding_level);

  s = series_of({{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.0}});
  EXPECT_TRUE(s.decreasing);
  EXPECT_TRUE(s.at_rounding_level);

  s = series_of({{1e-8, 1e-8}, {2e-8, 1e-7}});
  EXPECT_TRUE(s.decreasing);
  EXPECT_TRUE(s.at_rounding_level);
}

TEST(ConvergenceStudy, SingleCheckRows) {
  VerifyOptions o;
  o.params = kCoulomb;
  o.eigen_n_max = 1;
  o.radial_cells = 4000;
  const std::vector<int> grids{32, 64};
  const auto rows = convergence_study("conservation.L", "random_0", o, grids);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_FALSE(rows[0].ratio.has_value());
  ASSERT_TRUE(rows[1].ratio.has_value());
  EXPECT_NEAR(*rows[1].ratio, rows[1].residual / rows[0].residual, 1e-15);
  EXPECT_LT(rows[1].residual, rows[0].residual);
  const std::vector<int> bad{64, 32};
  EXPECT_THROW(convergence_study("conservation.L", "random_0", o, bad), Error);
}

TEST(Casimir, Targets) {
  EXPECT_EQ(casimir_target(Potential::kCoulomb, 1), 0.0);
  EXPECT_EQ(casimir_target(Potential::kCoulomb, 3), 2.0);
  EXPECT_EQ(casimir_target(Potential::kCoulomb, 5), 6.0);
  EXPECT_EQ(casimir_target(Potential::kOscillator, 0), 0.0);
  EXPECT_EQ(casimir_target(Potential::kOscillator, 1), 0.75);
  EXPECT_EQ(casimir_target(Potential::kOscillator, 2), 2.0);
  EXPECT_THROW(casimir_target(Potential::kCoulomb, 2), Error);
}

TEST(Casimir, OscillatorDoubletOnLiftedState) {
  const Grid2D g(64, 40.0);
  const auto e = lift_eigenstate(kOscillator, 1, 0, g, 8000);
  EXPECT_EQ(e.n, 1);
  EXPECT_FALSE(e.truncated);
  EXPECT_NEAR(measured_casimir(kOscillator, e), 0.75, 1e-3);
}

TEST(Sectors, RepresentativeHasSmallestMomentum) {
  EXPECT_EQ(representative_sector(Potential::kCoulomb, 1), std::make_pair(0, 0));
  EXPECT_EQ(representative_sector(Potential::kCoulomb, 5), std::make_pair(0, 2));
  EXPECT_EQ(representative_sector(Potential::kOscillator, 0), std::make_pair(0, 0));
  EXPECT_EQ(representative_sector(Potential::kOscillator, 3), std::make_pair(1, 1));
  EXPECT_EQ(representative_sector(Potential::kOscillator, 4), std::make_pair(0, 2));
  EXPECT_THROW(representative_sector(Potential::kCoulomb, 4), Error);
}

TEST(Monotone, StrictlyDecreasing) {
  EXPECT_TRUE(strictly_decreasing(std::vector<double>{3, 2, 1}));
  EXPECT_FALSE(strictly_decreasing(std::vector<double>{3, 3, 1}));
  EXPECT_TRUE(strictly_decreasing(std::vector<double>{}));
}

TEST(SpinorRatio, CoulombTracksCoupling) {
  const std::vector<double> sweep{0.4, 0.2, 0.1};
  const auto rows = spinor_ratio_sweep(kCoulomb, 1, sweep);
  ASSERT_EQ(rows.size(), 3u);
  std::vector<double> ratios;
  for (const auto& r : rows) {
    ratios.push_back(r.ratio);
    EXPECT_NEAR(r.ratio, r.parameter, 0.05 * r.parameter);
  }
  EXPECT_TRUE(strictly_decreasing(ratios));
  const std::vector<double> wrong{0.1, 0.2};
  EXPECT_THROW(spinor_ratio_sweep(kCoulomb, 1, wrong), Error);
}

TEST(SpinorRatio, OscillatorHeavyMassLimit) {
  const auto p = PhysicalParams::oscillator_with_stiffness(10.0, 0.01);
  const std::vector<double> sweep{10.0, 100.0, 1000.0};
  std::vector<double> ratios;
  for (const auto& r : spinor_ratio_sweep(p, 1, sweep)) ratios.push_back(r.ratio);
  EXPECT_TRUE(strictly_decreasing(ratios));
  const std::vector<double> wrong{100.0, 10.0};
  EXPECT_THROW(spinor_ratio_sweep(p, 1, wrong), Error);
}

}  // namespace
}  // namespace dirac2d
