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
#include "dirac2d/fixtures.hpp"

namespace dirac2d {
namespace {

TEST(Thresholds, CalibrationRule) {
  ThresholdTable t;
  t.calibrate(Potential::kCoulomb, 256, "conservation.L", "ring_m0", 2e-9);
  t.calibrate(Potential::kCoulomb, 256, "conservation.L", "ring_m1", 1e-20);
  EXPECT_DOUBLE_EQ(*t.find(Potential::kCoulomb, 256, "conservation.L", "ring_m0"), 6e-9);
  EXPECT_DOUBLE_EQ(*t.find(Potential::kCoulomb, 256, "conservation.L", "ring_m1"), 1e-12);
  EXPECT_FALSE(t.find(Potential::kCoulomb, 128, "conservation.L", "ring_m0"));
  EXPECT_FALSE(t.find(Potential::kOscillator, 256, "conservation.L", "ring_m0"));
  EXPECT_FALSE(t.find(Potential::kCoulomb, 256, "conservation.Qh1", "ring_m0"));
  EXPECT_TRUE(t.has_grid(Potential::kCoulomb, 256));
  EXPECT_FALSE(t.has_grid(Potential::kCoulomb, 64));
  EXPECT_EQ(t.size(), 2u);
}

TEST(Thresholds, JsonRoundTrip) {
  ThresholdTable t;
  t.provenance = "unit test";
  t.calibrate(Potential::kOscillator, 64, "algebra.Qo1_L", "random_0", 0.1 + 0.2);
  t.set(Potential::kCoulomb, 128, "block.symmetry.Qh1", "ring_m2", 1.2345678901234567e-13);
  t.set_calibrated_params(PhysicalParams::oscillator(1.0, 0.2), 40.0, 42);
  const auto back = ThresholdTable::parse(t.to_json());
  EXPECT_EQ(back.provenance, "unit test");
  EXPECT_EQ(back.size(), 2u);
  EXPECT_EQ(*back.find(Potential::kOscillator, 64, "algebra.Qo1_L", "random_0"), 3 * (0.1 + 0.2));
  EXPECT_EQ(*back.find(Potential::kCoulomb, 128, "block.symmetry.Qh1", "ring_m2"),
            1.2345678901234567e-13);
  const auto p = back.calibrated_params(Potential::kOscillator);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->omega, 0.2);
  EXPECT_EQ(*back.calibrated_box(Potential::kOscillator), 40.0);
  EXPECT_FALSE(back.calibrated_params(Potential::kCoulomb));
  EXPECT_EQ(back.to_json(), t.to_json());
}

TEST(Thresholds, RejectsBadInput) {
  ThresholdTable t;
  EXPECT_THROW(t.set(Potential::kCoulomb, 64, "x", "y", -1.0), Error);
  EXPECT_THROW(t.calibrate(Potential::kCoulomb, 64, "x", "y", std::nan("")), Error);
  EXPECT_THROW(ThresholdTable::parse("{not json"), Error);
  EXPECT_THROW(ThresholdTable::parse(R"({"schema_version": 99, "potentials": {}})"), Error);
  try {
    ThresholdTable::load("/nonexistent/thresholds.json");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

}  // namespace
}  // namespace dirac2d
