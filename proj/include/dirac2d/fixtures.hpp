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

// Calibrated residual thresholds. A calibration run records residuals per
// (potential, grid, check, state); the stored threshold is
// max(factor * residual, floor).

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "dirac2d/spectra.hpp"

namespace dirac2d {

inline constexpr int kFixtureSchemaVersion = 1;
inline constexpr double kCalibrationFactor = 3.0;
inline constexpr double kThresholdFloor = 1e-12;

class ThresholdTable {
 public:
  static ThresholdTable load(const std::string& path);
  static ThresholdTable parse(const std::string& json_text);
  std::string to_json() const;

  void set(Potential potential, int grid, const std::string& check,
           const std::string& state, double threshold);
  // Stores max(factor * residual, floor).
  void calibrate(Potential potential, int grid, const std::string& check,
                 const std::string& state, double residual);
  std::optional<double> find(Potential potential, int grid,
                             const std::string& check,
                             const std::string& state) const;
  bool has_grid(Potential potential, int grid) const;
  std::size_t size() const;

  // Parameters of the calibration run, per potential.
  void set_calibrated_params(const PhysicalParams& params, double box,
                             std::uint64_t seed);
  std::optional<PhysicalParams> calibrated_params(Potential potential) const;
  std::optional<double> calibrated_box(Potential potential) const;

  std::string provenance;
  double factor = kCalibrationFactor;
  double floor = kThresholdFloor;

 private:
  struct Calibration {
    PhysicalParams params;
    double box = 0.0;
    std::uint64_t seed = 0;
  };
  // potential -> grid -> check -> state -> threshold
  using StateMap = std::map<std::string, double>;
  using CheckMap = std::map<std::string, StateMap>;
  std::map<std::string, std::map<int, CheckMap>> entries_;
  std::map<std::string, Calibration> calibrations_;
};

}  // namespace dirac2d
