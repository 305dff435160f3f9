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

#include "dirac2d/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dirac2d/error.hpp"

namespace dirac2d {

using nlohmann::json;

ThresholdTable ThresholdTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open threshold fixture '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

ThresholdTable ThresholdTable::parse(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kIo, std::string("malformed threshold fixture: ") + e.what());
  }
  ThresholdTable table;
  try {
    const int version = doc.at("schema_version").get<int>();
    if (version != kFixtureSchemaVersion)
      fail(ErrorCode::kIo, "unsupported threshold fixture schema version " +
                               std::to_string(version));
    table.provenance = doc.value("provenance", std::string{});
    table.factor = doc.value("factor", kCalibrationFactor);
    table.floor = doc.value("floor", kThresholdFloor);
    for (const auto& [name, section] : doc.at("potentials").items()) {
      const Potential potential = parse_potential(name);
      if (section.contains("params")) {
        const auto& p = section.at("params");
        PhysicalParams params =
            potential == Potential::kCoulomb
                ? PhysicalParams::coulomb(p.at("mass").get<double>(),
                                          p.at("k").get<double>())
                : PhysicalParams::oscillator(p.at("mass").get<double>(),
                                             p.at("omega").get<double>());
        table.calibrations_[name] = {params, p.at("box").get<double>(),
                                     p.at("seed").get<std::uint64_t>()};
      }
      for (const auto& [grid, checks] : section.at("grids").items())
        for (const auto& [check, states] : checks.items())
          for (const auto& [state, value] : states.items())
            table.set(potential, std::stoi(grid), check, state, value.get<double>());
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kIo, std::string("malformed threshold fixture: ") + e.what());
  }
  return table;
}

std::string ThresholdTable::to_json() const {
  json doc;
  doc["schema_version"] = kFixtureSchemaVersion;
  doc["provenance"] = provenance;
  doc["factor"] = factor;
  doc["floor"] = floor;
  json potentials = json::object();
  for (const auto& [name, grids] : entries_) {
    json section;
    if (auto it = calibrations_.find(name); it != calibrations_.end()) {
      const auto& c = it->second;
      json p{{"mass", c.params.mass}, {"box", c.box}, {"seed", c.seed}};
      if (c.params.potential == Potential::kCoulomb)
        p["k"] = c.params.k;
      else
        p["omega"] = c.params.omega;
      section["params"] = p;
    }
    json grid_section = json::object();
    for (const auto& [grid, checks] : grids) grid_section[std::to_string(grid)] = checks;
    section["grids"] = grid_section;
    potentials[name] = section;
  }
  doc["potentials"] = potentials;
  return doc.dump(2) + "\n";
}

void ThresholdTable::set(Potential potential, int grid, const std::string& check,
                         const std::string& state, double threshold) {
  require(std::isfinite(threshold) && threshold >= 0.0,
          "threshold must be finite and non-negative");
  entries_[to_string(potential)][grid][check][state] = threshold;
}

void ThresholdTable::calibrate(Potential potential, int grid,
                               const std::string& check, const std::string& state,
                               double residual) {
  require(std::isfinite(residual), "calibration residual for " + check + " / " +
                                       state + " is not finite");
  set(potential, grid, check, state, std::max(factor * residual, floor));
}

std::optional<double> ThresholdTable::find(Potential potential, int grid,
                                           const std::string& check,
                                           const std::string& state) const {
  const auto p = entries_.find(to_string(potential));
  if (p == entries_.end()) return std::nullopt;
  const auto g = p->second.find(grid);
  if (g == p->second.end()) return std::nullopt;
  const auto c = g->second.find(check);
  if (c == g->second.end()) return std::nullopt;
  const auto s = c->second.find(state);
  if (s == c->second.end()) return std::nullopt;
  return s->second;
}

bool ThresholdTable::has_grid(Potential potential, int grid) const {
  const auto p = entries_.find(to_string(potential));
  return p != entries_.end() && p->second.contains(grid);
}

std::size_t ThresholdTable::size() const {
  std::size_t count = 0;
  for (const auto& [name, grids] : entries_)
    for (const auto& [grid, checks] : grids)
      for (const auto& [check, states] : checks) count += states.size();
  return count;
}

void ThresholdTable::set_calibrated_params(const PhysicalParams& params,
                                           double box, std::uint64_t seed) {
  params.validate();
  calibrations_[to_string(params.potential)] = {params, box, seed};
}

std::optional<PhysicalParams> ThresholdTable::calibrated_params(
    Potential potential) const {
  const auto it = calibrations_.find(to_string(potential));
  if (it == calibrations_.end()) return std::nullopt;
  return it->second.params;
}

std::optional<double> ThresholdTable::calibrated_box(Potential potential) const {
  const auto it = calibrations_.find(to_string(potential));
  if (it == calibrations_.end()) return std::nullopt;
  return it->second.box;
}

}  // namespace dirac2d
