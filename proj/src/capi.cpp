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

#include "dirac2d/dirac2d.h"

#include <cstdio>
#include <memory>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "dirac2d/error.hpp"
#include "dirac2d/fixtures.hpp"
#include "dirac2d/radial.hpp"
#include "dirac2d/spectra.hpp"
#include "dirac2d/verifier.hpp"

#ifndef DIRAC2D_DEFAULT_FIXTURES
#define DIRAC2D_DEFAULT_FIXTURES ""
#endif

using namespace dirac2d;

struct d2d_spectrum {
  std::vector<SpectrumEntry> entries;
};

struct d2d_thresholds {
  ThresholdTable table;
};

struct d2d_report {
  std::vector<CheckResult> checks;
  std::vector<Discrepancy> discrepancies;
  std::vector<std::string> warnings;
};

struct d2d_convergence {
  std::vector<ConvergenceSeries> series;
};

namespace {

thread_local std::string last_error;

d2d_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return D2D_ERR_INVALID_ARGUMENT;
    case ErrorCode::kNumerical: return D2D_ERR_NUMERICAL;
    case ErrorCode::kShapeMismatch: return D2D_ERR_SHAPE_MISMATCH;
    case ErrorCode::kIo: return D2D_ERR_IO;
  }
  return D2D_ERR_INTERNAL;
}

// Runs body and converts every exception into a status.
template <typename Body>
d2d_status guarded(Body&& body) {
  last_error.clear();
  try {
    body();
    return D2D_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return D2D_ERR_INTERNAL;
}

void need(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorCode::kInvalidArgument, std::string(what) + " is null");
}

Potential potential_of(d2d_potential p) {
  switch (p) {
    case D2D_COULOMB: return Potential::kCoulomb;
    case D2D_OSCILLATOR: return Potential::kOscillator;
  }
  fail(ErrorCode::kInvalidArgument, "unknown potential");
}

PhysicalParams params_of(const d2d_params* p) {
  need(p, "params");
  PhysicalParams out;
  out.potential = potential_of(p->potential);
  out.mass = p->mass;
  out.k = out.potential == Potential::kCoulomb ? p->k : 0.0;
  out.omega = out.potential == Potential::kOscillator ? p->omega : 0.0;
  out.validate();
  return out;
}

d2d_params to_c(const PhysicalParams& p) {
  return {p.potential == Potential::kCoulomb ? D2D_COULOMB : D2D_OSCILLATOR,
          p.mass, p.k, p.omega};
}

VerifyOptions options_of(const d2d_verify_options* o) {
  need(o, "options");
  VerifyOptions out;
  out.params = params_of(&o->params);
  out.grid = o->grid;
  out.box = o->box;
  out.seed = o->seed;
  out.eigen_n_max = o->eigen_n_max;
  out.radial_cells = o->radial_cells;
  out.threads = o->threads;
  require(out.box > 0.0, "box must be positive");
  require(out.radial_cells >= 100, "radial_cells must be at least 100");
  return out;
}

std::vector<int> grids_of(const int* grids, std::size_t count) {
  need(grids, "grids");
  return {grids, grids + count};
}

}  // namespace

extern "C" {

const char* d2d_version(void) { return "0.1.0"; }

const char* d2d_last_error(void) { return last_error.c_str(); }

d2d_status d2d_params_validate(const d2d_params* params) {
  return guarded([&] { params_of(params); });
}

d2d_status d2d_analytic_energy(const d2d_params* params, int n, double* energy) {
  return guarded([&] {
    need(energy, "energy");
    *energy = analytic_energy(params_of(params), n);
  });
}

d2d_status d2d_principal_number(d2d_potential potential, int m, int n_r, int* n) {
  return guarded([&] {
    need(n, "n");
    *n = principal_number(potential_of(potential), m, n_r);
  });
}

d2d_status d2d_spectrum_solve(const d2d_params* params, int m_max, int nr_max,
                              int radial_points, double r_max, int threads,
                              d2d_spectrum** out) {
  return guarded([&] {
    need(out, "out");
    const PhysicalParams p = params_of(params);
    require(m_max >= 0 && nr_max >= 0, "m_max and nr_max must be non-negative");
    require(radial_points >= 100, "radial_points must be at least 100");
    auto sectors = enumerate_sectors(p, m_max, nr_max);
    auto result = std::make_unique<d2d_spectrum>();
    result->entries = solve_sectors(p, sectors, radial_points, r_max, threads);
    *out = result.release();
  });
}

size_t d2d_spectrum_size(const d2d_spectrum* spectrum) {
  return spectrum == nullptr ? 0 : spectrum->entries.size();
}

d2d_status d2d_spectrum_row_at(const d2d_spectrum* spectrum, size_t index,
                               d2d_spectrum_row* row) {
  return guarded([&] {
    need(spectrum, "spectrum");
    need(row, "row");
    require(index < spectrum->entries.size(), "row index out of range");
    const auto& e = spectrum->entries[index];
    const auto& q = e.quantum_numbers;
    *row = {q.m, q.n_r, q.n, e.energy_analytic, e.energy_numeric.value_or(0.0),
            e.rel_error.value_or(0.0)};
  });
}

void d2d_spectrum_free(d2d_spectrum* spectrum) { delete spectrum; }

d2d_status d2d_thresholds_new(d2d_thresholds** out) {
  return guarded([&] {
    need(out, "out");
    *out = new d2d_thresholds();
  });
}

d2d_status d2d_thresholds_load(const char* path, d2d_thresholds** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    auto t = std::make_unique<d2d_thresholds>();
    t->table = ThresholdTable::load(path);
    *out = t.release();
  });
}

const char* d2d_default_thresholds_path(void) { return DIRAC2D_DEFAULT_FIXTURES; }

d2d_status d2d_thresholds_save(const d2d_thresholds* table, const char* path) {
  return guarded([&] {
    need(table, "table");
    need(path, "path");
    FILE* f = std::fopen(path, "wb");
    if (f == nullptr) fail(ErrorCode::kIo, std::string("cannot write ") + path);
    const std::string text = table->table.to_json() + "\n";
    const bool ok = std::fwrite(text.data(), 1, text.size(), f) == text.size();
    if (std::fclose(f) != 0 || !ok)
      fail(ErrorCode::kIo, std::string("failed writing ") + path);
  });
}

d2d_status d2d_thresholds_has_grid(const d2d_thresholds* table,
                                   d2d_potential potential, int grid, int* found) {
  return guarded([&] {
    need(table, "table");
    need(found, "found");
    *found = table->table.has_grid(potential_of(potential), grid) ? 1 : 0;
  });
}

d2d_status d2d_thresholds_calibration(const d2d_thresholds* table,
                                      d2d_potential potential, d2d_params* params,
                                      double* box, int* found) {
  return guarded([&] {
    need(table, "table");
    need(found, "found");
    const auto p = table->table.calibrated_params(potential_of(potential));
    *found = p ? 1 : 0;
    if (!p) return;
    if (params != nullptr) *params = to_c(*p);
    if (box != nullptr) *box = *table->table.calibrated_box(potential_of(potential));
  });
}

const char* d2d_thresholds_provenance(const d2d_thresholds* table) {
  return table == nullptr ? "" : table->table.provenance.c_str();
}

d2d_status d2d_thresholds_set_provenance(d2d_thresholds* table,
                                         const char* provenance) {
  return guarded([&] {
    need(table, "table");
    need(provenance, "provenance");
    table->table.provenance = provenance;
  });
}

void d2d_thresholds_free(d2d_thresholds* table) { delete table; }

void d2d_verify_options_init(d2d_verify_options* options, const d2d_params* params) {
  if (options == nullptr) return;
  const VerifyOptions defaults;
  options->params = params != nullptr ? *params : d2d_params{D2D_COULOMB, 1.0, 1.0, 0.0};
  options->grid = defaults.grid;
  options->box = defaults.box;
  options->seed = defaults.seed;
  options->eigen_n_max = defaults.eigen_n_max;
  options->radial_cells = defaults.radial_cells;
  options->threads = defaults.threads;
}

d2d_status d2d_verify(const d2d_verify_options* options,
                      const d2d_thresholds* table, d2d_report** out) {
  return guarded([&] {
    need(table, "table");
    need(out, "out");
    const VerifyOptions o = options_of(options);
    if (!table->table.has_grid(o.params.potential, o.grid))
      fail(ErrorCode::kInvalidArgument,
           "no calibrated thresholds for " + to_string(o.params.potential) +
               " at N=" + std::to_string(o.grid));
    auto suite = run_identity_suite(o);
    auto report = std::make_unique<d2d_report>();
    report->checks = grade(suite.residuals, o.params.potential, table->table);
    report->discrepancies = std::move(suite.discrepancies);
    report->warnings = std::move(suite.warnings);
    *out = report.release();
  });
}

d2d_status d2d_dense_crosscheck(const d2d_params* params, int grid, double box,
                                uint64_t seed, int states, d2d_report** out) {
  return guarded([&] {
    need(out, "out");
    auto report = std::make_unique<d2d_report>();
    report->checks = dense_crosscheck(params_of(params), grid, box, seed, states);
    *out = report.release();
  });
}

size_t d2d_report_size(const d2d_report* report) {
  return report == nullptr ? 0 : report->checks.size();
}

d2d_status d2d_report_check(const d2d_report* report, size_t index,
                            d2d_check* check) {
  return guarded([&] {
    need(report, "report");
    need(check, "check");
    require(index < report->checks.size(), "check index out of range");
    const auto& c = report->checks[index];
    *check = {c.name.c_str(), c.state.c_str(), c.grid, c.residual, c.threshold,
              c.pass ? 1 : 0};
  });
}

size_t d2d_report_discrepancy_count(const d2d_report* report) {
  return report == nullptr ? 0 : report->discrepancies.size();
}

d2d_status d2d_report_discrepancy(const d2d_report* report, size_t index,
                                  d2d_discrepancy* discrepancy) {
  return guarded([&] {
    need(report, "report");
    need(discrepancy, "discrepancy");
    require(index < report->discrepancies.size(), "discrepancy index out of range");
    const auto& d = report->discrepancies[index];
    *discrepancy = {d.name.c_str(), d.state.c_str(), d.grid, d.residual_as_printed,
                    d.residual_corrected, d.note.c_str()};
  });
}

size_t d2d_report_warning_count(const d2d_report* report) {
  return report == nullptr ? 0 : report->warnings.size();
}

const char* d2d_report_warning(const d2d_report* report, size_t index) {
  if (report == nullptr || index >= report->warnings.size()) return nullptr;
  return report->warnings[index].c_str();
}

void d2d_report_free(d2d_report* report) { delete report; }

d2d_status d2d_measure_casimir(const d2d_params* params, int m, int n_r, int grid,
                               double box, int radial_cells, d2d_casimir* out) {
  return guarded([&] {
    need(out, "out");
    const PhysicalParams p = params_of(params);
    require(box > 0.0, "box must be positive");
    const Eigenstate e = lift_eigenstate(p, m, n_r, Grid2D(grid, box), radial_cells);
    *out = {e.n, e.energy, measured_casimir(p, e), casimir_target(p.potential, e.n),
            e.outside_fraction, e.truncated ? 1 : 0};
  });
}

d2d_status d2d_converge(const d2d_verify_options* options, const int* grids,
                        size_t count, d2d_convergence** out) {
  return guarded([&] {
    need(out, "out");
    const VerifyOptions o = options_of(options);
    const auto g = grids_of(grids, count);
    auto study = std::make_unique<d2d_convergence>();
    study->series = convergence_study(o, g);
    *out = study.release();
  });
}

size_t d2d_convergence_size(const d2d_convergence* study) {
  return study == nullptr ? 0 : study->series.size();
}

d2d_status d2d_convergence_series(const d2d_convergence* study, size_t index,
                                  d2d_series_info* info) {
  return guarded([&] {
    need(study, "study");
    need(info, "info");
    require(index < study->series.size(), "series index out of range");
    const auto& s = study->series[index];
    *info = {s.name.c_str(), s.state.c_str(), s.fixed_state ? 1 : 0,
             s.at_rounding_level ? 1 : 0, s.decreasing ? 1 : 0, s.rows.size()};
  });
}

d2d_status d2d_convergence_row_at(const d2d_convergence* study, size_t series,
                                  size_t row, d2d_convergence_row* out) {
  return guarded([&] {
    need(study, "study");
    need(out, "out");
    require(series < study->series.size(), "series index out of range");
    const auto& rows = study->series[series].rows;
    require(row < rows.size(), "row index out of range");
    const auto& r = rows[row];
    *out = {r.grid, r.residual, r.ratio ? 1 : 0, r.ratio.value_or(0.0), r.rounding_level};
  });
}

void d2d_convergence_free(d2d_convergence* study) { delete study; }

d2d_status d2d_calibrate(const d2d_verify_options* options, const int* grids,
                         size_t count, d2d_thresholds* table) {
  return guarded([&] {
    need(table, "table");
    const VerifyOptions o = options_of(options);
    const auto g = grids_of(grids, count);
    require(!g.empty(), "at least one grid is required");
    calibrate(o, g, table->table);
  });
}

d2d_status d2d_nr_deviation_sweep(const d2d_params* params, int n,
                                  const double* sweep, size_t count,
                                  d2d_nr_row* rows) {
  return guarded([&] {
    need(sweep, "sweep");
    need(rows, "rows");
    const auto table = nr_deviation_sweep(params_of(params), n, {sweep, count});
    for (std::size_t i = 0; i < table.size(); ++i)
      rows[i] = {table[i].parameter, table[i].exact, table[i].nonrelativistic,
                 table[i].deviation};
  });
}

d2d_status d2d_spinor_ratio_sweep(const d2d_params* params, int n,
                                  const double* sweep, size_t count,
                                  d2d_ratio_row* rows) {
  return guarded([&] {
    need(sweep, "sweep");
    need(rows, "rows");
    const auto table = spinor_ratio_sweep(params_of(params), n, {sweep, count});
    for (std::size_t i = 0; i < table.size(); ++i)
      rows[i] = {table[i].parameter, table[i].energy, table[i].ratio};
  });
}

d2d_status d2d_coulomb_nr_deviation(int n, double k, double mass, double* deviation) {
  return guarded([&] {
    need(deviation, "deviation");
    PhysicalParams::coulomb(mass, k).validate();
    require(is_valid_level(Potential::kCoulomb, n), "invalid Coulomb level");
    *deviation = coulomb_nr_deviation(n, k, mass);
  });
}

}  // extern "C"
