/* Copyright 2026 The dirac2d Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

/* C interface to the dirac2d library.
 *
 * Every function returns d2d_status; on failure d2d_last_error() describes
 * the error on the calling thread. Result objects are opaque handles owned by
 * the caller and released with the matching *_free function. Strings handed
 * out through row structs stay valid until their handle is freed. */

#ifndef DIRAC2D_DIRAC2D_H_
#define DIRAC2D_DIRAC2D_H_

#include <stddef.h>
#include <stdint.h>

#if defined(DIRAC2D_BUILDING_LIBRARY)
#define D2D_API __attribute__((visibility("default")))
#else
#define D2D_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum d2d_status {
  D2D_OK = 0,
  D2D_ERR_INVALID_ARGUMENT = 1,
  D2D_ERR_NUMERICAL = 2,
  D2D_ERR_SHAPE_MISMATCH = 3,
  D2D_ERR_IO = 4,
  D2D_ERR_INTERNAL = 5
} d2d_status;

typedef enum d2d_potential {
  D2D_COULOMB = 0,
  D2D_OSCILLATOR = 1
} d2d_potential;

/* V = -k / r (Coulomb) or M omega^2 r^2 / 2 (oscillator). Only the coupling
 * of the selected potential is read. */
typedef struct d2d_params {
  d2d_potential potential;
  double mass;
  double k;
  double omega;
} d2d_params;

D2D_API const char* d2d_version(void);
/* Message of the last failed call on this thread; "" if none. */
D2D_API const char* d2d_last_error(void);

D2D_API d2d_status d2d_params_validate(const d2d_params* params);
D2D_API d2d_status d2d_analytic_energy(const d2d_params* params, int n,
                                       double* energy);
D2D_API d2d_status d2d_principal_number(d2d_potential potential, int m,
                                        int n_r, int* n);

/* ---- spectrum ---------------------------------------------------------- */

typedef struct d2d_spectrum d2d_spectrum;

typedef struct d2d_spectrum_row {
  int m;
  int n_r;
  int n;
  double energy_analytic;
  double energy_numeric;
  double rel_error;
} d2d_spectrum_row;

/* Radial solves of every sector with |m| <= m_max and n_r <= nr_max,
 * Richardson extrapolated over radial_points and 2 * radial_points cells.
 * r_max <= 0 picks the default extent per level; threads = 0 uses every
 * core. */
D2D_API d2d_status d2d_spectrum_solve(const d2d_params* params, int m_max,
                                      int nr_max, int radial_points,
                                      double r_max, int threads,
                                      d2d_spectrum** out);
D2D_API size_t d2d_spectrum_size(const d2d_spectrum* spectrum);
D2D_API d2d_status d2d_spectrum_row_at(const d2d_spectrum* spectrum,
                                       size_t index, d2d_spectrum_row* row);
D2D_API void d2d_spectrum_free(d2d_spectrum* spectrum);

/* ---- thresholds -------------------------------------------------------- */

typedef struct d2d_thresholds d2d_thresholds;

D2D_API d2d_status d2d_thresholds_new(d2d_thresholds** out);
D2D_API d2d_status d2d_thresholds_load(const char* path, d2d_thresholds** out);
/* Fixture file installed with the library at build time. */
D2D_API const char* d2d_default_thresholds_path(void);
D2D_API d2d_status d2d_thresholds_save(const d2d_thresholds* table,
                                       const char* path);
D2D_API d2d_status d2d_thresholds_has_grid(const d2d_thresholds* table,
                                           d2d_potential potential, int grid,
                                           int* found);
/* *found = 0 when the table holds no calibration for the potential. */
D2D_API d2d_status d2d_thresholds_calibration(const d2d_thresholds* table,
                                              d2d_potential potential,
                                              d2d_params* params, double* box,
                                              int* found);
/* Valid until the table is modified or freed. */
D2D_API const char* d2d_thresholds_provenance(const d2d_thresholds* table);
D2D_API d2d_status d2d_thresholds_set_provenance(d2d_thresholds* table,
                                                 const char* provenance);
D2D_API void d2d_thresholds_free(d2d_thresholds* table);

/* ---- verification ------------------------------------------------------ */

typedef struct d2d_verify_options {
  d2d_params params;
  int grid;
  double box;
  uint64_t seed;
  /* Highest level lifted for eigenstate checks; < 0 picks the default. */
  int eigen_n_max;
  int radial_cells;
  int threads;
} d2d_verify_options;

/* grid 256, box 40, seed 42, default eigenstates, all cores. */
D2D_API void d2d_verify_options_init(d2d_verify_options* options,
                                     const d2d_params* params);

typedef struct d2d_report d2d_report;

typedef struct d2d_check {
  const char* name;
  const char* state;
  int grid;
  double residual;
  double threshold;
  int pass;
} d2d_check;

typedef struct d2d_discrepancy {
  const char* name;
  const char* state;
  int grid;
  double residual_as_printed;
  double residual_corrected;
  const char* note;
} d2d_discrepancy;

/* Identity suite graded against the table. A grid missing from the table is
 * D2D_ERR_INVALID_ARGUMENT. */
D2D_API d2d_status d2d_verify(const d2d_verify_options* options,
                              const d2d_thresholds* table, d2d_report** out);
/* Dense materialization against matrix-free action; grid <= 32. */
D2D_API d2d_status d2d_dense_crosscheck(const d2d_params* params, int grid,
                                        double box, uint64_t seed, int states,
                                        d2d_report** out);
D2D_API size_t d2d_report_size(const d2d_report* report);
D2D_API d2d_status d2d_report_check(const d2d_report* report, size_t index,
                                    d2d_check* check);
D2D_API size_t d2d_report_discrepancy_count(const d2d_report* report);
D2D_API d2d_status d2d_report_discrepancy(const d2d_report* report,
                                          size_t index,
                                          d2d_discrepancy* discrepancy);
/* Diagnostics such as eigenstates cut by the box; NULL when out of range. */
D2D_API size_t d2d_report_warning_count(const d2d_report* report);
D2D_API const char* d2d_report_warning(const d2d_report* report, size_t index);
D2D_API void d2d_report_free(d2d_report* report);

/* Lifts sector (m, n_r) onto the grid and measures the Casimir value as a
 * Rayleigh quotient. */
typedef struct d2d_casimir {
  int n;
  double energy;
  double measured;
  double target;
  double outside_fraction;
  int truncated;
} d2d_casimir;

D2D_API d2d_status d2d_measure_casimir(const d2d_params* params, int m,
                                       int n_r, int grid, double box,
                                       int radial_cells, d2d_casimir* out);

/* ---- convergence and calibration --------------------------------------- */

typedef struct d2d_convergence d2d_convergence;

typedef struct d2d_series_info {
  const char* name;
  const char* state;
  int fixed_state;
  /* Every row at or below its rounding level. */
  int at_rounding_level;
  /* Each row below its predecessor or at its rounding level. */
  int decreasing;
  size_t rows;
} d2d_series_info;

typedef struct d2d_convergence_row {
  int grid;
  double residual;
  int has_ratio;
  double ratio;
  /* Residual reachable by rounding alone; 0 when not measured. */
  double rounding_level;
} d2d_convergence_row;

/* Identity suite at each grid size; options->grid is ignored. */
D2D_API d2d_status d2d_converge(const d2d_verify_options* options,
                                const int* grids, size_t count,
                                d2d_convergence** out);
D2D_API size_t d2d_convergence_size(const d2d_convergence* study);
D2D_API d2d_status d2d_convergence_series(const d2d_convergence* study,
                                          size_t index, d2d_series_info* info);
D2D_API d2d_status d2d_convergence_row_at(const d2d_convergence* study,
                                          size_t series, size_t row,
                                          d2d_convergence_row* out);
D2D_API void d2d_convergence_free(d2d_convergence* study);

/* Records max(3 residual, 1e-12) for every check at each grid. */
D2D_API d2d_status d2d_calibrate(const d2d_verify_options* options,
                                 const int* grids, size_t count,
                                 d2d_thresholds* table);

/* ---- non-relativistic limits ------------------------------------------- */

typedef struct d2d_nr_row {
  double parameter;
  double energy;
  double nonrelativistic;
  double deviation;
} d2d_nr_row;

typedef struct d2d_ratio_row {
  double parameter;
  double energy;
  double ratio;
} d2d_ratio_row;

/* Coulomb: k strictly decreasing at fixed mass. Oscillator: mass strictly
 * increasing at the stiffness M omega^2 of params. rows holds count
 * entries. */
D2D_API d2d_status d2d_nr_deviation_sweep(const d2d_params* params, int n,
                                          const double* sweep, size_t count,
                                          d2d_nr_row* rows);
D2D_API d2d_status d2d_spinor_ratio_sweep(const d2d_params* params, int n,
                                          const double* sweep, size_t count,
                                          d2d_ratio_row* rows);
/* 2 k^4 M / (n^2 (n^2 + k^2)). */
D2D_API d2d_status d2d_coulomb_nr_deviation(int n, double k, double mass,
                                            double* deviation);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* DIRAC2D_DIRAC2D_H_ */
