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

#include "cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "dirac2d/dirac2d.h"

namespace dirac2d::cli {
namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<std::monostate, std::string, long long, double, bool>;

inline constexpr int kOutputSchemaVersion = 1;

// Input errors detected after parsing.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      return q + "\"";
    }
    std::string operator()(long long v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_double(v); }
    std::string operator()(bool v) const { return v ? "true" : "false"; }
  };
  return std::visit(Visitor{}, c);
}

Json json_cell(const Cell& c) {
  struct Visitor {
    Json operator()(std::monostate) const { return nullptr; }
    Json operator()(const std::string& s) const { return s; }
    Json operator()(long long v) const { return v; }
    Json operator()(double v) const {
      return std::isfinite(v) ? Json(v) : Json(nullptr);
    }
    Json operator()(bool v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

std::string to_csv(const Table& t) {
  std::ostringstream s;
  for (std::size_t i = 0; i < t.columns.size(); ++i) s << (i ? "," : "") << t.columns[i];
  s << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) s << (i ? "," : "") << csv_cell(row[i]);
    s << "\n";
  }
  return s.str();
}

Json records(const Table& t) {
  Json arr = Json::array();
  for (const auto& row : t.rows) {
    Json rec = Json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[t.columns[i]] = json_cell(row[i]);
    arr.push_back(std::move(rec));
  }
  return arr;
}

struct Options {
  std::string potential;
  double mass = 1.0;
  std::optional<double> k;
  std::optional<double> omega;
  std::optional<double> stiffness;
  int m_max = 2;
  int nr_max = 2;
  std::vector<int> grids;
  double box = 40.0;
  int radial_points = 2000;
  double r_max = 0.0;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 42;
  std::string thresholds;
  bool dense = false;
  int dense_states = 20;
  int eigen_n_max = -1;
  int threads = 0;
  std::optional<int> level;
  std::vector<double> sweep;
};

d2d_params physical_params(const Options& o) {
  d2d_params p{D2D_COULOMB, o.mass, 0.0, 0.0};
  if (o.potential == "coulomb") {
    if (!o.k) throw InvalidInput("--k is required for the Coulomb potential");
    if (o.omega || o.stiffness)
      throw InvalidInput("--omega and --stiffness do not apply to the Coulomb potential");
    p.k = *o.k;
  } else if (o.potential == "oscillator") {
    if (o.k) throw InvalidInput("--k does not apply to the oscillator potential");
    if (o.omega.has_value() == o.stiffness.has_value())
      throw InvalidInput("the oscillator needs exactly one of --omega and --stiffness");
    p.potential = D2D_OSCILLATOR;
    if (o.stiffness) {
      if (!(*o.stiffness > 0.0) || !(o.mass > 0.0))
        throw InvalidInput("--stiffness and --mass must be positive");
      p.omega = std::sqrt(*o.stiffness / o.mass);
    } else {
      p.omega = *o.omega;
    }
  } else {
    throw InvalidInput("--potential must be coulomb or oscillator");
  }
  if (d2d_params_validate(&p) != D2D_OK) throw InvalidInput(d2d_last_error());
  return p;
}

// Converts a failed C call into an exception carrying its status.
struct ApiError : std::runtime_error {
  d2d_status status;
  ApiError(d2d_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(d2d_status s) {
  if (s != D2D_OK) throw ApiError(s, d2d_last_error());
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using SpectrumPtr = std::unique_ptr<d2d_spectrum, Deleter<d2d_spectrum, d2d_spectrum_free>>;
using ReportPtr = std::unique_ptr<d2d_report, Deleter<d2d_report, d2d_report_free>>;
using ThresholdsPtr =
    std::unique_ptr<d2d_thresholds, Deleter<d2d_thresholds, d2d_thresholds_free>>;
using ConvergencePtr =
    std::unique_ptr<d2d_convergence, Deleter<d2d_convergence, d2d_convergence_free>>;

Json params_json(const d2d_params& p) {
  Json j = Json::object();
  j["potential"] = p.potential == D2D_COULOMB ? "coulomb" : "oscillator";
  j["mass"] = p.mass;
  if (p.potential == D2D_COULOMB) j["k"] = p.k; else j["omega"] = p.omega;
  return j;
}

struct Output {
  Table table;
  Json extra = Json::object();
  bool failed = false;
};

void emit(const std::string& command, const d2d_params& params, const Options& o,
          const Output& result, std::ostream& out) {
  std::string text;
  if (o.format == "json") {
    Json doc = Json::object();
    doc["schema_version"] = kOutputSchemaVersion;
    doc["command"] = command;
    doc["params"] = params_json(params);
    doc["records"] = records(result.table);
    for (const auto& [key, value] : result.extra.items()) doc[key] = value;
    text = doc.dump(2) + "\n";
  } else {
    text = to_csv(result.table);
  }
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw InvalidInput("cannot write " + o.out);
  f << text;
  if (!f) throw InvalidInput("failed writing " + o.out);
}

d2d_verify_options verify_options(const d2d_params& p, const Options& o, int grid) {
  d2d_verify_options v;
  d2d_verify_options_init(&v, &p);
  v.grid = grid;
  v.box = o.box;
  v.seed = o.seed;
  v.eigen_n_max = o.eigen_n_max;
  v.threads = o.threads;
  return v;
}

Output spectrum(const d2d_params& p, const Options& o) {
  d2d_spectrum* raw = nullptr;
  check(d2d_spectrum_solve(&p, o.m_max, o.nr_max, o.radial_points, o.r_max, o.threads, &raw));
  SpectrumPtr s(raw);
  Output r;
  r.table.columns = {"potential", "m", "n_r", "n", "E_analytic", "E_numeric", "rel_err"};
  const std::string name = p.potential == D2D_COULOMB ? "coulomb" : "oscillator";
  for (std::size_t i = 0; i < d2d_spectrum_size(s.get()); ++i) {
    d2d_spectrum_row row;
    check(d2d_spectrum_row_at(s.get(), i, &row));
    r.table.rows.push_back({name, (long long)row.m, (long long)row.n_r, (long long)row.n,
                            row.energy_analytic, row.energy_numeric, row.rel_error});
  }
  return r;
}

void report_checks(const d2d_report* report, Output& r, std::ostream& err) {
  r.table.columns = {"check", "state", "grid", "residual", "threshold", "pass"};
  for (std::size_t i = 0; i < d2d_report_size(report); ++i) {
    d2d_check c;
    check(d2d_report_check(report, i, &c));
    r.table.rows.push_back({std::string(c.name), std::string(c.state), (long long)c.grid,
                            c.residual, c.threshold, c.pass != 0});
    if (!c.pass) {
      r.failed = true;
      err << "FAIL " << c.name << " on " << c.state << " at N=" << c.grid
          << ": residual " << format_double(c.residual) << " > threshold "
          << format_double(c.threshold) << "\n";
    }
  }
}

void warn_if_uncalibrated(const d2d_params& p, const Options& o,
                          const d2d_thresholds* table, std::ostream& err) {
  d2d_params cal;
  double box = 0.0;
  int found = 0;
  check(d2d_thresholds_calibration(table, p.potential, &cal, &box, &found));
  if (!found) return;
  const bool same = cal.mass == p.mass && box == o.box &&
                    (p.potential == D2D_COULOMB ? cal.k == p.k : cal.omega == p.omega);
  if (!same)
    err << "warning: thresholds were calibrated at " << params_json(cal).dump()
        << " with box " << format_double(box) << "; residuals at "
        << params_json(p).dump() << " with box " << format_double(o.box)
        << " are graded against them unchanged\n";
}

Output verify(const d2d_params& p, const Options& o, std::ostream& err) {
  if (o.grids.size() > 1) throw InvalidInput("verify takes a single --grid");
  const int grid = o.grids.empty() ? (o.dense ? 16 : 256) : o.grids.front();
  Output r;
  d2d_report* raw = nullptr;
  if (o.dense) {
    check(d2d_dense_crosscheck(&p, grid, o.box, o.seed, o.dense_states, &raw));
    ReportPtr report(raw);
    report_checks(report.get(), r, err);
    return r;
  }
  const std::string path = o.thresholds.empty() ? d2d_default_thresholds_path() : o.thresholds;
  d2d_thresholds* traw = nullptr;
  check(d2d_thresholds_load(path.c_str(), &traw));
  ThresholdsPtr table(traw);
  int found = 0;
  check(d2d_thresholds_has_grid(table.get(), p.potential, grid, &found));
  if (!found)
    throw InvalidInput("no calibrated thresholds for N=" + std::to_string(grid) + " in " + path);
  warn_if_uncalibrated(p, o, table.get(), err);
  const d2d_verify_options v = verify_options(p, o, grid);
  check(d2d_verify(&v, table.get(), &raw));
  ReportPtr report(raw);
  report_checks(report.get(), r, err);
  for (std::size_t i = 0; i < d2d_report_warning_count(report.get()); ++i)
    err << "warning: " << d2d_report_warning(report.get(), i) << "\n";
  Json discrepancies = Json::array();
  for (std::size_t i = 0; i < d2d_report_discrepancy_count(report.get()); ++i) {
    d2d_discrepancy d;
    check(d2d_report_discrepancy(report.get(), i, &d));
    discrepancies.push_back({{"check", d.name}, {"state", d.state}, {"grid", d.grid},
                             {"residual_as_printed", d.residual_as_printed},
                             {"residual_corrected", d.residual_corrected},
                             {"note", d.note}});
  }
  if (!discrepancies.empty()) {
    err << "note: " << discrepancies.size() << " discrepancy records (as printed vs corrected)"
        << (o.format == "json" ? " under \"discrepancies\"" : "; use --format json to list them")
        << "\n";
    r.extra["discrepancies"] = std::move(discrepancies);
  }
  return r;
}

Output converge(const d2d_params& p, const Options& o, std::ostream& err) {
  const std::vector<int> grids = o.grids.empty() ? std::vector<int>{64, 128, 256} : o.grids;
  const d2d_verify_options v = verify_options(p, o, grids.back());
  d2d_convergence* raw = nullptr;
  check(d2d_converge(&v, grids.data(), grids.size(), &raw));
  ConvergencePtr study(raw);
  Output r;
  r.table.columns = {"check", "state", "grid", "residual", "ratio", "rounding_level",
                     "fixed_state", "at_rounding_level", "decreasing"};
  for (std::size_t i = 0; i < d2d_convergence_size(study.get()); ++i) {
    d2d_series_info s;
    check(d2d_convergence_series(study.get(), i, &s));
    for (std::size_t j = 0; j < s.rows; ++j) {
      d2d_convergence_row row;
      check(d2d_convergence_row_at(study.get(), i, j, &row));
      r.table.rows.push_back({std::string(s.name), std::string(s.state), (long long)row.grid,
                              row.residual,
                              row.has_ratio ? Cell(row.ratio) : Cell(std::monostate{}),
                              row.rounding_level, s.fixed_state != 0,
                              s.at_rounding_level != 0, s.decreasing != 0});
    }
    if (s.fixed_state && !s.decreasing) {
      r.failed = true;
      d2d_convergence_row last;
      check(d2d_convergence_row_at(study.get(), i, s.rows - 1, &last));
      err << "FAIL " << s.name << " on " << s.state
          << ": residual does not decrease with N (last " << format_double(last.residual)
          << " at N=" << last.grid << ")\n";
    }
  }
  return r;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

Output nrlimit(const d2d_params& p, const Options& o, std::ostream& err) {
  const bool coulomb = p.potential == D2D_COULOMB;
  const int n = o.level.value_or(coulomb ? 1 : 0);
  const std::vector<double> sweep =
      !o.sweep.empty() ? o.sweep
                       : (coulomb ? std::vector<double>{0.4, 0.2, 0.1}
                                  : std::vector<double>{10.0, 100.0, 1000.0});
  std::vector<d2d_nr_row> dev(sweep.size());
  std::vector<d2d_ratio_row> ratio(sweep.size());
  check(d2d_nr_deviation_sweep(&p, n, sweep.data(), sweep.size(), dev.data()));
  check(d2d_spinor_ratio_sweep(&p, n, sweep.data(), sweep.size(), ratio.data()));

  Output r;
  r.table.columns = {"parameter", "n", "E_analytic", "E_nonrelativistic", "deviation",
                     "deviation_expected", "E_radial", "spinor_ratio"};
  Json checks = Json::array();
  auto record = [&](const std::string& name, double residual, double threshold, bool pass) {
    checks.push_back({{"check", name}, {"residual", residual},
                      {"threshold", threshold}, {"pass", pass}});
    if (!pass) {
      r.failed = true;
      err << "FAIL " << name << ": residual " << format_double(residual) << " > threshold "
          << format_double(threshold) << "\n";
    }
  };
  std::vector<double> deviations, ratios;
  double worst_formula = 0.0;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    Cell expected = std::monostate{};
    if (coulomb) {
      double e = 0.0;
      check(d2d_coulomb_nr_deviation(n, sweep[i], p.mass, &e));
      expected = e;
      worst_formula = std::max(worst_formula, std::abs(dev[i].deviation - e) / std::abs(e));
    }
    deviations.push_back(std::abs(dev[i].deviation));
    ratios.push_back(ratio[i].ratio);
    r.table.rows.push_back({dev[i].parameter, (long long)n, dev[i].energy,
                            dev[i].nonrelativistic, dev[i].deviation, expected,
                            ratio[i].energy, ratio[i].ratio});
  }
  // Strict monotonicity is graded as pass/fail with residual 0 or 1.
  if (coulomb) record("nr.deviation_formula", worst_formula, 1e-12, worst_formula <= 1e-12);
  else record("nr.deviation_decreasing", strictly_decreasing(deviations) ? 0.0 : 1.0, 0.0,
              strictly_decreasing(deviations));
  record("nr.spinor_ratio_decreasing", strictly_decreasing(ratios) ? 0.0 : 1.0, 0.0,
         strictly_decreasing(ratios));
  r.extra["checks"] = std::move(checks);
  return r;
}

Output calibrate(const d2d_params& p, const Options& o, const std::string& command_line,
                 std::ostream& err) {
  if (o.out.empty()) throw InvalidInput("calibrate needs --out for the fixture file");
  const std::vector<int> grids = o.grids.empty() ? std::vector<int>{64, 128, 256} : o.grids;
  d2d_thresholds* raw = nullptr;
  if (std::ifstream(o.out).good()) check(d2d_thresholds_load(o.out.c_str(), &raw));
  else check(d2d_thresholds_new(&raw));
  ThresholdsPtr table(raw);
  const d2d_verify_options v = verify_options(p, o, grids.back());
  check(d2d_calibrate(&v, grids.data(), grids.size(), table.get()));
  const std::string tag = p.potential == D2D_COULOMB ? "coulomb" : "oscillator";
  // One provenance line per potential; recalibrating replaces that line.
  std::istringstream previous(d2d_thresholds_provenance(table.get()));
  std::string provenance, line;
  while (std::getline(previous, line))
    if (!line.empty() && line.rfind(tag + ":", 0) != 0) provenance += line + "\n";
  provenance += tag + ": dirac2d " + command_line +
                "; threshold = max(factor * residual, floor)";
  check(d2d_thresholds_set_provenance(table.get(), provenance.c_str()));
  check(d2d_thresholds_save(table.get(), o.out.c_str()));
  err << "wrote " << tag << " thresholds for " << grids.size() << " grids to " << o.out << "\n";
  return {};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"2D Dirac spectra and conserved-quantity checks",
               "dirac2d"};
  app.require_subcommand(1, 1);
  Options o;

  auto add_physics = [&](CLI::App* sub) {
    sub->add_option("--potential", o.potential, "coulomb or oscillator")
        ->required()
        ->check(CLI::IsMember({"coulomb", "oscillator"}));
    sub->add_option("--mass", o.mass, "rest mass M")->capture_default_str();
    sub->add_option("--k", o.k, "Coulomb strength, V = -k/r");
    auto* omega = sub->add_option("--omega", o.omega, "oscillator frequency");
    auto* stiffness = sub->add_option("--stiffness", o.stiffness, "oscillator stiffness M omega^2");
    omega->excludes(stiffness);
    sub->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--threads", o.threads, "worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
  };
  auto add_grid = [&](CLI::App* sub, bool multiple) {
    auto* g = sub->add_option("--grid", o.grids, multiple ? "grid sizes N" : "grid size N")
                  ->check(CLI::PositiveNumber);
    if (!multiple) g->expected(1);
    sub->add_option("--box", o.box, "box side")->capture_default_str();
    sub->add_option("--seed", o.seed, "seed of the random test states")->capture_default_str();
    sub->add_option("--eigen-n-max", o.eigen_n_max,
                    "highest level lifted for eigenstate checks (-1 = default)");
  };

  auto* spectrum_cmd = app.add_subcommand("spectrum", "radial spectrum against the analytic levels");
  add_physics(spectrum_cmd);
  spectrum_cmd->add_option("--m-max", o.m_max, "largest |m|")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  spectrum_cmd->add_option("--nr-max", o.nr_max, "largest n_r")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  spectrum_cmd->add_option("--radial-points", o.radial_points, "radial cells")
      ->capture_default_str();
  spectrum_cmd->add_option("--r-max", o.r_max, "radial extent (0 = per-level default)")
      ->capture_default_str();

  auto* verify_cmd = app.add_subcommand("verify", "identity suite graded against fixtures");
  add_physics(verify_cmd);
  add_grid(verify_cmd, false);
  verify_cmd->add_option("--thresholds", o.thresholds, "threshold fixture file");
  verify_cmd->add_flag("--dense-crosscheck", o.dense,
                       "compare dense matrices with matrix-free actions instead");
  verify_cmd->add_option("--dense-states", o.dense_states, "random states for the dense check")
      ->capture_default_str();

  auto* converge_cmd = app.add_subcommand("converge", "identity residuals across grid sizes");
  add_physics(converge_cmd);
  add_grid(converge_cmd, true);

  auto* nrlimit_cmd = app.add_subcommand("nrlimit", "non-relativistic limit sweeps");
  add_physics(nrlimit_cmd);
  nrlimit_cmd->add_option("--n", o.level, "principal number (default 1 Coulomb, 0 oscillator)");
  nrlimit_cmd->add_option("--sweep", o.sweep,
                          "k values (Coulomb, decreasing) or masses (oscillator, increasing)");

  auto* calibrate_cmd = app.add_subcommand("calibrate", "record threshold fixtures");
  add_physics(calibrate_cmd);
  add_grid(calibrate_cmd, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  std::string command_line;
  for (int i = 1; i < argc; ++i) command_line += (i > 1 ? " " : "") + std::string(argv[i]);

  try {
    const d2d_params p = physical_params(o);
    Output r;
    std::string name;
    if (spectrum_cmd->parsed()) {
      name = "spectrum";
      r = spectrum(p, o);
    } else if (verify_cmd->parsed()) {
      name = "verify";
      r = verify(p, o, err);
    } else if (converge_cmd->parsed()) {
      name = "converge";
      r = converge(p, o, err);
    } else if (nrlimit_cmd->parsed()) {
      name = "nrlimit";
      r = nrlimit(p, o, err);
    } else {
      calibrate(p, o, command_line, err);
      return kExitOk;
    }
    emit(name, p, o, r, out);
    return r.failed ? kExitFailedCheck : kExitOk;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const ApiError& e) {
    err << "error: " << e.what() << "\n";
    return e.status == D2D_ERR_INVALID_ARGUMENT || e.status == D2D_ERR_IO
               ? kExitInvalidInput
               : kExitFailedCheck;
  }
}

}  // namespace dirac2d::cli
