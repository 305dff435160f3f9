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

#include "dirac2d/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "dirac2d/error.hpp"
#include "dirac2d/operators.hpp"
#include "dirac2d/parallel.hpp"

namespace dirac2d {

void RadialGrid::validate() const {
  require(cells >= 4, "radial grid needs at least 4 cells");
  require(std::isfinite(r_max) && r_max > 0.0, "radial extent must be positive");
}

double default_radial_extent(const PhysicalParams& params, int n) {
  params.validate();
  require(is_valid_level(params.potential, n), "invalid principal number");
  const double mass = params.mass;
  // Coulomb: outer turning radius n^2 / (2 M k) plus 40 decay lengths
  // n / (2 M k).
  if (params.potential == Potential::kCoulomb)
    return (n * n + 40.0 * n) / (2.0 * mass * params.k);
  const double w = params.omega;
  return 12.0 * std::sqrt((n + 1.0) / (mass * w * std::sqrt(1.0 + (n + 1.0) * w / mass)));
}

TridiagonalMatrix build_radial_matrix(const PhysicalParams& params, int m,
                                      double energy, const RadialGrid& grid) {
  params.validate();
  grid.validate();
  require(std::isfinite(energy) && energy > -params.mass,
          "radial reduction needs E > -M");
  const int n = grid.cells;
  const double h = grid.spacing();
  const double h2 = h * h;
  const double coupling = energy + params.mass;
  const double m2 = static_cast<double>(m) * m;
  TridiagonalMatrix t;
  t.diagonal.resize(static_cast<std::size_t>(n));
  t.off_diagonal.resize(static_cast<std::size_t>(n - 1));
  for (int j = 0; j < n; ++j) {
    const double r = grid.node(j);
    const double inner_face = j * h;
    const double outer_face = (j + 1) * h;
    t.diagonal[j] = (inner_face + outer_face) / (r * h2) + m2 / (r * r) +
                    coupling * params.potential_at(r);
    if (j + 1 < n)
      t.off_diagonal[j] = -outer_face / (h2 * std::sqrt(r * grid.node(j + 1)));
  }
  return t;
}

double secular_function(const PhysicalParams& params, int m, int n_r,
                        double energy, const RadialGrid& grid) {
  const auto t = build_radial_matrix(params, m, energy, grid);
  const double eps = kth_smallest_eigenvalue(t, n_r);
  return eps - (energy * energy - params.mass * params.mass);
}

RadialEigenpair radial_eigenpair(const PhysicalParams& params, int m, int n_r,
                                 double energy, const RadialGrid& grid) {
  const auto t = build_radial_matrix(params, m, energy, grid);
  RadialEigenpair pair;
  pair.epsilon = kth_smallest_eigenvalue(t, n_r);
  pair.m = m;
  pair.n_r = n_r;
  pair.grid = grid;
  const auto v = eigenvector(t, pair.epsilon);
  // Undo the sqrt(r) scaling; the 2-norm of v becomes the weighted norm.
  const double h = grid.spacing();
  pair.profile.resize(v.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    pair.profile[j] = v[j] / std::sqrt(grid.node(static_cast<int>(j)) * h);
  return pair;
}

int count_nodes(const std::vector<double>& profile, double relative_floor) {
  double vmax = 0.0;
  for (double x : profile) vmax = std::max(vmax, std::abs(x));
  const double floor = relative_floor * vmax;
  int nodes = 0;
  int last_sign = 0;
  for (double x : profile) {
    if (std::abs(x) <= floor) continue;
    const int s = x > 0.0 ? 1 : -1;
    if (last_sign != 0 && s != last_sign) ++nodes;
    last_sign = s;
  }
  return nodes;
}

namespace {

struct Bracket {
  double lo, f_lo, hi, f_hi;
  int evaluations;
};

// phi decreases through each physical root: phi(lo) > 0 > phi(hi).
Bracket find_bracket(const PhysicalParams& params, int m, int n_r, int n,
                     const RadialGrid& grid) {
  const double mass = params.mass;
  const double floor = -mass * (1.0 - 1e-9);
  const double guess = nr_energy(params, n);
  const double center = std::max(guess, floor + 1e-3 * mass);
  double width = 0.1 * std::abs(guess - mass) + 1e-6 * mass;
  auto phi = [&](double e) { return secular_function(params, m, n_r, e, grid); };
  int evaluations = 0;
  for (int widen = 0; widen < 60; ++widen, width *= 2.0) {
    const double lo = std::max(center - width, floor);
    const double hi = center + width;
    const double f_lo = phi(lo);
    const double f_hi = phi(hi);
    evaluations += 2;
    if (f_lo > 0.0 && f_hi < 0.0) return {lo, f_lo, hi, f_hi, evaluations};
    if (f_lo < 0.0 && f_hi > 0.0) {
      std::ostringstream msg;
      msg << "secular function increases across [" << lo << ", " << hi
          << "] in sector m=" << m << " n_r=" << n_r
          << "; the bracket straddles two levels";
      fail(ErrorCode::kNumerical, msg.str());
    }
    if (lo <= floor && f_lo <= 0.0) break;
  }
  std::ostringstream msg;
  msg << "no sign change of the secular function for sector m=" << m
      << " n_r=" << n_r << " (radial extent " << grid.r_max << ", "
      << grid.cells << " cells too small?)";
  fail(ErrorCode::kNumerical, msg.str());
}

}  // namespace

SectorSolution solve_sector_full(const PhysicalParams& params, int m, int n_r,
                                 const RadialGrid& grid, double tol) {
  params.validate();
  grid.validate();
  require(n_r >= 0, "radial node count must be non-negative");
  require(n_r < grid.cells, "radial node count exceeds the grid");
  const int n = principal_number(params.potential, m, n_r);
  const double mass = params.mass;
  auto phi = [&](double e) { return secular_function(params, m, n_r, e, grid); };

  Bracket b = find_bracket(params, m, n_r, n, grid);
  double lo = b.lo, f_lo = b.f_lo, hi = b.hi, f_hi = b.f_hi;
  int evaluations = b.evaluations;
  const double target = tol * mass * mass;

  double x = 0.5 * (lo + hi);
  double fx = std::numeric_limits<double>::infinity();
  int last_side = 0;
  int stalled = 0;
  double best = std::numeric_limits<double>::infinity();
  bool bisect_only = false;
  for (int it = 0; it < 400; ++it) {
    // Illinois regula falsi; the retained end's value is halved when the
    // same side is replaced twice in a row.
    double next = bisect_only ? 0.5 * (lo + hi)
                              : (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
    fx = phi(x);
    ++evaluations;
    if (std::abs(fx) <= target) break;
    if (fx > 0.0) {
      lo = x;
      f_lo = fx;
      if (last_side == -1) f_hi *= 0.5;
      last_side = -1;
    } else {
      hi = x;
      f_hi = fx;
      if (last_side == 1) f_lo *= 0.5;
      last_side = 1;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(x), mass))
      break;
    // Degenerate-root guard: fall back to bisection if |phi| plateaus.
    if (std::abs(fx) < 0.5 * best) {
      best = std::abs(fx);
      stalled = 0;
    } else if (++stalled >= 8) {
      bisect_only = true;
    }
  }

  SectorSolution out;
  out.energy = x;
  out.secular_residual = std::abs(fx);
  out.evaluations = evaluations;
  out.pair = radial_eigenpair(params, m, n_r, x, grid);
  out.entry.quantum_numbers = make_quantum_numbers(params.potential, m, n_r);
  out.entry.energy_analytic = analytic_energy(params, n);
  out.entry.energy_numeric = x;
  const double ref = out.entry.energy_analytic != 0.0
                         ? std::abs(out.entry.energy_analytic)
                         : mass;
  out.entry.rel_error = std::abs(x - out.entry.energy_analytic) / ref;
  return out;
}

SpectrumEntry solve_sector(const PhysicalParams& params, int m, int n_r,
                           const RadialGrid& grid, double tol) {
  return solve_sector_full(params, m, n_r, grid, tol).entry;
}

double richardson(double value_h, double value_h2, int order) {
  require(order >= 1, "Richardson order must be at least 1");
  const double f = std::ldexp(1.0, order);
  return (f * value_h2 - value_h) / (f - 1.0);
}

ExtrapolatedSolve solve_sector_extrapolated(const PhysicalParams& params, int m,
                                            int n_r, int cells, double r_max) {
  params.validate();
  const int n = principal_number(params.potential, m, n_r);
  const double extent = r_max > 0.0 ? r_max : default_radial_extent(params, n);
  const RadialGrid coarse{cells, extent};
  const RadialGrid fine{2 * cells, extent};
  ExtrapolatedSolve out;
  out.coarse_grid = coarse;
  out.coarse_energy = solve_sector_full(params, m, n_r, coarse).energy;
  out.fine_energy = solve_sector_full(params, m, n_r, fine).energy;
  out.entry.quantum_numbers = make_quantum_numbers(params.potential, m, n_r);
  out.entry.energy_analytic = analytic_energy(params, n);
  const double e = richardson(out.coarse_energy, out.fine_energy, 2);
  out.entry.energy_numeric = e;
  const double ref = out.entry.energy_analytic != 0.0
                         ? std::abs(out.entry.energy_analytic)
                         : params.mass;
  out.entry.rel_error = std::abs(e - out.entry.energy_analytic) / ref;
  return out;
}

std::vector<SpectrumEntry> solve_sectors(const PhysicalParams& params,
                                         const std::vector<SpectrumEntry>& sectors,
                                         int cells, double r_max, int threads) {
  std::vector<SpectrumEntry> out(sectors.size());
  parallel_for(sectors.size(), threads, [&](std::size_t i) {
    const auto& q = sectors[i].quantum_numbers;
    out[i] = solve_sector_extrapolated(params, q.m, q.n_r, cells, r_max).entry;
  });
  return out;
}

double interpolate_profile(const RadialEigenpair& pair, double r) {
  const auto& f = pair.profile;
  const int cells = static_cast<int>(f.size());
  const double h = pair.grid.spacing();
  const double parity = (std::abs(pair.m) % 2 == 0) ? 1.0 : -1.0;
  // Node j sits at (j + 1/2) h; negative j mirrors through the origin and
  // j >= cells lies beyond the Dirichlet edge.
  auto sample = [&](int j) {
    if (j >= cells) return 0.0;
    if (j < 0) return parity * f[static_cast<std::size_t>(-j - 1)];
    return f[static_cast<std::size_t>(j)];
  };
  const double t = r / h - 0.5;
  const int j0 = static_cast<int>(std::floor(t));
  if (j0 >= cells + 1) return 0.0;
  const double u = t - j0;
  // Four-point Lagrange weights on nodes j0-1 .. j0+2.
  const double w0 = -u * (u - 1.0) * (u - 2.0) / 6.0;
  const double w1 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
  const double w2 = -(u + 1.0) * u * (u - 2.0) / 2.0;
  const double w3 = (u + 1.0) * u * (u - 1.0) / 6.0;
  return w0 * sample(j0 - 1) + w1 * sample(j0) + w2 * sample(j0 + 1) +
         w3 * sample(j0 + 2);
}

SpinorField lift_to_grid(const RadialEigenpair& pair, double energy,
                         const PhysicalParams& params, const Grid2D& grid,
                         LiftDiagnostics* diagnostics) {
  params.validate();
  require(std::isfinite(energy) && energy > -params.mass,
          "lifting needs E > -M");
  const int am = std::abs(pair.m);
  const double sign = pair.m >= 0 ? 1.0 : -1.0;
  ScalarField upper(grid);
  for (int i1 = 0; i1 < grid.n(); ++i1) {
    const double a = grid.coordinate(i1);
    for (int i2 = 0; i2 < grid.n(); ++i2) {
      const double b = grid.coordinate(i2);
      const double r = std::hypot(a, b);
      const Complex phase = std::pow(Complex(a / r, sign * b / r), am);
      upper.at(i1, i2) = interpolate_profile(pair, r) * phase;
    }
  }
  ScalarField lower = ops::ladder_b_dagger().apply(upper);
  lower *= 1.0 / (energy + params.mass);
  SpinorField out(std::move(upper), std::move(lower));
  const double norm = out.norm();
  require(norm > 0.0, "lifted state vanishes on the grid");
  out *= 1.0 / norm;

  if (diagnostics != nullptr) {
    const double h = pair.grid.spacing();
    const double edge = 0.5 * grid.box();
    double outside = 0.0, total = 0.0;
    for (std::size_t j = 0; j < pair.profile.size(); ++j) {
      const double r = pair.grid.node(static_cast<int>(j));
      const double w = pair.profile[j] * pair.profile[j] * r * h;
      total += w;
      if (r > edge) outside += w;
    }
    diagnostics->outside_fraction = total > 0.0 ? outside / total : 0.0;
    diagnostics->truncated = diagnostics->outside_fraction > 1e-8;
  }
  return out;
}

double lower_to_upper_ratio(const RadialEigenpair& pair, double energy,
                            const PhysicalParams& params) {
  require(energy > -params.mass, "spinor ratio needs E > -M");
  const auto& f = pair.profile;
  const int cells = static_cast<int>(f.size());
  const double h = pair.grid.spacing();
  const double parity = (std::abs(pair.m) % 2 == 0) ? 1.0 : -1.0;
  auto sample = [&](int j) {
    if (j >= cells) return 0.0;
    if (j < 0) return parity * f[static_cast<std::size_t>(-j - 1)];
    return f[static_cast<std::size_t>(j)];
  };
  double upper = 0.0, lower = 0.0;
  for (int j = 0; j < cells; ++j) {
    const double r = pair.grid.node(j);
    const double derivative = (sample(j + 1) - sample(j - 1)) / (2.0 * h);
    const double g = (derivative - pair.m * f[j] / r) / (energy + params.mass);
    upper += f[j] * f[j] * r;
    lower += g * g * r;
  }
  return std::sqrt(lower / upper);
}

}  // namespace dirac2d
