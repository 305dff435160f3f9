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

#include "dirac2d/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "dirac2d/error.hpp"

namespace dirac2d {

std::string to_string(Potential potential) {
  return potential == Potential::kCoulomb ? "coulomb" : "oscillator";
}

Potential parse_potential(const std::string& name) {
  if (name == "coulomb") return Potential::kCoulomb;
  if (name == "oscillator") return Potential::kOscillator;
  fail(ErrorCode::kInvalidArgument, "unknown potential '" + name + "'");
}

PhysicalParams PhysicalParams::coulomb(double mass, double k) {
  PhysicalParams p;
  p.mass = mass;
  p.k = k;
  p.potential = Potential::kCoulomb;
  return p;
}

PhysicalParams PhysicalParams::oscillator(double mass, double omega) {
  PhysicalParams p;
  p.mass = mass;
  p.omega = omega;
  p.potential = Potential::kOscillator;
  return p;
}

PhysicalParams PhysicalParams::oscillator_with_stiffness(double mass,
                                                         double stiffness) {
  require(mass > 0.0 && stiffness > 0.0,
          "oscillator needs positive mass and stiffness");
  return oscillator(mass, std::sqrt(stiffness / mass));
}

void PhysicalParams::validate() const {
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  if (potential == Potential::kCoulomb) {
    require(std::isfinite(k) && k > 0.0, "Coulomb strength k must be positive");
  } else {
    require(std::isfinite(omega) && omega > 0.0,
            "oscillator frequency omega must be positive");
  }
}

double PhysicalParams::potential_at(double r) const {
  if (potential == Potential::kCoulomb) return -k / r;
  return 0.5 * mass * omega * omega * r * r;
}

int principal_number(Potential potential, int m, int n_r) {
  require(n_r >= 0, "radial node count must be non-negative");
  const int am = std::abs(m);
  return potential == Potential::kCoulomb ? 2 * n_r + 2 * am + 1
                                          : 2 * n_r + am;
}

bool is_valid_level(Potential potential, int n) {
  if (potential == Potential::kCoulomb) return n >= 1 && n % 2 == 1;
  return n >= 0;
}

int level_degeneracy(Potential potential, int n) {
  require(is_valid_level(potential, n), "invalid principal number");
  return potential == Potential::kCoulomb ? n : n + 1;
}

QuantumNumbers make_quantum_numbers(Potential potential, int m, int n_r) {
  QuantumNumbers q;
  q.m = m;
  q.n_r = n_r;
  q.n = principal_number(potential, m, n_r);
  q.j_or_s = potential == Potential::kCoulomb ? 0.5 * (q.n - 1) : 0.5 * q.n;
  q.degeneracy = level_degeneracy(potential, q.n);
  return q;
}

double coulomb_energy(int n, double k, double mass, Branch branch) {
  require(n >= 1 && n % 2 == 1, "Coulomb principal number must be odd and >= 1");
  require(std::isfinite(k) && k > 0.0, "Coulomb strength k must be positive");
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  const double n2 = static_cast<double>(n) * n;
  const double k2 = k * k;
  const double sign = branch == Branch::kPositive ? 1.0 : -1.0;
  return mass * (sign * n2 - k2) / (n2 + k2);
}

namespace {

// g(d) = (2M + d) d^2 - c, increasing and convex for d > 0.
double cubic_in_excitation(double d, double mass, double c) {
  return (2.0 * mass + d) * d * d - c;
}

}  // namespace

double oscillator_excitation(int n, double omega, double mass) {
  require(n >= 0, "oscillator principal number must be non-negative");
  require(std::isfinite(omega) && omega > 0.0, "omega must be positive");
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  const double np1 = n + 1.0;
  const double c = 2.0 * mass * omega * omega * np1 * np1;

  // g(0) = -c < 0 and g(2 (n+1) omega + c) > 0.
  double lo = 0.0;
  double hi = 2.0 * np1 * omega + c;
  for (int it = 0; it < 200 && hi - lo > 1e-3 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (cubic_in_excitation(mid, mass, c) < 0.0 ? lo : hi) = mid;
  }

  // Newton from the upper end of the bracket converges monotonically for a
  // convex increasing function; bisection guards any step leaving (lo, hi).
  double d = hi;
  for (int it = 0; it < 100; ++it) {
    const double g = cubic_in_excitation(d, mass, c);
    if (g == 0.0) break;
    (g < 0.0 ? lo : hi) = d;
    const double slope = (4.0 * mass + 3.0 * d) * d;
    double next = d - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - d) <= 4.0 * std::numeric_limits<double>::epsilon() * d) {
      d = next;
      break;
    }
    d = next;
  }
  return d;
}

double oscillator_energy(int n, double omega, double mass) {
  return mass + oscillator_excitation(n, omega, mass);
}

double oscillator_cubic_residual(double excitation, int n, double omega,
                                 double mass) {
  const double np1 = n + 1.0;
  const double c = 2.0 * mass * omega * omega * np1 * np1;
  return std::abs(cubic_in_excitation(excitation, mass, c)) / c;
}

double analytic_energy(const PhysicalParams& params, int n) {
  params.validate();
  if (params.potential == Potential::kCoulomb)
    return coulomb_energy(n, params.k, params.mass);
  return oscillator_energy(n, params.omega, params.mass);
}

double nr_energy(const PhysicalParams& params, int n) {
  params.validate();
  require(is_valid_level(params.potential, n), "invalid principal number");
  const double mass = params.mass;
  if (params.potential == Potential::kCoulomb) {
    const double n2 = static_cast<double>(n) * n;
    return mass - 2.0 * params.k * params.k * mass / n2;
  }
  return mass + (n + 1.0) * params.omega;
}

namespace {

SpectrumEntry analytic_entry(const PhysicalParams& params, int m, int n_r) {
  SpectrumEntry e;
  e.quantum_numbers = make_quantum_numbers(params.potential, m, n_r);
  e.energy_analytic = analytic_energy(params, e.quantum_numbers.n);
  return e;
}

}  // namespace

std::vector<SpectrumEntry> enumerate_levels(const PhysicalParams& params,
                                            int n_max) {
  params.validate();
  const int smallest = params.potential == Potential::kCoulomb ? 1 : 0;
  require(n_max >= smallest, "n_max below the smallest principal number");
  std::vector<SpectrumEntry> out;
  // |m| and n_r are each bounded by n_max for both sector maps.
  for (int m = -n_max; m <= n_max; ++m) {
    for (int n_r = 0; n_r <= n_max; ++n_r) {
      if (principal_number(params.potential, m, n_r) <= n_max)
        out.push_back(analytic_entry(params, m, n_r));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const SpectrumEntry& a, const SpectrumEntry& b) {
              const auto& qa = a.quantum_numbers;
              const auto& qb = b.quantum_numbers;
              if (qa.n != qb.n) return qa.n < qb.n;
              if (qa.m != qb.m) return qa.m < qb.m;
              return qa.n_r < qb.n_r;
            });
  return out;
}

std::vector<SpectrumEntry> enumerate_sectors(const PhysicalParams& params,
                                             int m_max, int nr_max) {
  params.validate();
  require(m_max >= 0 && nr_max >= 0, "m_max and nr_max must be non-negative");
  std::vector<SpectrumEntry> out;
  for (int m = -m_max; m <= m_max; ++m)
    for (int n_r = 0; n_r <= nr_max; ++n_r)
      out.push_back(analytic_entry(params, m, n_r));
  return out;
}

double coulomb_nr_deviation(int n, double k, double mass) {
  const double n2 = static_cast<double>(n) * n;
  const double k2 = k * k;
  return 2.0 * k2 * k2 * mass / (n2 * (n2 + k2));
}

std::vector<DeviationRow> nr_deviation_sweep(const PhysicalParams& params,
                                             int n,
                                             std::span<const double> sweep) {
  params.validate();
  require(!sweep.empty(), "sweep must not be empty");
  const bool coulomb = params.potential == Potential::kCoulomb;
  for (std::size_t i = 1; i < sweep.size(); ++i) {
    if (coulomb)
      require(sweep[i] < sweep[i - 1],
              "Coulomb sweep must decrease k strictly");
    else
      require(sweep[i] > sweep[i - 1],
              "oscillator sweep must increase M strictly");
  }
  std::vector<DeviationRow> rows;
  rows.reserve(sweep.size());
  for (double value : sweep) {
    const PhysicalParams point =
        coulomb ? PhysicalParams::coulomb(params.mass, value)
                : PhysicalParams::oscillator_with_stiffness(
                      value, params.stiffness());
    DeviationRow row;
    row.parameter = value;
    row.exact = analytic_energy(point, n);
    row.nonrelativistic = nr_energy(point, n);
    // Both levels are taken relative to M before subtracting so the
    // deviation does not lose digits to the rest energy.
    if (coulomb) {
      const double n2 = static_cast<double>(n) * n;
      const double k2 = value * value;
      const double binding = 2.0 * k2 * point.mass / (n2 + k2);
      const double binding_nr = 2.0 * k2 * point.mass / n2;
      row.deviation = binding_nr - binding;
    } else {
      row.deviation =
          oscillator_excitation(n, point.omega, point.mass) - (n + 1.0) * point.omega;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace dirac2d
