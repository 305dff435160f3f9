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

// Closed-form spectra and quantum-number bookkeeping for the 2D Dirac
// Hamiltonian with equal scalar and vector potentials (hbar = c = 1).

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dirac2d {

enum class Potential { kCoulomb, kOscillator };

std::string to_string(Potential potential);
Potential parse_potential(const std::string& name);

struct PhysicalParams {
  double mass = 1.0;
  // Coulomb strength, V(r) = -k/r.
  double k = 0.0;
  // Oscillator frequency, V(r) = M omega^2 r^2 / 2.
  double omega = 0.0;
  Potential potential = Potential::kCoulomb;

  static PhysicalParams coulomb(double mass, double k);
  static PhysicalParams oscillator(double mass, double omega);
  // Oscillator parametrized by its stiffness K = M omega^2.
  static PhysicalParams oscillator_with_stiffness(double mass, double stiffness);

  // Throws Error(kInvalidArgument) unless M > 0 and the coupling of the
  // selected potential is positive.
  void validate() const;
  double stiffness() const { return mass * omega * omega; }
  double potential_at(double r) const;
};

enum class Branch { kPositive, kNegative };

struct QuantumNumbers {
  int m = 0;
  int n_r = 0;
  // Coulomb: n = 2 n_r + 2|m| + 1 (odd). Oscillator: n = 2 n_r + |m|.
  int n = 0;
  // j = (n - 1)/2 for Coulomb, s = n/2 for the oscillator.
  double j_or_s = 0.0;
  int degeneracy = 0;
};

int principal_number(Potential potential, int m, int n_r);
int level_degeneracy(Potential potential, int n);
bool is_valid_level(Potential potential, int n);
QuantumNumbers make_quantum_numbers(Potential potential, int m, int n_r);

struct SpectrumEntry {
  QuantumNumbers quantum_numbers;
  double energy_analytic = 0.0;
  std::optional<double> energy_numeric;
  std::optional<double> rel_error;
};

// E = M (+-n^2 - k^2) / (n^2 + k^2), n odd.
double coulomb_energy(int n, double k, double mass,
                      Branch branch = Branch::kPositive);

// Largest real root of (E + M)(E - M)^2 = 2 M omega^2 (n + 1)^2. The root is
// always above M.
double oscillator_energy(int n, double omega, double mass);

// E - M for the oscillator root, computed without the cancellation that
// subtracting M from the returned energy would cause.
double oscillator_excitation(int n, double omega, double mass);

// |(2M + d) d^2 - 2 M omega^2 (n+1)^2| / (2 M omega^2 (n+1)^2) for the
// excitation d = E - M.
double oscillator_cubic_residual(double excitation, int n, double omega,
                                 double mass);

// Positive-branch analytic level for the selected potential.
double analytic_energy(const PhysicalParams& params, int n);

// Coulomb: M - 2 k^2 M / n^2. Oscillator: M + (n + 1) omega.
double nr_energy(const PhysicalParams& params, int n);

// Every (m, n_r) sector whose principal number does not exceed n_max, sorted
// by n, then m, then n_r.
std::vector<SpectrumEntry> enumerate_levels(const PhysicalParams& params,
                                            int n_max);

// Sectors with |m| <= m_max and n_r <= nr_max, sorted by m then n_r.
std::vector<SpectrumEntry> enumerate_sectors(const PhysicalParams& params,
                                             int m_max, int nr_max);

struct DeviationRow {
  // k for Coulomb sweeps, M for oscillator sweeps.
  double parameter = 0.0;
  double exact = 0.0;
  double nonrelativistic = 0.0;
  // exact - nonrelativistic.
  double deviation = 0.0;
};

// Coulomb: k must decrease strictly along the sweep, M is held fixed.
// Oscillator: M must increase strictly with K = M omega^2 held at
// params.stiffness().
std::vector<DeviationRow> nr_deviation_sweep(const PhysicalParams& params,
                                             int n,
                                             std::span<const double> sweep);

// 2 k^4 M / (n^2 (n^2 + k^2)).
double coulomb_nr_deviation(int n, double k, double mass);

}  // namespace dirac2d
