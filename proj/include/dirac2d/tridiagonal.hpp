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

#include <utility>
#include <vector>

namespace dirac2d {

// Real symmetric tridiagonal matrix.
struct TridiagonalMatrix {
  std::vector<double> diagonal;
  // off_diagonal[i] couples rows i and i+1.
  std::vector<double> off_diagonal;

  int dimension() const { return static_cast<int>(diagonal.size()); }
  void validate() const;
};

// Number of eigenvalues strictly below `shift`, from the signs of the LDL^T
// pivots of T - shift.
int sturm_count(const TridiagonalMatrix& t, double shift);

// Interval containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const TridiagonalMatrix& t);

// The (index+1)-th smallest eigenvalue by Sturm bisection, bracketed to a
// relative width of `relative_width` (or to the rounding floor of the
// matrix, whichever is larger).
double kth_smallest_eigenvalue(const TridiagonalMatrix& t, int index,
                               double relative_width = 1e-12);

// The `count` smallest eigenvalues in ascending order.
std::vector<double> lowest_eigenvalues(const TridiagonalMatrix& t, int count,
                                       double relative_width = 1e-12);

// Unit eigenvector for an (accurately known) eigenvalue, by inverse
// iteration with a pivoted tridiagonal solve. The sign is fixed so the first
// component above 1e-8 of the maximum is positive.
std::vector<double> eigenvector(const TridiagonalMatrix& t, double eigenvalue);

}  // namespace dirac2d
