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

#include "dirac2d/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dirac2d/error.hpp"

namespace dirac2d {

void TridiagonalMatrix::validate() const {
  require(!diagonal.empty(), "tridiagonal matrix is empty");
  require(off_diagonal.size() + 1 == diagonal.size(),
          "off-diagonal length must be dimension - 1");
}

namespace {

double pivot_floor(const TridiagonalMatrix& t) {
  double b2 = 1.0;
  for (double b : t.off_diagonal) b2 = std::max(b2, b * b);
  return std::numeric_limits<double>::min() * b2;
}

double spectral_scale(const TridiagonalMatrix& t) {
  const auto [lo, hi] = gershgorin_bounds(t);
  return std::max(std::abs(lo), std::abs(hi));
}

}  // namespace

int sturm_count(const TridiagonalMatrix& t, double shift) {
  t.validate();
  const double floor = pivot_floor(t);
  int count = 0;
  double d = t.diagonal[0] - shift;
  if (std::abs(d) < floor) d = -floor;
  if (d < 0.0) ++count;
  for (std::size_t i = 1; i < t.diagonal.size(); ++i) {
    const double b = t.off_diagonal[i - 1];
    d = (t.diagonal[i] - shift) - b * b / d;
    if (std::abs(d) < floor) d = -floor;
    if (d < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const TridiagonalMatrix& t) {
  t.validate();
  const int n = t.dimension();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(t.off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(t.off_diagonal[i]);
    lo = std::min(lo, t.diagonal[i] - radius);
    hi = std::max(hi, t.diagonal[i] + radius);
  }
  return {lo, hi};
}

double kth_smallest_eigenvalue(const TridiagonalMatrix& t, int index,
                               double relative_width) {
  t.validate();
  require(index >= 0 && index < t.dimension(),
          "eigenvalue index exceeds the matrix dimension");
  auto [lo, hi] = gershgorin_bounds(t);
  const double scale = std::max(spectral_scale(t), std::numeric_limits<double>::min());
  const double floor = 2.0 * std::numeric_limits<double>::epsilon() * scale;
  lo -= floor;
  hi += floor;
  // Invariant: sturm_count(lo) <= index < sturm_count(hi).
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double width = hi - lo;
    if (width <= std::max(relative_width * std::max(std::abs(lo), std::abs(hi)), floor))
      break;
    (sturm_count(t, mid) > index ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const TridiagonalMatrix& t, int count,
                                       double relative_width) {
  t.validate();
  require(count >= 1, "eigenvalue count must be at least 1");
  require(count <= t.dimension(), "eigenvalue count exceeds the matrix dimension");
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(kth_smallest_eigenvalue(t, i, relative_width));
  return out;
}

namespace {

// Solves (T - shift) x = rhs with partial pivoting; rhs is overwritten by x.
void solve_shifted(const TridiagonalMatrix& t, double shift, double tiny,
                   std::vector<double>& rhs) {
  const std::size_t n = t.diagonal.size();
  std::vector<double> d(n), e(n, 0.0), u2(n, 0.0), dl(t.off_diagonal);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.diagonal[i] - shift;
  for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.off_diagonal[i];

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const bool has_next_super = i + 2 < n;
    if (std::abs(d[i]) >= std::abs(dl[i])) {
      if (d[i] == 0.0) d[i] = tiny;
      const double f = dl[i] / d[i];
      d[i + 1] -= f * e[i];
      if (has_next_super) e[i + 1] -= f * u2[i];
      rhs[i + 1] -= f * rhs[i];
    } else {
      const double f = d[i] / dl[i];
      const double next_d = d[i + 1];
      const double next_e = has_next_super ? e[i + 1] : 0.0;
      d[i + 1] = e[i] - f * next_d;
      if (has_next_super) e[i + 1] = u2[i] - f * next_e;
      d[i] = dl[i];
      e[i] = next_d;
      u2[i] = next_e;
      const double ri = rhs[i];
      rhs[i] = rhs[i + 1];
      rhs[i + 1] = ri - f * rhs[i + 1];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double v = rhs[k];
    if (k + 1 < n) v -= e[k] * rhs[k + 1];
    if (k + 2 < n) v -= u2[k] * rhs[k + 2];
    const double pivot = d[k] == 0.0 ? tiny : d[k];
    rhs[k] = v / pivot;
  }
}

void normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  if (s > 0.0)
    for (double& x : v) x /= s;
}

}  // namespace

std::vector<double> eigenvector(const TridiagonalMatrix& t, double eigenvalue) {
  t.validate();
  const std::size_t n = t.diagonal.size();
  const double scale = std::max(spectral_scale(t), 1.0);
  const double tiny = std::numeric_limits<double>::epsilon() * scale;
  std::vector<double> v(n);
  // Non-symmetric start vector so no eigenvector is orthogonal to it.
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.5 * std::sin(0.7 * i + 0.3);
  normalize(v);
  for (int it = 0; it < 4; ++it) {
    solve_shifted(t, eigenvalue, tiny, v);
    normalize(v);
  }
  double vmax = 0.0;
  for (double x : v) vmax = std::max(vmax, std::abs(x));
  for (double x : v) {
    if (std::abs(x) > 1e-8 * vmax) {
      if (x < 0.0)
        for (double& y : v) y = -y;
      break;
    }
  }
  return v;
}

}  // namespace dirac2d
