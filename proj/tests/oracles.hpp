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

// Independent reference computations shared by the unit and acceptance
// tests. None of them calls into the library's numerical code.

#include <algorithm>
#include <cmath>
#include <vector>

namespace dirac2d::oracle {

// Eigenvalues of the symmetric tridiagonal matrix (d, e) as the roots of its
// characteristic polynomial. The roots of the leading k x k minor interlace
// those of the (k+1) x (k+1) minor, so each root is isolated by the previous
// ones and found by bisection on the three-term recurrence in long double.
inline std::vector<double> tridiagonal_eigenvalues(const std::vector<double>& d,
                                                   const std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  long double bound = 0;
  for (int i = 0; i < n; ++i) {
    long double row = std::fabs(static_cast<long double>(d[i]));
    if (i > 0) row += std::fabs(static_cast<long double>(e[i - 1]));
    if (i + 1 < n) row += std::fabs(static_cast<long double>(e[i]));
    bound = std::max(bound, row);
  }
  bound = bound * 1.01L + 1.0L;
  // det of the leading k x k block of T - x.
  auto minor = [&](int k, long double x) {
    long double p_prev = 1, p = d[0] - x;
    if (k == 1) return p;
    for (int i = 1; i < k; ++i) {
      const long double next = (d[i] - x) * p - static_cast<long double>(e[i - 1]) * e[i - 1] * p_prev;
      p_prev = p;
      p = next;
    }
    return p;
  };
  std::vector<long double> roots{static_cast<long double>(d[0])};
  for (int k = 2; k <= n; ++k) {
    std::vector<long double> edges{-bound};
    edges.insert(edges.end(), roots.begin(), roots.end());
    edges.push_back(bound);
    std::vector<long double> next;
    for (std::size_t j = 0; j + 1 < edges.size(); ++j) {
      long double lo = edges[j], hi = edges[j + 1];
      long double flo = minor(k, lo);
      if (hi - lo <= 0) {
        next.push_back(lo);
        continue;
      }
      for (int it = 0; it < 200 && hi - lo > 0; ++it) {
        const long double mid = (lo + hi) / 2;
        if (mid == lo || mid == hi) break;
        const long double fm = minor(k, mid);
        if ((fm < 0) == (flo < 0) && fm != 0) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      next.push_back((lo + hi) / 2);
    }
    roots = std::move(next);
  }
  std::vector<double> out(roots.begin(), roots.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Largest real root of (E + M)(E - M)^2 = 2 M w^2 (n + 1)^2 by bisection in
// long double, returned as the excitation E - M.
inline long double oscillator_excitation(int n, long double w, long double m) {
  const long double rhs = 2 * m * w * w * (n + 1) * (n + 1);
  auto g = [&](long double d) { return (2 * m + d) * d * d - rhs; };
  long double lo = 0, hi = 1;
  while (g(hi) < 0) hi *= 2;
  for (int i = 0; i < 400; ++i) {
    const long double mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    (g(mid) < 0 ? lo : hi) = mid;
  }
  return (lo + hi) / 2;
}

}  // namespace dirac2d::oracle
