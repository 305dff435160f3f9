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

#include "dirac2d/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "dirac2d/error.hpp"

namespace dirac2d::fft {
namespace {

struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, plans] : plans_) {
      fftw_destroy_plan(plans.forward);
      fftw_destroy_plan(plans.backward);
    }
  }

  const PlanPair& get(int n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    const std::size_t count = static_cast<std::size_t>(n) * n;
    auto* scratch = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * count));
    if (scratch == nullptr) fail(ErrorCode::kNumerical, "fftw_malloc failed");
    // FFTW_UNALIGNED: execution happens on std::vector storage.
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    PlanPair plans;
    plans.forward = fftw_plan_dft_2d(n, n, scratch, scratch, FFTW_FORWARD, flags);
    plans.backward = fftw_plan_dft_2d(n, n, scratch, scratch, FFTW_BACKWARD, flags);
    fftw_free(scratch);
    if (plans.forward == nullptr || plans.backward == nullptr)
      fail(ErrorCode::kNumerical, "FFTW plan creation failed");
    return plans_.emplace(n, plans).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

void check_size(std::span<Complex> data, int n) {
  require(data.size() == static_cast<std::size_t>(n) * n,
          "FFT buffer size does not match n*n");
}

}  // namespace

void forward(std::span<Complex> data, int n) {
  check_size(data, n);
  fftw_execute_dft(cache().get(n).forward, as_fftw(data), as_fftw(data));
}

void inverse(std::span<Complex> data, int n) {
  check_size(data, n);
  fftw_execute_dft(cache().get(n).backward, as_fftw(data), as_fftw(data));
  const double scale = 1.0 / (static_cast<double>(n) * n);
  for (auto& v : data) v *= scale;
}

}  // namespace dirac2d::fft
