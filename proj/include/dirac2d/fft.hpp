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

#include <span>

#include "dirac2d/grid.hpp"

namespace dirac2d::fft {

// In-place 2D DFT over an n x n row-major array. Plans are created once per
// size under a lock; execution is reentrant, so concurrent transforms of
// different buffers are safe.
void forward(std::span<Complex> data, int n);
// Inverse transform including the 1/n^2 normalization.
void inverse(std::span<Complex> data, int n);

}  // namespace dirac2d::fft
