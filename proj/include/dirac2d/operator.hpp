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

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dirac2d/grid.hpp"

namespace dirac2d {

using FourierSymbol = std::function<Complex(double p1, double p2)>;
using PositionFunction = std::function<Complex(double x1, double x2)>;

// Collected while applying an operator. A standalone 1/p^2 multiplier has no
// value at p = 0; it sets the zero mode to 0 and records here whether that
// discarded anything.
struct ApplyDiagnostics {
  bool zero_mode_annihilated = false;
};

enum class OperatorShape { kScalar, kSpinor };

// A linear map on scalar or spinor fields defined by its action. Operators
// are immutable expression trees with value semantics; copies share nodes.
class MatrixFreeOperator {
 public:
  enum class Kind { kFourier, kPosition, kIdentity, kProduct, kSum, kBlock };

  struct Term;
  struct Access;
  struct Node;

  static MatrixFreeOperator fourier(std::string label, FourierSymbol symbol,
                                    bool singular_at_zero = false);
  static MatrixFreeOperator position(std::string label, PositionFunction fn);
  static MatrixFreeOperator identity(OperatorShape shape);
  static MatrixFreeOperator zero(OperatorShape shape);
  // 2x2 block operator built from scalar entries; empty entries are zero.
  static MatrixFreeOperator block(std::optional<MatrixFreeOperator> upper_left,
                                  std::optional<MatrixFreeOperator> upper_right,
                                  std::optional<MatrixFreeOperator> lower_left,
                                  std::optional<MatrixFreeOperator> lower_right,
                                  std::string label = {});

  MatrixFreeOperator with_label(std::string label) const;

  OperatorShape shape() const;
  Kind kind() const;
  const std::string& label() const;

  // Valid for kFourier.
  const FourierSymbol& symbol() const;
  bool singular_at_zero() const;
  // Valid for kPosition.
  const PositionFunction& position_function() const;
  // Valid for kProduct; the leftmost factor (applied last) comes first.
  std::span<const MatrixFreeOperator> factors() const;
  // Valid for kSum.
  std::span<const Term> terms() const;
  // Valid for kBlock.
  const std::optional<MatrixFreeOperator>& block_entry(int row, int col) const;

  ScalarField apply(const ScalarField& field,
                    ApplyDiagnostics* diagnostics = nullptr) const;
  SpinorField apply(const SpinorField& field,
                    ApplyDiagnostics* diagnostics = nullptr) const;

  friend MatrixFreeOperator operator*(const MatrixFreeOperator& left,
                                      const MatrixFreeOperator& right);
  friend MatrixFreeOperator operator+(const MatrixFreeOperator& a,
                                      const MatrixFreeOperator& b);
  friend MatrixFreeOperator operator-(const MatrixFreeOperator& a,
                                      const MatrixFreeOperator& b);
  friend MatrixFreeOperator operator*(Complex factor,
                                      const MatrixFreeOperator& op);

 private:
  explicit MatrixFreeOperator(std::shared_ptr<const Node> node)
      : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct MatrixFreeOperator::Term {
  Complex coefficient;
  MatrixFreeOperator op;
};

// Integer powers by repeated composition.
MatrixFreeOperator power(const MatrixFreeOperator& op, int exponent);

// [a, b] = a b - b a.
MatrixFreeOperator commutator(const MatrixFreeOperator& a,
                              const MatrixFreeOperator& b);

// |<phi, A psi> - <A phi, psi>| / (|A phi| |psi| + |phi| |A psi|).
double hermiticity_residual(const MatrixFreeOperator& op,
                            const ScalarField& phi, const ScalarField& psi);
double hermiticity_residual(const MatrixFreeOperator& op,
                            const SpinorField& phi, const SpinorField& psi);

// Pointwise helpers used by the operator builders.
ScalarField apply_fourier_multiplier(const ScalarField& field,
                                     const FourierSymbol& symbol,
                                     bool singular_at_zero = false,
                                     ApplyDiagnostics* diagnostics = nullptr);
ScalarField apply_position_multiplier(const ScalarField& field,
                                      const PositionFunction& fn,
                                      const std::string& label = "position");

}  // namespace dirac2d
