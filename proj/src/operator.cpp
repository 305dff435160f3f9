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

#include "dirac2d/operator.hpp"

#include <cmath>
#include <sstream>

#include "dirac2d/error.hpp"
#include "dirac2d/fft.hpp"

namespace dirac2d {

struct MatrixFreeOperator::Node {
  Kind kind = Kind::kIdentity;
  OperatorShape shape = OperatorShape::kScalar;
  std::string label;
  FourierSymbol symbol;
  bool singular_at_zero = false;
  PositionFunction position;
  std::vector<MatrixFreeOperator> factors;
  std::vector<Term> terms;
  std::array<std::optional<MatrixFreeOperator>, 4> blocks;
};

struct MatrixFreeOperator::Access {
  static MatrixFreeOperator make(std::shared_ptr<const Node> node) {
    return MatrixFreeOperator(std::move(node));
  }
};

namespace {

using Node = MatrixFreeOperator::Node;
using Kind = MatrixFreeOperator::Kind;

// Relative size of the input zero mode above which discarding it is reported.
constexpr double kZeroModeTolerance = 1e-12;

}  // namespace

ScalarField apply_fourier_multiplier(const ScalarField& field,
                                     const FourierSymbol& symbol,
                                     bool singular_at_zero,
                                     ApplyDiagnostics* diagnostics) {
  const Grid2D& grid = field.grid();
  const int n = grid.n();
  ScalarField out = field;
  fft::forward(out.values(), n);
  if (singular_at_zero && diagnostics != nullptr) {
    double total = 0.0;
    for (const auto& v : out.values()) total += std::norm(v);
    if (std::abs(out[0]) > kZeroModeTolerance * std::sqrt(total))
      diagnostics->zero_mode_annihilated = true;
  }
  for (int i1 = 0; i1 < n; ++i1) {
    const double p1 = grid.wavenumber(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const double p2 = grid.wavenumber(i2);
      // Singular symbols are defined as 0 at p = 0.
      const Complex s =
          (singular_at_zero && i1 == 0 && i2 == 0) ? Complex{} : symbol(p1, p2);
      out.at(i1, i2) *= s;
    }
  }
  fft::inverse(out.values(), n);
  return out;
}

ScalarField apply_position_multiplier(const ScalarField& field,
                                      const PositionFunction& fn,
                                      const std::string& label) {
  const Grid2D& grid = field.grid();
  const int n = grid.n();
  ScalarField out = field;
  for (int i1 = 0; i1 < n; ++i1) {
    const double x1 = grid.coordinate(i1);
    for (int i2 = 0; i2 < n; ++i2) {
      const double x2 = grid.coordinate(i2);
      const Complex value = fn(x1, x2);
      if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
        std::ostringstream msg;
        msg << "position multiplier '" << label << "' is not finite at ("
            << x1 << ", " << x2 << ")";
        fail(ErrorCode::kInvalidArgument, msg.str());
      }
      out.at(i1, i2) *= value;
    }
  }
  return out;
}

MatrixFreeOperator MatrixFreeOperator::fourier(std::string label,
                                               FourierSymbol symbol,
                                               bool singular_at_zero) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kFourier;
  node->label = std::move(label);
  node->symbol = std::move(symbol);
  node->singular_at_zero = singular_at_zero;
  return MatrixFreeOperator(std::move(node));
}

MatrixFreeOperator MatrixFreeOperator::position(std::string label,
                                                PositionFunction fn) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kPosition;
  node->label = std::move(label);
  node->position = std::move(fn);
  return MatrixFreeOperator(std::move(node));
}

MatrixFreeOperator MatrixFreeOperator::identity(OperatorShape shape) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kIdentity;
  node->shape = shape;
  node->label = "1";
  return MatrixFreeOperator(std::move(node));
}

MatrixFreeOperator MatrixFreeOperator::zero(OperatorShape shape) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kSum;
  node->shape = shape;
  node->label = "0";
  return MatrixFreeOperator(std::move(node));
}

MatrixFreeOperator MatrixFreeOperator::block(
    std::optional<MatrixFreeOperator> upper_left,
    std::optional<MatrixFreeOperator> upper_right,
    std::optional<MatrixFreeOperator> lower_left,
    std::optional<MatrixFreeOperator> lower_right, std::string label) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::kBlock;
  node->shape = OperatorShape::kSpinor;
  node->label = label.empty() ? "block" : std::move(label);
  node->blocks = {std::move(upper_left), std::move(upper_right),
                  std::move(lower_left), std::move(lower_right)};
  for (const auto& entry : node->blocks) {
    if (entry && entry->shape() != OperatorShape::kScalar)
      fail(ErrorCode::kShapeMismatch, "block entries must be scalar operators");
  }
  return MatrixFreeOperator(std::move(node));
}

MatrixFreeOperator MatrixFreeOperator::with_label(std::string label) const {
  auto node = std::make_shared<Node>(*node_);
  node->label = std::move(label);
  return MatrixFreeOperator(std::move(node));
}

OperatorShape MatrixFreeOperator::shape() const { return node_->shape; }
MatrixFreeOperator::Kind MatrixFreeOperator::kind() const { return node_->kind; }
const std::string& MatrixFreeOperator::label() const { return node_->label; }

const FourierSymbol& MatrixFreeOperator::symbol() const {
  require(node_->kind == Kind::kFourier, "not a Fourier multiplier");
  return node_->symbol;
}

bool MatrixFreeOperator::singular_at_zero() const {
  return node_->kind == Kind::kFourier && node_->singular_at_zero;
}

const PositionFunction& MatrixFreeOperator::position_function() const {
  require(node_->kind == Kind::kPosition, "not a position multiplier");
  return node_->position;
}

std::span<const MatrixFreeOperator> MatrixFreeOperator::factors() const {
  return node_->factors;
}

std::span<const MatrixFreeOperator::Term> MatrixFreeOperator::terms() const {
  return node_->terms;
}

const std::optional<MatrixFreeOperator>& MatrixFreeOperator::block_entry(
    int row, int col) const {
  require(node_->kind == Kind::kBlock, "not a block operator");
  require(row >= 0 && row < 2 && col >= 0 && col < 2, "block index out of range");
  return node_->blocks[static_cast<std::size_t>(2 * row + col)];
}

namespace {

void require_shape(const MatrixFreeOperator& op, OperatorShape shape) {
  if (op.shape() != shape)
    fail(ErrorCode::kShapeMismatch,
         "operator '" + op.label() + "' applied to a field of the wrong shape");
}

void require_compatible(const MatrixFreeOperator& a,
                        const MatrixFreeOperator& b) {
  if (a.shape() != b.shape())
    fail(ErrorCode::kShapeMismatch, "operators '" + a.label() + "' and '" +
                                        b.label() + "' have different shapes");
}

bool is_zero(const MatrixFreeOperator& op) {
  return op.kind() == Kind::kSum && op.terms().empty();
}

}  // namespace

ScalarField MatrixFreeOperator::apply(const ScalarField& field,
                                      ApplyDiagnostics* diagnostics) const {
  require_shape(*this, OperatorShape::kScalar);
  switch (node_->kind) {
    case Kind::kFourier:
      return apply_fourier_multiplier(field, node_->symbol,
                                      node_->singular_at_zero, diagnostics);
    case Kind::kPosition:
      return apply_position_multiplier(field, node_->position, node_->label);
    case Kind::kIdentity:
      return field;
    case Kind::kProduct: {
      ScalarField out = field;
      for (auto it = node_->factors.rbegin(); it != node_->factors.rend(); ++it)
        out = it->apply(out, diagnostics);
      return out;
    }
    case Kind::kSum: {
      ScalarField out(field.grid());
      for (const auto& term : node_->terms)
        out.axpy(term.coefficient, term.op.apply(field, diagnostics));
      return out;
    }
    case Kind::kBlock:
      break;
  }
  fail(ErrorCode::kShapeMismatch, "block operator applied to a scalar field");
}

SpinorField MatrixFreeOperator::apply(const SpinorField& field,
                                      ApplyDiagnostics* diagnostics) const {
  require_shape(*this, OperatorShape::kSpinor);
  switch (node_->kind) {
    case Kind::kIdentity:
      return field;
    case Kind::kProduct: {
      SpinorField out = field;
      for (auto it = node_->factors.rbegin(); it != node_->factors.rend(); ++it)
        out = it->apply(out, diagnostics);
      return out;
    }
    case Kind::kSum: {
      SpinorField out(field.grid());
      for (const auto& term : node_->terms)
        out.axpy(term.coefficient, term.op.apply(field, diagnostics));
      return out;
    }
    case Kind::kBlock: {
      SpinorField out(field.grid());
      const auto& b = node_->blocks;
      if (b[0]) out.upper += b[0]->apply(field.upper, diagnostics);
      if (b[1]) out.upper += b[1]->apply(field.lower, diagnostics);
      if (b[2]) out.lower += b[2]->apply(field.upper, diagnostics);
      if (b[3]) out.lower += b[3]->apply(field.lower, diagnostics);
      return out;
    }
    default:
      break;
  }
  fail(ErrorCode::kShapeMismatch, "scalar operator applied to a spinor field");
}

namespace {

// Product of two adjacent Fourier multipliers as a single multiplier.
MatrixFreeOperator fuse_fourier(const MatrixFreeOperator& left,
                                const MatrixFreeOperator& right) {
  FourierSymbol ls = left.symbol();
  FourierSymbol rs = right.symbol();
  const bool left_singular = left.singular_at_zero();
  const bool right_singular = right.singular_at_zero();
  // The fused operator only annihilates information at p = 0 if the right
  // factor is singular or passes a nonzero zero mode to a singular left one.
  const bool singular =
      right_singular || (left_singular && rs(0.0, 0.0) != Complex{});
  return MatrixFreeOperator::fourier(
      left.label() + " " + right.label(),
      [ls, rs, left_singular, right_singular](double p1, double p2) {
        // A singular factor maps the p = 0 mode to 0, as in sequential use.
        if (p1 == 0.0 && p2 == 0.0 && (left_singular || right_singular))
          return Complex{};
        return ls(p1, p2) * rs(p1, p2);
      },
      singular);
}

}  // namespace

MatrixFreeOperator operator*(const MatrixFreeOperator& left,
                             const MatrixFreeOperator& right) {
  require_compatible(left, right);
  if (left.kind() == Kind::kIdentity) return right;
  if (right.kind() == Kind::kIdentity) return left;
  if (is_zero(left) || is_zero(right))
    return MatrixFreeOperator::zero(left.shape());

  std::vector<MatrixFreeOperator> flat;
  auto push = [&flat](const MatrixFreeOperator& op) {
    if (!flat.empty() && flat.back().kind() == Kind::kFourier &&
        op.kind() == Kind::kFourier) {
      flat.back() = fuse_fourier(flat.back(), op);
    } else {
      flat.push_back(op);
    }
  };
  for (const auto* op : {&left, &right}) {
    if (op->kind() == Kind::kProduct) {
      for (const auto& f : op->factors()) push(f);
    } else {
      push(*op);
    }
  }
  if (flat.size() == 1) return flat.front();

  auto node = std::make_shared<MatrixFreeOperator::Node>();
  node->kind = Kind::kProduct;
  node->shape = left.shape();
  node->label = "(" + left.label() + ")(" + right.label() + ")";
  node->factors = std::move(flat);
  return MatrixFreeOperator(std::move(node));
}

namespace {

MatrixFreeOperator weighted_sum(Complex wa, const MatrixFreeOperator& a,
                                Complex wb, const MatrixFreeOperator& b,
                                const std::string& label) {
  require_compatible(a, b);
  auto node = std::make_shared<MatrixFreeOperator::Node>();
  node->kind = Kind::kSum;
  node->shape = a.shape();
  node->label = label;
  auto add = [&node](Complex w, const MatrixFreeOperator& op) {
    if (op.kind() == Kind::kSum) {
      for (const auto& t : op.terms())
        node->terms.push_back({w * t.coefficient, t.op});
    } else {
      node->terms.push_back({w, op});
    }
  };
  add(wa, a);
  add(wb, b);
  return MatrixFreeOperator::Access::make(std::move(node));
}

}  // namespace

MatrixFreeOperator operator+(const MatrixFreeOperator& a,
                             const MatrixFreeOperator& b) {
  return weighted_sum(1.0, a, 1.0, b, a.label() + " + " + b.label());
}

MatrixFreeOperator operator-(const MatrixFreeOperator& a,
                             const MatrixFreeOperator& b) {
  return weighted_sum(1.0, a, -1.0, b, a.label() + " - " + b.label());
}

MatrixFreeOperator operator*(Complex factor, const MatrixFreeOperator& op) {
  auto node = std::make_shared<MatrixFreeOperator::Node>();
  node->kind = Kind::kSum;
  node->shape = op.shape();
  node->label = op.label();
  if (op.kind() == Kind::kSum) {
    for (const auto& t : op.terms())
      node->terms.push_back({factor * t.coefficient, t.op});
  } else {
    node->terms.push_back({factor, op});
  }
  return MatrixFreeOperator(std::move(node));
}

MatrixFreeOperator power(const MatrixFreeOperator& op, int exponent) {
  require(exponent >= 0, "negative operator power");
  MatrixFreeOperator out = MatrixFreeOperator::identity(op.shape());
  for (int i = 0; i < exponent; ++i) out = out * op;
  return out;
}

MatrixFreeOperator commutator(const MatrixFreeOperator& a,
                              const MatrixFreeOperator& b) {
  require_compatible(a, b);
  return (a * b - b * a).with_label("[" + a.label() + ", " + b.label() + "]");
}

namespace {

template <typename Field>
double hermiticity_residual_impl(const MatrixFreeOperator& op,
                                 const Field& phi, const Field& psi) {
  const double phi_norm = phi.norm();
  const double psi_norm = psi.norm();
  require(phi_norm > 0.0 && psi_norm > 0.0,
          "hermiticity residual needs nonzero fields");
  const Field a_phi = op.apply(phi);
  const Field a_psi = op.apply(psi);
  const double scale = a_phi.norm() * psi_norm + phi_norm * a_psi.norm();
  if (scale == 0.0) return 0.0;
  return std::abs(inner(phi, a_psi) - inner(a_phi, psi)) / scale;
}

}  // namespace

double hermiticity_residual(const MatrixFreeOperator& op,
                            const ScalarField& phi, const ScalarField& psi) {
  return hermiticity_residual_impl(op, phi, psi);
}

double hermiticity_residual(const MatrixFreeOperator& op,
                            const SpinorField& phi, const SpinorField& psi) {
  return hermiticity_residual_impl(op, phi, psi);
}

}  // namespace dirac2d
