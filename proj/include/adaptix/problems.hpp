// Copyright 2026 The adaptix authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// =============================================================================

#ifndef ADAPTIX_PROBLEMS_HPP_
#define ADAPTIX_PROBLEMS_HPP_

#include <functional>
#include <optional>

#include "adaptix/rng.hpp"
#include "adaptix/vector_ops.hpp"

namespace adaptix {

// Known analytic facts about a problem, filled in where available. When
// `minimizer` is present its gradient vanishes; when `f_star` is also
// present, eval(minimizer) == f_star.
struct ProblemMeta {
  std::optional<double> f_star;
  std::optional<Vector> minimizer;
  std::optional<double> mu_pl;            // PL constant
  std::optional<double> smooth_l;         // gradient Lipschitz constant
  std::optional<Vector> l0;               // relaxed-smoothness offsets
  std::optional<Vector> l1;               // relaxed-smoothness slopes
  std::optional<Vector> grad_bound_m;     // per-coordinate gradient bound
};

// Diagonal-Hessian quadratic payload, kept so the preconditioned twin can be
// constructed later.
struct QuadraticSpec {
  Vector h_diag;
  Vector b;
  double c;
};

// Deterministic differentiable objective oracle. For finite sums,
// `grad` equals the mean of `component_grad` over all components.
struct Problem {
  int dim = 0;
  std::function<double(const Vector&)> eval;
  std::function<Vector(const Vector&)> grad;
  int component_count = 1;
  std::function<Vector(const Vector&, int)> component_grad;  // null for analytic
  ProblemMeta meta;
  std::optional<QuadraticSpec> quadratic;
};

// Central-difference gradient oracle; step h scaled by the caller. Throws
// EvalError on a non-finite objective evaluation.
Vector finite_diff_grad(const Problem& p, const Vector& x, double h);

// 1-d fraction polynomial x^2/(1+x^2): non-convex, 1-Lipschitz, 2-smooth.
Problem make_fraction_poly();

// 1-d x^2 + 3 sin^2(x): PL with mu = 1/10, f* = 0 at x = 0.
Problem make_pl_sin();

// F(x) = 1/2 x'Hx + b'x + c with H = diag(h_diag) > 0.
Problem make_quadratic(const Vector& h_diag, const Vector& b, double c);

// The identity-Hessian twin 1/2 x'x + (H^-1 b)'x + c~ of a diagonal
// quadratic: same minimizer, same minimum value, condition number 1, and
// gradients equal to diag(1/h) times the original's everywhere.
Problem precondition_quadratic(const Problem& p);

// 1-d glued exponential: quadratic middle branch, exp(|L1 x| - 1)-type
// tails. Twice differentiable, (l0, l1)-smooth with genuinely unbounded
// curvature.
Problem make_exp_branch(double l0, double l1);

// 1-d twice-differentiable function whose gradient magnitude never exceeds
// eps: linear tails of slope +-eps, quartic-corrected quadratic middle.
Problem make_quartic_capped(double eps, double l0);

// Robust regression mean_i phi(a_i'x - y_i) with phi(t) = t^2/(1+t^2).
// Finite sum: component i is one sample.
Problem make_robust_regression(const Matrix& features, const Vector& labels);

}  // namespace adaptix

#endif  // ADAPTIX_PROBLEMS_HPP_
