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

#ifndef ADAPTIX_ORACLES_HPP_
#define ADAPTIX_ORACLES_HPP_

#include <cstdint>
#include <utility>

#include "adaptix/problems.hpp"
#include "adaptix/rng.hpp"
#include "adaptix/vector_ops.hpp"

namespace adaptix {

// Stochastic-gradient noise models. Every model is unbiased; they differ in
// how the deviation from the true gradient is generated:
//   None         exact gradient
//   Gaussian     isotropic, total variance sigma^2
//   Relaxed      isotropic, total variance a*|grad|^2 + b
//   BoundedCoord independent uniforms on [-sigma_j, sigma_j] (a.s. bounded)
//   Minibatch    mean of `batch` component gradients, sampled without
//                replacement fresh each step
struct NoiseModel {
  enum class Kind { None, Gaussian, Relaxed, BoundedCoord, Minibatch };
  Kind kind = Kind::None;
  double sigma = 0.0;       // Gaussian
  double a = 0.0;           // Relaxed
  double b = 0.0;           // Relaxed
  Vector sigma_vec;         // BoundedCoord
  int batch = 1;            // Minibatch

  static NoiseModel none() { return {}; }
  static NoiseModel gaussian(double sigma);
  static NoiseModel relaxed(double a, double b);
  static NoiseModel bounded_coord(Vector sigma_vec);
  static NoiseModel minibatch(int batch);
};

struct VarianceAudit {
  double mean_err_linf;  // sup-norm of the empirical bias
  double var_est;        // empirical E|g - grad F|^2
};

// Stochastic first-order oracle: problem + noise model + private rng stream.
// Single-owner (mutable rng and call counter); create one per run.
class GradOracle {
 public:
  GradOracle(const Problem& p, NoiseModel noise, Rng rng)
      : problem_(&p), noise_(std::move(noise)), rng_(rng) {}

  // One unbiased stochastic gradient at x. Increments the call counter.
  Vector sample_grad(const Vector& x);

  // Two draws from disjoint stream segments; E<g, g'> = |grad F(x)|^2.
  std::pair<Vector, Vector> sample_two_grads(const Vector& x);

  // Empirical bias and variance over n fresh draws at x.
  VarianceAudit variance_audit(const Vector& x, int n);

  long long calls() const { return calls_; }
  const Problem& problem() const { return *problem_; }

 private:
  const Problem* problem_;
  NoiseModel noise_;
  Rng rng_;
  long long calls_ = 0;
};

}  // namespace adaptix

#endif  // ADAPTIX_ORACLES_HPP_
