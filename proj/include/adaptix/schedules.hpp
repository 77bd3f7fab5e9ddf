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

#ifndef ADAPTIX_SCHEDULES_HPP_
#define ADAPTIX_SCHEDULES_HPP_

#include "adaptix/vector_ops.hpp"

namespace adaptix {

// Step-size schedules, indexed from t = 1:
//   constant       eta0
//   inv_t          eta0 / (1 + alpha*t)
//   inv_sqrt_t     eta0 / (1 + alpha*sqrt(t))
//   exponential    eta0 * alpha^t              (0 < alpha < 1)
//   exponential_beta  exponential with alpha = (beta/T)^(1/T)
//   cosine         eta0/2 * (1 + cos(t*pi/T)), t <= T
struct Schedule {
  enum class Kind {
    Constant,
    InvT,
    InvSqrtT,
    Exponential,
    ExponentialBeta,
    Cosine,
  };

  Kind kind = Kind::Constant;
  double eta0 = 0.0;
  double alpha = 0.0;
  double beta = 0.0;  // exponential_beta only
  int horizon = 0;    // T; cosine and exponential_beta only

  static Schedule constant(double eta0);
  static Schedule inv_t(double eta0, double alpha);
  static Schedule inv_sqrt_t(double eta0, double alpha);
  static Schedule exponential(double eta0, double alpha);
  static Schedule exponential_beta(double eta0, double beta, int horizon);
  static Schedule cosine(double eta0, int horizon);

  // Throws ConfigError on invalid parameters, and on t out of range for
  // cosine.
  double eval(int t) const;

  // The alpha an exponential_beta schedule decays with.
  double effective_alpha() const;
};

// Feasible sets for projected updates.
struct ProjectionSet {
  enum class Kind { None, Hypercube, L2Ball };
  Kind kind = Kind::None;
  Vector center;
  double halfwidth = 0.0;  // Hypercube
  double radius = 0.0;     // L2Ball

  static ProjectionSet none() { return {}; }
  static ProjectionSet hypercube(Vector center, double halfwidth);
  static ProjectionSet l2_ball(Vector center, double radius);
};

// Euclidean projection: per-coordinate clamp for hypercubes, radial scaling
// for balls. Idempotent and non-expansive.
Vector project(const ProjectionSet& set, const Vector& x);

// Closed-form step size of the regularized-leader update over the surrogate
// losses: max{0, min{(alpha + S_inner) / (L (alpha + S_norm)), 2/L}}, where
// S_inner accumulates <g, g'> and S_norm accumulates |g|^2.
double ftrl_eta(double s_inner, double s_norm, double alpha, double l);

}  // namespace adaptix

#endif  // ADAPTIX_SCHEDULES_HPP_
