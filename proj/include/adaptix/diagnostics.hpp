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

#ifndef ADAPTIX_DIAGNOSTICS_HPP_
#define ADAPTIX_DIAGNOSTICS_HPP_

#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "adaptix/optimizers.hpp"
#include "adaptix/oracles.hpp"
#include "adaptix/problems.hpp"

namespace adaptix {

struct SmoothnessSample {
  int t;
  double l_hat;      // estimated local Lipschitz constant
  double grad_norm;  // |grad F(x_t)|_2
};

struct CoordL0L1Point {
  int j;
  double g_min;  // min of the two endpoint partial-derivative magnitudes
  double ratio;  // |change in partial| / |change in coordinate|
};

// Dyadic magnitude histogram: interior bins cover (2^-27, 1) by powers of
// two; the leftmost bin takes every value <= 2^-27 and the rightmost every
// value >= 1.
struct Histogram {
  std::vector<double> bin_edges;  // 2^-27 ... 2^0
  std::vector<long long> counts;  // leftmost + interior + rightmost
  long long total = 0;
};

// Local smoothness along the segment [x_from, x_to]: the largest
// |grad F(x_from + g*d) - grad F(x_from)| / |g*d| over the sample points
// g in {1/6, ..., 5/6}. Throws ConfigError on a degenerate segment.
double estimate_smoothness_along(const Problem& p, const Vector& x_from,
                                 const Vector& x_to);

// Smoothness estimates along consecutive trajectory points.
std::vector<SmoothnessSample> smoothness_along_trajectory(
    const Problem& p, const std::vector<Vector>& traj);

// Per-coordinate curvature probe over a trajectory: one point per (t, j)
// with |x_{t+1,j} - x_{t,j}| > 1e-12, comparing the partial-derivative
// quotient against the smaller endpoint magnitude. Note the quotient divides
// by the coordinate displacement |dx_j|, not the full step norm |dx|_2, so
// the ratios upper-bound the per-coordinate curvature envelope.
std::vector<CoordL0L1Point> coord_l0l1_scatter(const Problem& p,
                                               const std::vector<Vector>& traj);

// Least-squares fit ratio ~ l0 + l1 * g_min, with the offset lifted so at
// least 99% of points lie below the line; both values clamped >= 0.
// Degenerate input (all g_min equal) returns (max ratio, 0).
std::pair<double, double> fit_l0l1(const std::vector<CoordL0L1Point>& points);

// Minimum over the sample points of 0.5*|grad F|^2 / (F - F*); points with
// F - F* <= 1e-12 are skipped. Requires f_star metadata.
double pl_audit(const Problem& p, const std::vector<Vector>& xs);

// Builds a fresh optimizer at a starting point; used to replay identical
// runs inside audits.
using OptimizerFactory = std::function<std::unique_ptr<Optimizer>(Vector x0)>;

// Runs the optimizer twice from x0 with identical seeds, feeding raw
// gradients to one run and per-coordinate scaled gradients (scales (x) g) to
// the other. Returns the largest per-coordinate iterate deviation over all
// steps. Zero (up to rounding) certifies scale-freeness.
double scale_free_audit(const OptimizerFactory& factory, const Problem& p,
                        const NoiseModel& noise, const Vector& x0,
                        const Vector& scales, int T, uint64_t seed);

Histogram update_histogram(const std::vector<double>& updates);

// Mean of the final ceil(tail_frac * len) entries; the plateau a
// constant-step stochastic run oscillates around. Throws ConfigError on an
// empty trajectory or tail_frac outside (0, 1].
double noise_floor(const std::vector<double>& traj_grad_norm_sq,
                   double tail_frac);

}  // namespace adaptix

#endif  // ADAPTIX_DIAGNOSTICS_HPP_
