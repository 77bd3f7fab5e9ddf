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

#include "adaptix/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "adaptix/errors.hpp"

namespace adaptix {

double estimate_smoothness_along(const Problem& p, const Vector& x_from,
                                 const Vector& x_to) {
  if (x_from.size() != x_to.size()) {
    throw DimensionError("estimate_smoothness_along: length mismatch");
  }
  Vector d(x_from.size());
  double d_norm_sq = 0.0;
  for (std::size_t j = 0; j < d.size(); ++j) {
    d[j] = x_to[j] - x_from[j];
    d_norm_sq += d[j] * d[j];
  }
  if (d_norm_sq == 0.0) {
    throw ConfigError("estimate_smoothness_along: degenerate segment");
  }
  double d_norm = std::sqrt(d_norm_sq);

  Vector g0 = p.grad(x_from);
  double best = 0.0;
  Vector probe(x_from.size());
  for (int k = 1; k <= 5; ++k) {
    double gamma = static_cast<double>(k) / 6.0;
    for (std::size_t j = 0; j < probe.size(); ++j) {
      probe[j] = x_from[j] + gamma * d[j];
    }
    Vector g = p.grad(probe);
    double diff_sq = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      double e = g[j] - g0[j];
      diff_sq += e * e;
    }
    best = std::max(best, std::sqrt(diff_sq) / (gamma * d_norm));
  }
  return best;
}

std::vector<SmoothnessSample> smoothness_along_trajectory(
    const Problem& p, const std::vector<Vector>& traj) {
  std::vector<SmoothnessSample> out;
  for (std::size_t t = 0; t + 1 < traj.size(); ++t) {
    bool coincident = true;
    for (std::size_t j = 0; j < traj[t].size(); ++j) {
      if (traj[t][j] != traj[t + 1][j]) {
        coincident = false;
        break;
      }
    }
    if (coincident) continue;
    SmoothnessSample s;
    s.t = static_cast<int>(t);
    s.l_hat = estimate_smoothness_along(p, traj[t], traj[t + 1]);
    s.grad_norm = norm_l2(p.grad(traj[t]));
    out.push_back(s);
  }
  return out;
}

std::vector<CoordL0L1Point> coord_l0l1_scatter(const Problem& p,
                                               const std::vector<Vector>& traj) {
  if (traj.size() < 2) {
    throw ConfigError("coord_l0l1_scatter: need a trajectory of length >= 2");
  }
  std::vector<CoordL0L1Point> out;
  Vector g_prev = p.grad(traj[0]);
  for (std::size_t t = 0; t + 1 < traj.size(); ++t) {
    Vector g_next = p.grad(traj[t + 1]);
    for (std::size_t j = 0; j < g_prev.size(); ++j) {
      double dx = traj[t + 1][j] - traj[t][j];
      if (std::fabs(dx) <= 1e-12) continue;  // frozen coordinate
      CoordL0L1Point pt;
      pt.j = static_cast<int>(j);
      pt.g_min = std::min(std::fabs(g_prev[j]), std::fabs(g_next[j]));
      pt.ratio = std::fabs(g_next[j] - g_prev[j]) / std::fabs(dx);
      out.push_back(pt);
    }
    g_prev = std::move(g_next);
  }
  return out;
}

std::pair<double, double> fit_l0l1(const std::vector<CoordL0L1Point>& points) {
  if (points.size() < 2) throw ConfigError("fit_l0l1: need at least 2 points");

  double mean_g = 0.0, mean_r = 0.0;
  for (const auto& pt : points) {
    mean_g += pt.g_min;
    mean_r += pt.ratio;
  }
  mean_g /= static_cast<double>(points.size());
  mean_r /= static_cast<double>(points.size());

  double cov = 0.0, var_g = 0.0;
  for (const auto& pt : points) {
    cov += (pt.g_min - mean_g) * (pt.ratio - mean_r);
    var_g += (pt.g_min - mean_g) * (pt.g_min - mean_g);
  }
  if (var_g == 0.0) {
    double max_ratio = 0.0;
    for (const auto& pt : points) max_ratio = std::max(max_ratio, pt.ratio);
    return {max_ratio, 0.0};
  }

  double l1_fit = cov / var_g;
  double l0_fit = mean_r - l1_fit * mean_g;

  // Lift the offset to the 99% residual envelope.
  std::vector<double> residuals;
  residuals.reserve(points.size());
  for (const auto& pt : points) {
    residuals.push_back(pt.ratio - (l0_fit + l1_fit * pt.g_min));
  }
  std::sort(residuals.begin(), residuals.end());
  std::size_t idx = static_cast<std::size_t>(
      std::ceil(0.99 * static_cast<double>(residuals.size()))) - 1;
  idx = std::min(idx, residuals.size() - 1);
  double shift = residuals[idx];
  if (shift > 0.0) l0_fit += shift;

  return {std::max(l0_fit, 0.0), std::max(l1_fit, 0.0)};
}

double pl_audit(const Problem& p, const std::vector<Vector>& xs) {
  if (!p.meta.f_star) throw ConfigError("pl_audit: problem has no known minimum");
  double f_star = *p.meta.f_star;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const Vector& x : xs) {
    double gap = p.eval(x) - f_star;
    if (gap <= 1e-12) continue;  // effectively at the minimum
    double ratio = 0.5 * norms(p.grad(x)).l2_sq / (gap + 1e-300);
    min_ratio = std::min(min_ratio, ratio);
  }
  return min_ratio;
}

double scale_free_audit(const OptimizerFactory& factory, const Problem& p,
                        const NoiseModel& noise, const Vector& x0,
                        const Vector& scales, int T, uint64_t seed) {
  if (scales.size() != x0.size()) {
    throw DimensionError("scale_free_audit: scales length mismatch");
  }
  for (double s : scales) {
    if (s <= 0.0) throw ConfigError("scale_free_audit: scales must be positive");
  }
  GradOracle oracle_raw(p, noise, Rng(seed));
  GradOracle oracle_scaled(p, noise, Rng(seed));
  auto opt_raw = factory(x0);
  auto opt_scaled = factory(x0);

  double max_dev = 0.0;
  for (int t = 0; t < T; ++t) {
    std::vector<Vector> grads_raw, grads_scaled;
    for (int k = 0; k < opt_raw->grads_per_step(); ++k) {
      grads_raw.push_back(oracle_raw.sample_grad(opt_raw->x()));
      Vector g = oracle_scaled.sample_grad(opt_scaled->x());
      for (std::size_t j = 0; j < g.size(); ++j) g[j] *= scales[j];
      grads_scaled.push_back(std::move(g));
    }
    opt_raw->step(grads_raw);
    opt_scaled->step(grads_scaled);
    for (std::size_t j = 0; j < x0.size(); ++j) {
      max_dev = std::max(max_dev,
                         std::fabs(opt_raw->x()[j] - opt_scaled->x()[j]));
    }
  }
  return max_dev;
}

Histogram update_histogram(const std::vector<double>& updates) {
  // Edges 2^-27 .. 2^0; a leftmost and a rightmost overflow bin.
  constexpr int kLowExp = -27;
  Histogram h;
  for (int e = kLowExp; e <= 0; ++e) h.bin_edges.push_back(std::ldexp(1.0, e));
  h.counts.assign(static_cast<std::size_t>(-kLowExp) + 2, 0);

  for (double u : updates) {
    double a = std::fabs(u);
    std::size_t bin;
    if (a <= h.bin_edges.front()) {
      bin = 0;
    } else if (a >= 1.0) {
      bin = h.counts.size() - 1;
    } else {
      int e = static_cast<int>(std::floor(std::log2(a)));  // in [-27, -1]
      e = std::clamp(e, kLowExp, -1);
      bin = static_cast<std::size_t>(e - kLowExp) + 1;
    }
    ++h.counts[bin];
    ++h.total;
  }
  return h;
}

double noise_floor(const std::vector<double>& traj_grad_norm_sq,
                   double tail_frac) {
  if (traj_grad_norm_sq.empty()) throw ConfigError("noise_floor: empty trajectory");
  if (tail_frac <= 0.0 || tail_frac > 1.0) {
    throw ConfigError("noise_floor: tail_frac must be in (0, 1]");
  }
  std::size_t n = traj_grad_norm_sq.size();
  std::size_t tail = static_cast<std::size_t>(
      std::ceil(tail_frac * static_cast<double>(n)));
  tail = std::max<std::size_t>(1, std::min(tail, n));
  double sum = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) sum += traj_grad_norm_sq[i];
  return sum / static_cast<double>(tail);
}

}  // namespace adaptix
