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

#include "adaptix/oracles.hpp"

#include <cassert>
#include <cmath>

#include "adaptix/errors.hpp"

namespace adaptix {

NoiseModel NoiseModel::gaussian(double sigma) {
  if (sigma < 0.0) throw ConfigError("gaussian noise: sigma must be >= 0");
  NoiseModel m;
  m.kind = Kind::Gaussian;
  m.sigma = sigma;
  return m;
}

NoiseModel NoiseModel::relaxed(double a, double b) {
  if (a < 0.0 || b < 0.0) throw ConfigError("relaxed noise: need a, b >= 0");
  NoiseModel m;
  m.kind = Kind::Relaxed;
  m.a = a;
  m.b = b;
  return m;
}

NoiseModel NoiseModel::bounded_coord(Vector sigma_vec) {
  for (double s : sigma_vec) {
    if (s < 0.0) throw ConfigError("bounded noise: entries must be >= 0");
  }
  NoiseModel m;
  m.kind = Kind::BoundedCoord;
  m.sigma_vec = std::move(sigma_vec);
  return m;
}

NoiseModel NoiseModel::minibatch(int batch) {
  if (batch < 1) throw ConfigError("minibatch noise: batch must be >= 1");
  NoiseModel m;
  m.kind = Kind::Minibatch;
  m.batch = batch;
  return m;
}

Vector GradOracle::sample_grad(const Vector& x) {
  check_finite(x, "oracle query point");
  ++calls_;
  switch (noise_.kind) {
    case NoiseModel::Kind::None:
      return problem_->grad(x);

    case NoiseModel::Kind::Gaussian: {
      Vector g = problem_->grad(x);
      double sd = noise_.sigma / std::sqrt(static_cast<double>(g.size()));
      for (double& gj : g) gj = rng_.gauss(gj, sd);
      return g;
    }

    case NoiseModel::Kind::Relaxed: {
      Vector g = problem_->grad(x);
      double sd =
          std::sqrt((noise_.a * norms(g).l2_sq + noise_.b) / static_cast<double>(g.size()));
      for (double& gj : g) gj = rng_.gauss(gj, sd);
      return g;
    }

    case NoiseModel::Kind::BoundedCoord: {
      Vector g = problem_->grad(x);
      if (noise_.sigma_vec.size() != g.size()) {
        throw DimensionError("bounded noise: sigma_vec length mismatch");
      }
      for (std::size_t j = 0; j < g.size(); ++j) {
        double xi = rng_.uniform(-noise_.sigma_vec[j], noise_.sigma_vec[j]);
        assert(std::fabs(xi) <= noise_.sigma_vec[j]);
        g[j] += xi;
      }
      return g;
    }

    case NoiseModel::Kind::Minibatch: {
      if (problem_->component_count <= 1 || !problem_->component_grad) {
        throw ConfigError("minibatch noise: problem is not a finite sum");
      }
      int m = problem_->component_count;
      if (noise_.batch > m) {
        throw ConfigError("minibatch noise: batch exceeds component count");
      }
      if (noise_.batch == m) return problem_->grad(x);  // exact full gradient

      // Without replacement, fresh each step.
      std::vector<int> pool(static_cast<std::size_t>(m));
      for (int i = 0; i < m; ++i) pool[static_cast<std::size_t>(i)] = i;
      Vector g(x.size(), 0.0);
      for (int i = 0; i < noise_.batch; ++i) {
        std::size_t pick = static_cast<std::size_t>(i) +
                           static_cast<std::size_t>(rng_.below(
                               static_cast<uint64_t>(m - i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[pick]);
        Vector gi = problem_->component_grad(x, pool[static_cast<std::size_t>(i)]);
        for (std::size_t j = 0; j < g.size(); ++j) g[j] += gi[j];
      }
      for (double& gj : g) gj /= static_cast<double>(noise_.batch);
      return g;
    }
  }
  throw ConfigError("unknown noise model");
}

std::pair<Vector, Vector> GradOracle::sample_two_grads(const Vector& x) {
  // Sequential draws from one stream: positions are disjoint by construction.
  Vector g = sample_grad(x);
  Vector g_prime = sample_grad(x);
  return {std::move(g), std::move(g_prime)};
}

VarianceAudit GradOracle::variance_audit(const Vector& x, int n) {
  if (n < 2) throw ConfigError("variance_audit: need n >= 2");
  Vector mean_err(x.size(), 0.0);
  Vector truth = problem_->grad(x);
  double sq_acc = 0.0;
  for (int i = 0; i < n; ++i) {
    Vector g = sample_grad(x);
    double sq = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
      double e = g[j] - truth[j];
      mean_err[j] += e;
      sq += e * e;
    }
    sq_acc += sq;
  }
  for (double& e : mean_err) e /= static_cast<double>(n);
  return {norm_linf(mean_err), sq_acc / static_cast<double>(n)};
}

}  // namespace adaptix
