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

#include <doctest.h>

#include <cmath>

#include "adaptix/errors.hpp"
#include "adaptix/oracles.hpp"
#include "adaptix/problems.hpp"

using namespace adaptix;

TEST_CASE("noiseless oracle returns the exact gradient") {
  Problem q = make_quadratic({1, 3}, {0.5, -1}, 0.0);
  GradOracle oracle(q, NoiseModel::none(), Rng(1));
  Vector x{0.2, -0.4};
  Vector g = oracle.sample_grad(x);
  Vector truth = q.grad(x);
  CHECK(g[0] == truth[0]);
  CHECK(g[1] == truth[1]);
  CHECK(oracle.calls() == 1);
}

TEST_CASE("gaussian noise is unbiased with the advertised variance") {
  Problem q = make_quadratic({1, 1}, {0, 0}, 0.0);
  Vector x{1.0, 2.0};
  Vector truth = q.grad(x);
  double sigma = 0.7;
  GradOracle oracle(q, NoiseModel::gaussian(sigma), Rng(99));

  const int n = 100000;
  Vector mean(2, 0.0);
  double var_acc = 0.0;
  for (int i = 0; i < n; ++i) {
    Vector g = oracle.sample_grad(x);
    double sq = 0.0;
    for (std::size_t j = 0; j < 2; ++j) {
      mean[j] += g[j] - truth[j];
      sq += (g[j] - truth[j]) * (g[j] - truth[j]);
    }
    var_acc += sq;
  }
  double bound = 3.0 * sigma / std::sqrt(2.0 * n);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(std::fabs(mean[j] / n) <= bound);
  }
  CHECK(var_acc / n == doctest::Approx(sigma * sigma).epsilon(0.05));
}

TEST_CASE("paired draws") {
  Problem q = make_quadratic({1, 1}, {0, 0}, 0.0);
  Vector x{1.0, -1.0};

  GradOracle clean(q, NoiseModel::none(), Rng(5));
  auto [g, g_prime] = clean.sample_two_grads(x);
  Vector truth = q.grad(x);
  for (std::size_t j = 0; j < 2; ++j) {
    CHECK(g[j] == truth[j]);
    CHECK(g_prime[j] == truth[j]);
  }
  CHECK(clean.calls() == 2);

  // E<g, g'> matches |grad|^2 and the deviations are uncorrelated.
  GradOracle noisy(q, NoiseModel::gaussian(1.0), Rng(17));
  const int n = 100000;
  double inner_acc = 0.0;
  Vector cross(2, 0.0), va(2, 0.0), vb(2, 0.0);
  for (int i = 0; i < n; ++i) {
    auto [a, b] = noisy.sample_two_grads(x);
    inner_acc += dot(a, b);
    for (std::size_t j = 0; j < 2; ++j) {
      double ea = a[j] - truth[j], eb = b[j] - truth[j];
      cross[j] += ea * eb;
      va[j] += ea * ea;
      vb[j] += eb * eb;
    }
  }
  double truth_sq = norms(truth).l2_sq;
  CHECK(inner_acc / n == doctest::Approx(truth_sq).epsilon(0.05));
  for (std::size_t j = 0; j < 2; ++j) {
    double corr = cross[j] / std::sqrt(va[j] * vb[j]);
    CHECK(std::fabs(corr) <= 0.02);
  }
}

TEST_CASE("paired draws never reuse stream positions") {
  Problem q = make_quadratic({1, 1}, {0, 0}, 0.0);
  GradOracle oracle(q, NoiseModel::gaussian(1.0), Rng(23));
  Vector x{0.5, -0.5};
  // Four consecutive draws at a fixed point are all distinct realizations.
  auto [a, b] = oracle.sample_two_grads(x);
  auto [c, d] = oracle.sample_two_grads(x);
  std::vector<Vector> draws = {a, b, c, d};
  for (std::size_t i = 0; i < draws.size(); ++i) {
    for (std::size_t k = i + 1; k < draws.size(); ++k) {
      CHECK(draws[i] != draws[k]);
    }
  }
  CHECK(oracle.calls() == 4);
}

TEST_CASE("variance audit") {
  Problem q = make_quadratic({1, 1}, {0, 0}, 0.0);

  GradOracle clean(q, NoiseModel::none(), Rng(2));
  VarianceAudit a = clean.variance_audit({1, 1}, 100);
  CHECK(a.mean_err_linf == 0.0);
  CHECK(a.var_est == 0.0);

  // Relaxed model with a=1, b=0 at a point with |grad|^2 = 4.
  Vector x{2.0, 0.0};
  REQUIRE(norms(q.grad(x)).l2_sq == 4.0);
  GradOracle relaxed(q, NoiseModel::relaxed(1.0, 0.0), Rng(3));
  VarianceAudit r = relaxed.variance_audit(x, 100000);
  CHECK(r.var_est == doctest::Approx(4.0).epsilon(0.1));

  GradOracle bounded(q, NoiseModel::bounded_coord({3.0, 3.0}), Rng(4));
  VarianceAudit b = bounded.variance_audit({1, 1}, 100000);
  CHECK(b.var_est == doctest::Approx(6.0).epsilon(0.1));  // 2 * sigma^2 / 3

  CHECK_THROWS_AS(clean.variance_audit({1, 1}, 1), ConfigError);
}

TEST_CASE("every model is empirically unbiased") {
  Problem sum = make_robust_regression(
      {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}, {-1.0, 0.3}}, {1, -1, 1, -1});
  std::vector<NoiseModel> models = {
      NoiseModel::none(), NoiseModel::gaussian(0.5), NoiseModel::relaxed(0.5, 0.1),
      NoiseModel::bounded_coord({0.4, 0.8}), NoiseModel::minibatch(2)};
  Rng point_rng(6);
  for (std::size_t mi = 0; mi < models.size(); ++mi) {
    GradOracle oracle(sum, models[mi], Rng(100 + mi));
    for (int pt = 0; pt < 10; ++pt) {
      Vector x{point_rng.uniform(-2, 2), point_rng.uniform(-2, 2)};
      Vector truth = sum.grad(x);
      const int n = 4000;
      Vector mean(2, 0.0), sq(2, 0.0);
      for (int i = 0; i < n; ++i) {
        Vector g = oracle.sample_grad(x);
        for (std::size_t j = 0; j < 2; ++j) {
          mean[j] += g[j] - truth[j];
          sq[j] += (g[j] - truth[j]) * (g[j] - truth[j]);
        }
      }
      for (std::size_t j = 0; j < 2; ++j) {
        double sd = std::sqrt(sq[j] / n);
        REQUIRE(std::fabs(mean[j] / n) <= 4.0 * sd / std::sqrt(n) + 1e-12);
      }
    }
  }
}

TEST_CASE("bounded noise stays inside the box on every draw") {
  Problem q = make_quadratic({1, 1}, {0, 0}, 0.0);
  Vector sigma{0.3, 1.5};
  GradOracle oracle(q, NoiseModel::bounded_coord(sigma), Rng(8));
  Vector x{0.5, -0.5};
  Vector truth = q.grad(x);
  for (int i = 0; i < 20000; ++i) {
    Vector g = oracle.sample_grad(x);
    for (std::size_t j = 0; j < 2; ++j) {
      REQUIRE(std::fabs(g[j] - truth[j]) <= sigma[j]);
    }
  }
}

TEST_CASE("minibatch draws") {
  Problem sum = make_robust_regression(
      {{1.0, 0.0}, {0.0, 1.0}, {0.5, 0.5}}, {1, -1, 1});
  Vector x{0.3, 0.4};

  GradOracle full(sum, NoiseModel::minibatch(3), Rng(9));
  Vector g = full.sample_grad(x);
  Vector truth = sum.grad(x);
  CHECK(g[0] == truth[0]);  // exact full gradient
  CHECK(g[1] == truth[1]);

  Problem analytic = make_fraction_poly();
  GradOracle bad(analytic, NoiseModel::minibatch(1), Rng(10));
  CHECK_THROWS_AS(bad.sample_grad({1.0}), ConfigError);

  GradOracle too_big(sum, NoiseModel::minibatch(4), Rng(11));
  CHECK_THROWS_AS(too_big.sample_grad(x), ConfigError);

  CHECK_THROWS_AS(NoiseModel::minibatch(0), ConfigError);
  CHECK_THROWS_AS(NoiseModel::gaussian(-1.0), ConfigError);
  CHECK_THROWS_AS(NoiseModel::relaxed(-1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(NoiseModel::bounded_coord({-0.1}), ConfigError);
}
